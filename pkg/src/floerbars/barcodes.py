"""Graded barcodes: bars ``(left, right]`` or ``(left, +inf)`` carrying an integer degree.

A :class:`GradedBarcode` is a finite multiset of bars kept in canonical order
(sorted by degree, then left, then right), so two barcodes are equal exactly
when they hold the same bars with the same multiplicities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import RangeError, StructuralError
from .exact import INF, Extended, as_extended, as_rational, is_inf


@dataclass(frozen=True, order=False)
class Bar:
    left: Fraction
    right: Extended
    degree: int = 0

    def __post_init__(self):
        object.__setattr__(self, "left", as_rational(self.left))
        object.__setattr__(self, "right", as_extended(self.right))
        if isinstance(self.degree, bool) or not isinstance(self.degree, int):
            raise TypeError(f"bar degree must be an int, got {self.degree!r}")

    @property
    def is_infinite(self) -> bool:
        return is_inf(self.right)

    @property
    def length(self) -> Extended:
        return INF if self.is_infinite else self.right - self.left

    def key(self):
        return (self.degree, self.left, self.right)

    def shifted(self, delta: Fraction) -> "Bar":
        right = self.right if self.is_infinite else self.right - delta
        return Bar(self.left - delta, right, self.degree)

    def __str__(self):
        right = "inf)" if self.is_infinite else f"{self.right}]"
        return f"({self.left}, {right} deg {self.degree}"


@dataclass(frozen=True)
class GradedBarcode:
    bars: tuple[Bar, ...] = ()

    def __post_init__(self):
        bars = tuple(b if isinstance(b, Bar) else Bar(*b) for b in self.bars)
        object.__setattr__(self, "bars", tuple(sorted(bars, key=Bar.key)))

    @classmethod
    def of(cls, *bars) -> "GradedBarcode":
        """``GradedBarcode.of((0, 1, 0), (0, INF, 2))`` with (left, right, degree) triples."""
        return cls(tuple(Bar(*b) if not isinstance(b, Bar) else b for b in bars))

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self) -> Iterator[Bar]:
        return iter(self.bars)

    def __getitem__(self, i: int) -> Bar:
        return self.bars[i]

    @property
    def degrees(self) -> list[int]:
        return sorted({b.degree for b in self.bars})

    def in_degree(self, degree: int) -> list[tuple[int, Bar]]:
        """``(index, bar)`` pairs of the bars in one degree, indices into ``self.bars``."""
        return [(i, b) for i, b in enumerate(self.bars) if b.degree == degree]

    def finite_endpoints(self) -> list[Fraction]:
        pts = []
        for b in self.bars:
            pts.append(b.left)
            if not b.is_infinite:
                pts.append(b.right)
        return pts

    def __str__(self):
        return "{" + ", ".join(str(b) for b in self.bars) + "}"


@dataclass(frozen=True)
class MatchingCertificate:
    """A delta-matching witness between two barcodes.

    ``pairs`` hold ``(i, j)`` indices into ``B.bars`` and ``B'.bars``; the
    deleted index sets cover the unmatched bars.  With ``closed`` set, deleted
    bars may have length exactly ``2 * delta``.
    """

    delta: Fraction
    pairs: tuple[tuple[int, int], ...] = ()
    deleted_a: frozenset[int] = field(default_factory=frozenset)
    deleted_b: frozenset[int] = field(default_factory=frozenset)
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "delta", as_rational(self.delta))
        object.__setattr__(self, "pairs", tuple(sorted(tuple(p) for p in self.pairs)))
        object.__setattr__(self, "deleted_a", frozenset(self.deleted_a))
        object.__setattr__(self, "deleted_b", frozenset(self.deleted_b))


def validate_barcode(B: GradedBarcode) -> list[str]:
    problems = []
    for i, bar in enumerate(B.bars):
        if is_inf(bar.left):
            problems.append(f"bar {i}: left endpoint must be finite")
        elif not bar.left < bar.right:
            problems.append(f"bar {i}: left < right fails for {bar}")
    keys = [b.key() for b in B.bars]
    if keys != sorted(keys):
        problems.append("bars are not in canonical (degree, left, right) order")
    return problems


def shift_barcode(B: GradedBarcode, delta) -> GradedBarcode:
    """Barcode of the shifted module ``V[delta]``: every endpoint moves down by delta."""
    delta = as_rational(delta)
    return GradedBarcode(tuple(b.shifted(delta) for b in B.bars))


def sigma_infinity(B: GradedBarcode) -> dict[int, int]:
    """Number of semi-infinite bars per degree; degrees with none are omitted."""
    counts = Counter(b.degree for b in B.bars if b.is_infinite)
    return dict(sorted(counts.items()))


def same_component(B: GradedBarcode, C: GradedBarcode) -> bool:
    return sigma_infinity(B) == sigma_infinity(C)


def contract_path(B: GradedBarcode, t) -> GradedBarcode:
    """Point ``t`` of the straight path scaling every finite endpoint by ``1 - t``.

    At ``t = 1`` finite bars collapse and are dropped, leaving one ``(0, inf)``
    per semi-infinite bar of ``B``.
    """
    t = as_rational(t)
    if not 0 <= t <= 1:
        raise RangeError(f"path parameter must lie in [0, 1], got {t}")
    s = 1 - t
    out = []
    for b in B.bars:
        left = s * b.left
        right = b.right if b.is_infinite else s * b.right
        if left < right:
            out.append(Bar(left, right, b.degree))
    return GradedBarcode(tuple(out))


def truncate(B: GradedBarcode, eps) -> GradedBarcode:
    """Keep the bars of length at least ``eps``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise RangeError(f"eps must be positive, got {eps}")
    return GradedBarcode(tuple(b for b in B.bars if b.length >= eps))


def _pair_ok(I: Bar, J: Bar, delta: Fraction) -> bool:
    if I.degree != J.degree or I.is_infinite != J.is_infinite:
        return False
    if abs(I.left - J.left) > delta:
        return False
    return I.is_infinite or abs(I.right - J.right) <= delta


def _deletable(I: Bar, delta: Fraction, closed: bool) -> bool:
    if I.is_infinite:
        return False
    return I.length <= 2 * delta if closed else I.length < 2 * delta


def verify_delta_matching(B: GradedBarcode, C: GradedBarcode, cert: MatchingCertificate) -> bool:
    """Check a matching certificate against two barcodes.

    Returns False when the certificate is well-formed but does not witness a
    ``cert.delta``-matching; raises StructuralError on out-of-range indices.
    """
    na, nb = len(B), len(C)
    used_a = [i for i, _ in cert.pairs] + sorted(cert.deleted_a)
    used_b = [j for _, j in cert.pairs] + sorted(cert.deleted_b)
    for i in used_a:
        if not 0 <= i < na:
            raise StructuralError(f"index {i} out of range for first barcode of size {na}")
    for j in used_b:
        if not 0 <= j < nb:
            raise StructuralError(f"index {j} out of range for second barcode of size {nb}")
    if cert.delta < 0:
        return False
    if sorted(used_a) != list(range(na)) or sorted(used_b) != list(range(nb)):
        return False
    if any(not _deletable(B[i], cert.delta, cert.closed) for i in cert.deleted_a):
        return False
    if any(not _deletable(C[j], cert.delta, cert.closed) for j in cert.deleted_b):
        return False
    return all(_pair_ok(B[i], C[j], cert.delta) for i, j in cert.pairs)


def iter_degrees(*barcodes: GradedBarcode) -> Iterable[int]:
    return sorted({d for B in barcodes for d in B.degrees})
