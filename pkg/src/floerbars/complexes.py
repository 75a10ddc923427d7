"""Action-filtered Z/2 complexes and their persistence.

Generators carry a degree and an exact action; the differential is stored as
the support ``label -> frozenset of labels`` of each column.  A cochain complex
(``differential_degree = +1``, the Floer convention) must strictly lower the
action.  Chain complexes (``-1``, used by lower-star filtrations) may keep it
equal (``strict=False``), in which case the reduction order (action, label)
must list every face before its cofaces.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import gf2
from .barcodes import Bar, GradedBarcode
from .errors import RankError, StructuralError, UndefinedValueError
from .exact import INF, as_rational


@dataclass(frozen=True)
class Generator:
    label: str
    degree: int
    action: Fraction

    def __post_init__(self):
        object.__setattr__(self, "action", as_rational(self.action))


@dataclass(frozen=True)
class FilteredComplex:
    generators: tuple[Generator, ...] = ()
    differential: Mapping[str, frozenset] = field(default_factory=dict)
    differential_degree: int = 1
    strict: bool = True

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        diff = {k: frozenset(v) for k, v in self.differential.items() if v}
        object.__setattr__(self, "differential", dict(sorted(diff.items())))

    def __hash__(self):
        return hash((self.generators, tuple(self.differential.items()), self.differential_degree, self.strict))

    @property
    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    def generator(self, label: str) -> Generator:
        return self._index()[label]

    def _index(self) -> dict[str, Generator]:
        return {g.label: g for g in self.generators}

    def boundary(self, label: str) -> frozenset:
        return self.differential.get(label, frozenset())

    def apply(self, chain: Iterable[str]) -> frozenset:
        """Differential of a Z/2 chain given as a set of labels."""
        out = set()
        for x in chain:
            out ^= self.boundary(x)
        return frozenset(out)

    def matrix(self) -> np.ndarray:
        """Dense differential, one column per generator in ``generators`` order."""
        pos = {g.label: i for i, g in enumerate(self.generators)}
        M = np.zeros((len(pos), len(pos)), dtype=np.uint8)
        for x, ys in self.differential.items():
            for y in ys:
                M[pos[y], pos[x]] = 1
        return M

    def order(self) -> list[Generator]:
        """Filtration order used for reduction: increasing action, ties by label."""
        return sorted(self.generators, key=lambda g: (g.action, g.label))


def validate_complex(C: FilteredComplex) -> list[str]:
    problems = []
    counts = Counter(C.labels)
    dup = sorted(k for k, n in counts.items() if n > 1)
    if dup:
        problems.append(f"duplicate labels: {dup}")
    index = C._index()
    for x, ys in C.differential.items():
        if x not in index:
            problems.append(f"differential given for unknown generator {x!r}")
            continue
        for y in sorted(ys):
            if y not in index:
                problems.append(f"d{x} contains unknown generator {y!r}")
                continue
            gx, gy = index[x], index[y]
            if gy.degree != gx.degree + C.differential_degree:
                problems.append(
                    f"d{x} contains {y}: degree {gy.degree} != {gx.degree} + {C.differential_degree}"
                )
            if C.strict and not gy.action < gx.action:
                problems.append(f"action increase: d{x} contains {y} with action {gy.action} >= {gx.action}")
            elif not C.strict:
                if gy.action > gx.action:
                    problems.append(f"action increase: d{x} contains {y} with action {gy.action} > {gx.action}")
                elif gy.action == gx.action and not y < x:
                    problems.append(f"tie order: d{x} contains {y} at equal action but {y!r} sorts after {x!r}")
    if not problems:
        for x in C.labels:
            dd = C.apply(C.boundary(x))
            if dd:
                problems.append(f"d(d{x}) = {sorted(dd)} is not zero")
    return problems


def _require_valid(C: FilteredComplex):
    problems = validate_complex(C)
    if problems:
        raise StructuralError("invalid filtered complex: " + "; ".join(problems))


def chain_action(C: FilteredComplex, chain: Iterable[str]):
    """Action of a formal sum: the largest action among its terms, -inf when empty."""
    index = C._index()
    actions = [index[x].action for x in chain]
    return max(actions) if actions else -INF


def reduce_pairs(C: FilteredComplex) -> tuple[list[tuple[Generator, Generator]], list[Generator]]:
    """Standard column reduction in filtration order.

    Returns the persistence pairs ``(killed, killer)`` and the essential
    generators.  Columns are Python ints used as bitsets.
    """
    _require_valid(C)
    order = C.order()
    pos = {g.label: i for i, g in enumerate(order)}
    columns = []
    for g in order:
        bits = 0
        for y in C.boundary(g.label):
            bits |= 1 << pos[y]
        columns.append(bits)
    pivot_of = {}
    pairs, killers = [], set()
    for j in range(len(order)):
        col = columns[j]
        while col:
            low = col.bit_length() - 1
            k = pivot_of.get(low)
            if k is None:
                break
            col ^= columns[k]
        columns[j] = col
        if col:
            low = col.bit_length() - 1
            pivot_of[low] = j
            pairs.append((order[low], order[j]))
            killers.add(j)
    killed = set(pivot_of)
    essential = [g for i, g in enumerate(order) if i not in killed and i not in killers]
    return pairs, essential


def persistence_barcode(C: FilteredComplex) -> GradedBarcode:
    """Barcode of ``kappa -> H(span{action < kappa})``.

    A pair (born at action a, killed at action b) gives ``(a, b]`` in the
    degree of the class that dies; pairs with a == b are invisible.
    Unpaired generators give ``(a, inf)``.
    """
    pairs, essential = reduce_pairs(C)
    bars = [Bar(lo.action, hi.action, lo.degree) for lo, hi in pairs if lo.action < hi.action]
    bars += [Bar(g.action, INF, g.degree) for g in essential]
    return GradedBarcode(tuple(bars))


def spectrum(C: FilteredComplex) -> list[Fraction]:
    return sorted(g.action for g in C.generators)


def selectors(C: FilteredComplex) -> dict[int, list[Fraction]]:
    """Per degree, the sorted starting points of the semi-infinite bars."""
    out = defaultdict(list)
    for b in persistence_barcode(C):
        if b.is_infinite:
            out[b.degree].append(b.left)
    return {d: sorted(v) for d, v in sorted(out.items())}


def gamma_diam(C: FilteredComplex) -> Fraction:
    values = [v for vs in selectors(C).values() for v in vs]
    if not values:
        raise UndefinedValueError("complex has no semi-infinite bar, so no selector spectrum")
    return max(values) - min(values)


def gamma_fund(C: FilteredComplex, top_degree: int) -> Fraction:
    """Selector of the degree-0 class minus selector of the top-degree class.

    Requires exactly one semi-infinite bar in degree 0 and in ``top_degree``.
    """
    sel = selectors(C)
    for deg in (0, top_degree):
        found = len(sel.get(deg, []))
        if found != 1:
            raise RankError(f"need exactly one semi-infinite bar in degree {deg}, found {found}")
    return sel[0][0] - sel[top_degree][0]


def tensor(C: FilteredComplex, D: FilteredComplex) -> FilteredComplex:
    """Product complex: actions and degrees add, d(p x q) = dp x q + p x dq."""
    if C.differential_degree != D.differential_degree:
        raise StructuralError("cannot tensor complexes whose differentials have different degrees")

    def lab(a, b):
        return f"({a},{b})"

    gens = [
        Generator(lab(p.label, q.label), p.degree + q.degree, p.action + q.action)
        for p in C.generators
        for q in D.generators
    ]
    if len({g.label for g in gens}) != len(gens):
        raise StructuralError("tensor labels collide; rename generators")
    diff = {}
    for p in C.generators:
        for q in D.generators:
            support = {lab(y, q.label) for y in C.boundary(p.label)}
            support ^= {lab(p.label, z) for z in D.boundary(q.label)}
            if support:
                diff[lab(p.label, q.label)] = frozenset(support)
    return FilteredComplex(tuple(gens), diff, C.differential_degree, C.strict and D.strict)


def dual(C: FilteredComplex) -> FilteredComplex:
    """Negated actions and degrees, transposed differential; an involution."""
    gens = tuple(Generator(g.label, -g.degree, -g.action) for g in C.generators)
    diff = defaultdict(set)
    for x, ys in C.differential.items():
        for y in ys:
            diff[y].add(x)
    return FilteredComplex(gens, diff, C.differential_degree, C.strict)


def poincare_dual(C: FilteredComplex, n: int) -> FilteredComplex:
    """Variant of :func:`dual` placing degree ``k`` at ``n - k``."""
    D = dual(C)
    gens = tuple(Generator(g.label, g.degree + n, g.action) for g in D.generators)
    return FilteredComplex(gens, D.differential, D.differential_degree, D.strict)


def sublevel(C: FilteredComplex, kappa) -> FilteredComplex:
    """The subcomplex spanned by generators of action strictly below ``kappa``."""
    kappa = as_rational(kappa)
    keep = {g.label for g in C.generators if g.action < kappa}
    gens = tuple(g for g in C.generators if g.label in keep)
    diff = {x: ys for x, ys in C.differential.items() if x in keep}
    for x, ys in diff.items():
        if not ys <= keep:
            raise StructuralError(f"span below {kappa} is not a subcomplex: d{x} leaves it")
    return FilteredComplex(gens, diff, C.differential_degree, C.strict)


def total_cohomology_rank(C: FilteredComplex) -> dict[int, int]:
    """Unfiltered Z/2 (co)homology dimensions per degree, by plain matrix ranks."""

    M = C.matrix()
    degs = [g.degree for g in C.generators]
    out = {}
    for d in sorted(set(degs)):
        cols_d = [i for i, x in enumerate(degs) if x == d]
        into = [i for i, x in enumerate(degs) if x == d - C.differential_degree]
        out_rows = [i for i, x in enumerate(degs) if x == d + C.differential_degree]
        rank_out = gf2.rank(M[np.ix_(out_rows, cols_d)]) if out_rows and cols_d else 0
        rank_in = gf2.rank(M[np.ix_(cols_d, into)]) if into and cols_d else 0
        dim = len(cols_d) - rank_out - rank_in
        if dim:
            out[d] = dim
    return out


@dataclass(frozen=True)
class FilteredMap:
    """A Z/2-linear map between complexes, stored as the image support of each source generator."""

    source: FilteredComplex
    target: FilteredComplex
    images: Mapping[str, frozenset] = field(default_factory=dict)
    degree_shift: int = 0
    action_shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "images", {k: frozenset(v) for k, v in self.images.items() if v})
        object.__setattr__(self, "action_shift", as_rational(self.action_shift))

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.images.items())), self.degree_shift, self.action_shift))

    @classmethod
    def from_matrix(cls, source, target, matrix, degree_shift=0, action_shift=0) -> "FilteredMap":
        M = np.asarray(matrix) % 2
        want = (len(target.generators), len(source.generators))
        if M.shape != want:
            raise StructuralError(f"map matrix has shape {M.shape}, expected {want}")
        images = {
            x.label: frozenset(target.generators[r].label for r in np.nonzero(M[:, c])[0])
            for c, x in enumerate(source.generators)
        }
        return cls(source, target, images, degree_shift, action_shift)

    def apply(self, chain: Iterable[str]) -> frozenset:
        out = set()
        for x in chain:
            out ^= self.images.get(x, frozenset())
        return frozenset(out)


def verify_filtered_map(phi: FilteredMap) -> bool:
    """True iff ``phi`` is a chain map of the stated degree that raises action by at most the shift.

    Raises StructuralError if it refers to generators its complexes do not have.
    """
    src, tgt = phi.source._index(), phi.target._index()
    for x, ys in phi.images.items():
        if x not in src:
            raise StructuralError(f"map defined on unknown source generator {x!r}")
        missing = sorted(ys - set(tgt))
        if missing:
            raise StructuralError(f"image of {x!r} contains unknown target generators {missing}")
    for x, ys in phi.images.items():
        gx = src[x]
        if any(tgt[y].degree != gx.degree + phi.degree_shift for y in ys):
            return False
        if chain_action(phi.target, ys) > gx.action + phi.action_shift:
            return False
    for x in src:
        if phi.apply(phi.source.boundary(x)) != phi.target.apply(phi.images.get(x, frozenset())):
            return False
    return True
