"""Finite persistence modules over Z/2 as explicit matrices, and interleavings.

A module is described by its spectrum ``s_0 < ... < s_{m-1}`` and, per degree,
the dimensions of the ``m + 1`` regions ``(-inf, s_0], (s_0, s_1], ...,
(s_{m-1}, +inf)`` together with the structure matrices from each region to the
next.  The module is constant on every region, so a value ``t`` sits in region
``bisect_left(spectrum, t)``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import gf2
from .barcodes import Bar, GradedBarcode, MatchingCertificate, verify_delta_matching
from .bottleneck import bottleneck_distance
from .errors import PreconditionError, StructuralError
from .exact import INF, Extended, as_rational


@dataclass(frozen=True, eq=False)
class DegreePart:
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    def __eq__(self, other):
        if not isinstance(other, DegreePart):
            return NotImplemented
        return self.dims == other.dims and len(self.maps) == len(other.maps) and all(
            gf2.equal(a, b) for a, b in zip(self.maps, other.maps)
        )

    def composite(self, i: int, j: int) -> np.ndarray:
        """Structure map from region ``i`` to region ``j >= i``."""
        out = gf2.identity(self.dims[i])
        for k in range(i, j):
            out = gf2.matmul(self.maps[k], out)
        return out


@dataclass(frozen=True, eq=False)
class PersistenceModule:
    spectrum: tuple[Fraction, ...] = ()
    parts: Mapping[int, DegreePart] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "spectrum", tuple(as_rational(s) for s in self.spectrum))
        object.__setattr__(self, "parts", dict(sorted(self.parts.items())))

    def __eq__(self, other):
        if not isinstance(other, PersistenceModule):
            return NotImplemented
        return self.spectrum == other.spectrum and self.parts == other.parts

    @property
    def degrees(self) -> list[int]:
        return list(self.parts)

    def region(self, t) -> int:
        return bisect_left(self.spectrum, t)

    def dim(self, degree: int, t) -> int:
        part = self.parts.get(degree)
        return 0 if part is None else part.dims[self.region(t)]

    def structure_map(self, degree: int, s, t) -> np.ndarray:
        """Matrix of ``i^s_t`` in one degree, for ``s <= t``."""
        if t < s:
            raise ValueError(f"structure maps go upward: got s={s} > t={t}")
        part = self.parts.get(degree)
        if part is None:
            return gf2.zeros(0, 0)
        return part.composite(self.region(s), self.region(t))


def zero_module() -> PersistenceModule:
    return PersistenceModule((), {})


def validate_module(V: PersistenceModule) -> list[str]:
    problems = []
    spec = V.spectrum
    if any(not a < b for a, b in zip(spec, spec[1:])):
        problems.append("spectrum is not strictly increasing")
    m = len(spec)
    for deg, part in V.parts.items():
        if len(part.dims) != m + 1:
            problems.append(f"degree {deg}: expected {m + 1} region dimensions, got {len(part.dims)}")
            continue
        if any(d < 0 for d in part.dims):
            problems.append(f"degree {deg}: negative dimension")
        if part.dims[0] != 0:
            problems.append(f"degree {deg}: axiom 1 fails, region (-inf, s_0] has dimension {part.dims[0]}")
        if len(part.maps) != m:
            problems.append(f"degree {deg}: expected {m} structure matrices, got {len(part.maps)}")
            continue
        for j, M in enumerate(part.maps):
            want = (part.dims[j + 1], part.dims[j])
            if M.shape != want:
                problems.append(f"degree {deg}: structure matrix {j} has shape {M.shape}, expected {want}")
            elif not np.isin(M, (0, 1)).all():
                problems.append(f"degree {deg}: structure matrix {j} has non-binary entries")
    return problems


def _require_valid(V: PersistenceModule):
    problems = validate_module(V)
    if problems:
        raise StructuralError("invalid persistence module: " + "; ".join(problems))


def decompose(V: PersistenceModule) -> GradedBarcode:
    """Barcode of ``V`` from ranks of composite structure maps.

    A bar alive exactly on regions ``i..j`` has multiplicity
    ``r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1)`` where ``r`` is the rank of the
    composite map and out-of-range regions contribute rank 0.
    """
    _require_valid(V)
    m = len(V.spectrum)
    bars = []
    for deg, part in V.parts.items():
        ranks = {}

        def r(i, j):
            if i < 0 or j > m:
                return 0
            if (i, j) not in ranks:
                ranks[(i, j)] = gf2.rank(part.composite(i, j))
            return ranks[(i, j)]

        for i in range(1, m + 1):
            for j in range(i, m + 1):
                mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
                right = V.spectrum[j] if j < m else INF
                bars.extend([Bar(V.spectrum[i - 1], right, deg)] * mult)
    return GradedBarcode(tuple(bars))


def _covers(bar: Bar, spectrum: tuple[Fraction, ...], region: int) -> bool:
    m = len(spectrum)
    lo = spectrum[region - 1] if region > 0 else None
    hi = spectrum[region] if region < m else INF
    return lo is not None and bar.left <= lo and hi <= bar.right


def interval_basis(B: GradedBarcode, spectrum: tuple[Fraction, ...], degree: int, region: int) -> list[int]:
    """Indices (into ``B.bars``) of the degree-``degree`` bars alive on ``region``.

    This is the basis :func:`realize` uses for that region.
    """
    return [i for i, b in B.in_degree(degree) if _covers(b, spectrum, region)]


def realize(B: GradedBarcode) -> PersistenceModule:
    """Direct sum of interval modules, one per bar, in canonical bar order."""
    spectrum = tuple(sorted(set(B.finite_endpoints())))
    m = len(spectrum)
    parts = {}
    for deg in B.degrees:
        bases = [interval_basis(B, spectrum, deg, j) for j in range(m + 1)]
        maps = []
        for j in range(m):
            src, dst = bases[j], bases[j + 1]
            M = np.zeros((len(dst), len(src)), dtype=np.uint8)
            for c, idx in enumerate(src):
                if idx in dst:
                    M[dst.index(idx), c] = 1
            maps.append(gf2.asmatrix(M))
        parts[deg] = DegreePart(tuple(len(b) for b in bases), tuple(maps))
    return PersistenceModule(spectrum, parts)


def shift_module(V: PersistenceModule, delta) -> PersistenceModule:
    """``V[delta]`` with ``V[delta]^t = V^{t + delta}``: the spectrum moves down by delta."""
    delta = as_rational(delta)
    return PersistenceModule(tuple(s - delta for s in V.spectrum), V.parts)


def refine(V: PersistenceModule, points) -> PersistenceModule:
    """Same module presented over ``spectrum | points``, identities at new points."""
    new_spec = tuple(sorted(set(V.spectrum) | {as_rational(p) for p in points}))
    reps = _representatives(new_spec)
    parts = {}
    for deg in V.parts:
        dims = tuple(V.dim(deg, t) for t in reps)
        maps = tuple(V.structure_map(deg, reps[j], reps[j + 1]) for j in range(len(new_spec)))
        parts[deg] = DegreePart(dims, maps)
    return PersistenceModule(new_spec, parts)


def _representatives(points) -> list:
    """One value inside each region cut out by sorted ``points`` (right ends are included)."""
    pts = sorted(set(points))
    if not pts:
        return [Fraction(0)]
    return pts + [pts[-1] + 1]


@dataclass(frozen=True, eq=False)
class PiecewiseMap:
    """A family of matrices constant on the cells ``(-inf, b_0], (b_0, b_1], ..., (b_k, inf)``."""

    breaks: tuple[Fraction, ...]
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(as_rational(b) for b in self.breaks))
        if len(self.mats) != len(self.breaks) + 1:
            raise StructuralError(f"{len(self.breaks)} breaks need {len(self.breaks) + 1} matrices, got {len(self.mats)}")

    def at(self, t) -> np.ndarray:
        return self.mats[bisect_left(self.breaks, t)]


@dataclass(frozen=True, eq=False)
class InterleavingCertificate:
    """Candidate (delta, epsilon)-interleaving ``f: V -> V'[delta]``, ``g: V' -> V[epsilon]``.

    Degrees missing from ``f`` or ``g`` stand for zero maps.
    """

    delta: Fraction
    epsilon: Fraction
    f: Mapping[int, PiecewiseMap] = field(default_factory=dict)
    g: Mapping[int, PiecewiseMap] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "delta", as_rational(self.delta))
        object.__setattr__(self, "epsilon", as_rational(self.epsilon))
        object.__setattr__(self, "f", dict(sorted(self.f.items())))
        object.__setattr__(self, "g", dict(sorted(self.g.items())))


def _eval(maps: Mapping[int, PiecewiseMap], deg: int, t, rows: int, cols: int, name: str) -> np.ndarray:
    pm = maps.get(deg)
    if pm is None:
        return gf2.zeros(rows, cols)
    M = pm.at(t)
    if M.shape != (rows, cols):
        raise StructuralError(f"{name} in degree {deg} at t={t}: shape {M.shape}, expected {(rows, cols)}")
    return M


def verify_interleaving(V: PersistenceModule, W: PersistenceModule, cert: InterleavingCertificate) -> bool:
    """Exact check that ``cert`` is a (delta, epsilon)-interleaving of V and W.

    Everything involved is piecewise constant, so the morphism conditions and
    the identities ``g[delta] f = sh(delta + epsilon)_V`` and
    ``f[epsilon] g = sh(delta + epsilon)_W`` are checked at one point of each
    cell of the common refinement, and between consecutive cells.
    Raises StructuralError when a matrix has the wrong shape.
    """
    for M in (V, W):
        _require_valid(M)
    d, e = cert.delta, cert.epsilon
    if d < 0 or e < 0:
        return False
    total = d + e
    degrees = sorted(set(V.parts) | set(W.parts) | set(cert.f) | set(cert.g))
    for deg in degrees:
        fb = cert.f[deg].breaks if deg in cert.f else ()
        gb = cert.g[deg].breaks if deg in cert.g else ()
        points = set()
        for shift in (0, d, e, total):
            points.update(s - shift for s in V.spectrum)
            points.update(s - shift for s in W.spectrum)
        points.update(fb)
        points.update(gb)
        points.update(b - e for b in fb)
        points.update(b - d for b in gb)
        reps = _representatives(points)

        def F(t):
            return _eval(cert.f, deg, t, W.dim(deg, t + d), V.dim(deg, t), "f")

        def G(t):
            return _eval(cert.g, deg, t, V.dim(deg, t + e), W.dim(deg, t), "g")

        def iV(s, t):
            return V.structure_map(deg, s, t) if deg in V.parts else gf2.zeros(V.dim(deg, t), V.dim(deg, s))

        def iW(s, t):
            return W.structure_map(deg, s, t) if deg in W.parts else gf2.zeros(W.dim(deg, t), W.dim(deg, s))

        for t in reps:
            if not gf2.equal(gf2.matmul(G(t + d), F(t)), iV(t, t + total)):
                return False
            if not gf2.equal(gf2.matmul(F(t + e), G(t)), iW(t, t + total)):
                return False
        for s, t in zip(reps, reps[1:]):
            if not gf2.equal(gf2.matmul(F(t), iV(s, t)), gf2.matmul(iW(s + d, t + d), F(s))):
                return False
            if not gf2.equal(gf2.matmul(G(t), iW(s, t)), gf2.matmul(iV(s + e, t + e), G(s))):
                return False
    return True


def _canonical_maps(src: GradedBarcode, dst: GradedBarcode, pairs, shift: Fraction) -> dict[int, PiecewiseMap]:
    spec_src = tuple(sorted(set(src.finite_endpoints())))
    spec_dst = tuple(sorted(set(dst.finite_endpoints())))
    partner = dict(pairs)
    out = {}
    for deg in sorted(set(src.degrees) | set(dst.degrees)):
        breaks = tuple(sorted(set(spec_src) | {s - shift for s in spec_dst}))
        mats = []
        for t in _representatives(breaks):
            cols = interval_basis(src, spec_src, deg, bisect_left(spec_src, t))
            rows = interval_basis(dst, spec_dst, deg, bisect_left(spec_dst, t + shift))
            M = np.zeros((len(rows), len(cols)), dtype=np.uint8)
            for c, i in enumerate(cols):
                j = partner.get(i)
                if j is not None and j in rows:
                    M[rows.index(j), c] = 1
            mats.append(gf2.asmatrix(M))
        out[deg] = PiecewiseMap(breaks, tuple(mats))
    return out


def canonical_interleaving(B: GradedBarcode, C: GradedBarcode, pairs, delta) -> InterleavingCertificate:
    """Interval-to-interval maps for the given bar pairs at shift ``delta``, zero elsewhere.

    No validity check: at a delta below what ``pairs`` needs, the result is
    simply not an interleaving.
    """
    delta = as_rational(delta)
    pairs = list(pairs)
    f = _canonical_maps(B, C, pairs, delta)
    g = _canonical_maps(C, B, [(j, i) for i, j in pairs], delta)
    return InterleavingCertificate(delta, delta, f, g)


def interleaving_from_matching(B: GradedBarcode, C: GradedBarcode, cert: MatchingCertificate) -> InterleavingCertificate:
    """(delta, delta)-interleaving of ``realize(B)`` and ``realize(C)`` built from a delta-matching."""
    if not verify_delta_matching(B, C, cert):
        raise PreconditionError(f"certificate is not a valid {cert.delta}-matching")
    return canonical_interleaving(B, C, cert.pairs, cert.delta)


def interleaving_distance(V: PersistenceModule, W: PersistenceModule) -> Extended:
    return bottleneck_distance(decompose(V), decompose(W))
