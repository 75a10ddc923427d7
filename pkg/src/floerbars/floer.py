"""Concrete complexes: the twist-power complex, Morse models, lower-star filtrations.

``twist_complex`` builds the complex whose cohomology is that of the Floer
complex of ``tau^{2m} L'`` against ``L'`` for an A_2 pair of spheres: a
generator ``e`` in degree 0, the top class ``eps`` in degree ``n``, and one
generator ``g_j`` per summand of the twisted part, with the single nonzero
differential ``d g1 = eps``.  Only its rank matters for the separation
argument; the actions and higher degrees are conventions chosen here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Mapping

from .barcodes import GradedBarcode, sigma_infinity
from .bottleneck import bottleneck_distance
from .complexes import FilteredComplex, Generator, persistence_barcode
from .errors import RangeError, StructuralError
from .exact import Extended, as_rational

DEGREE_RULES = ("graded-shift", "flat")


@dataclass(frozen=True)
class TwistComplexSpec:
    """Parameters of the complex for ``tau^{2m}``.

    ``actions`` may override any of ``e``, ``eps``, ``g1``..``g{2m}``; the rest
    default to ``e = 0``, ``eps = 1``, ``g_j = 2 + j``.  ``degree_rule``
    chooses the degrees of ``g_j``: ``graded-shift`` puts ``g_j`` in degree
    ``(n - 1) j``, ``flat`` puts all of them in degree ``n - 1``.  Either way
    ``g1`` sits in degree ``n - 1`` so that ``d g1 = eps`` has degree +1.
    """

    m: int
    n: int = 2
    actions: Mapping[str, Fraction] = field(default_factory=dict)
    degree_rule: str = "graded-shift"

    def __post_init__(self):
        object.__setattr__(self, "actions", {k: as_rational(v) for k, v in self.actions.items()})

    def __hash__(self):
        return hash((self.m, self.n, tuple(sorted(self.actions.items())), self.degree_rule))

    def labels(self) -> list[str]:
        return ["e", "eps"] + [f"g{j}" for j in range(1, 2 * self.m + 1)]

    def resolved_actions(self) -> dict[str, Fraction]:
        out = {"e": Fraction(0), "eps": Fraction(1)}
        out.update({f"g{j}": Fraction(2 + j) for j in range(1, 2 * self.m + 1)})
        out.update(self.actions)
        return out

    def degree_of(self, j: int) -> int:
        if self.degree_rule == "flat":
            return self.n - 1
        return (self.n - 1) * j


def validate_twist_spec(spec: TwistComplexSpec) -> list[str]:
    problems = []
    if isinstance(spec.m, bool) or not isinstance(spec.m, int) or spec.m < 0:
        problems.append(f"m must be an integer >= 0, got {spec.m!r}")
    if isinstance(spec.n, bool) or not isinstance(spec.n, int) or spec.n < 2 or spec.n % 2:
        problems.append(f"n must be an even integer >= 2, got {spec.n!r}")
    if spec.degree_rule not in DEGREE_RULES:
        problems.append(f"unknown degree rule {spec.degree_rule!r}; expected one of {DEGREE_RULES}")
    if problems:
        return problems
    unknown = sorted(set(spec.actions) - set(spec.labels()))
    if unknown:
        problems.append(f"actions given for unknown generators {unknown}")
    acts = spec.resolved_actions()
    if spec.m >= 1 and not acts["g1"] > acts["eps"]:
        problems.append(f"action(g1) = {acts['g1']} must exceed action(eps) = {acts['eps']}")
    return problems


def twist_complex(spec: TwistComplexSpec) -> FilteredComplex:
    problems = validate_twist_spec(spec)
    if problems:
        raise StructuralError("invalid twist spec: " + "; ".join(problems))
    acts = spec.resolved_actions()
    gens = [Generator("e", 0, acts["e"]), Generator("eps", spec.n, acts["eps"])]
    gens += [Generator(f"g{j}", spec.degree_of(j), acts[f"g{j}"]) for j in range(1, 2 * spec.m + 1)]
    diff = {"g1": {"eps"}} if spec.m >= 1 else {}
    return FilteredComplex(tuple(gens), diff)


def sphere_self_complex(n: int, fmin, fmax) -> FilteredComplex:
    """Morse model of ``HF(L, L)`` for an n-sphere with one minimum and one maximum.

    The action is ``-f``: the minimum (degree 0) gets ``-fmin``, the maximum
    (degree n) gets ``-fmax``.
    """
    fmin, fmax = as_rational(fmin), as_rational(fmax)
    if not fmin < fmax:
        raise RangeError(f"need fmin < fmax, got {fmin} >= {fmax}")
    if n < 1:
        raise RangeError(f"sphere dimension must be >= 1, got {n}")
    return FilteredComplex((Generator("min", 0, -fmin), Generator("max", n, -fmax)), {})


def circle_model(fmin=0, fmax=1) -> FilteredComplex:
    return sphere_self_complex(1, fmin, fmax)


def twist_total(k: int, n: int = 2) -> int:
    """Total number of semi-infinite bars of the complex for ``tau^{2k}``."""
    return sum(sigma_infinity(persistence_barcode(twist_complex(TwistComplexSpec(abs(k), n)))).values())


@dataclass(frozen=True)
class Verdict:
    kind: str  # "different" or "inconclusive"
    route: str  # "direct", "squaring" or "same-model"
    k1: int
    k2: int
    n: int
    sigma1: dict[int, int]
    sigma2: dict[int, int]
    totals: tuple[int, int]
    justification: tuple[str, ...]
    compared: tuple[int, int] = ()

    @property
    def different(self) -> bool:
        return self.kind == "different"

    def __str__(self):
        name = "Different" if self.different else "Inconclusive"
        a, b = self.compared or self.totals
        return f"{name}({self.route}; totals {a} vs {b})"


def _sigma(k: int, n: int) -> dict[int, int]:
    return sigma_infinity(persistence_barcode(twist_complex(TwistComplexSpec(abs(k), n))))


def distinguish_powers(k1: int, k2: int, n: int = 2) -> Verdict:
    """Decide from semi-infinite bar counts whether ``tau^{2 k1}`` and ``tau^{2 k2}``
    lie in different components.

    Barcodes in one component have equal semi-infinite bar counts, so
    different totals separate the two powers.  The only equal-total pair with
    ``|k1| != |k2|`` is ``{0, +-1}``: if ``tau^2`` were in the identity
    component then so would ``tau^4``, whose total (4) differs from that of
    the identity (2).
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise RangeError(f"n must be an even integer >= 2, got {n!r}")
    s1, s2 = _sigma(k1, n), _sigma(k2, n)
    t1, t2 = sum(s1.values()), sum(s2.values())
    steps = [
        f"tau^{2 * k1}: {t1} semi-infinite bars {s1}",
        f"tau^{2 * k2}: {t2} semi-infinite bars {s2}",
    ]
    if t1 != t2:
        steps.append("semi-infinite bar counts differ, so the barcodes lie in different components")
        return Verdict("different", "direct", k1, k2, n, s1, s2, (t1, t2), tuple(steps))
    if abs(k1) == abs(k2):
        steps.append("same |k| gives the same complex; counts cannot separate them")
        return Verdict("inconclusive", "same-model", k1, k2, n, s1, s2, (t1, t2), tuple(steps))
    one = k2 if k1 == 0 else k1
    sq = 2 * one
    t_sq = sum(_sigma(sq, n).values())
    t_id = t1 if k1 == 0 else t2
    steps += [
        f"equal totals; square tau^{2 * one} to tau^{2 * sq}",
        f"tau^{2 * sq}: {t_sq} semi-infinite bars, identity: {t_id}",
        f"if tau^{2 * one} were in the identity component so would be tau^{2 * sq}; counts {t_id} vs {t_sq} forbid it",
    ]
    return Verdict("different", "squaring", k1, k2, n, s1, s2, (t1, t2), tuple(steps), (t_id, t_sq))


@dataclass(frozen=True)
class SimplicialFunction:
    """A simplicial complex of dimension <= 2 with rational vertex values."""

    simplices: tuple[tuple, ...]
    values: Mapping[Hashable, Fraction]

    def __post_init__(self):
        simp = tuple(sorted({tuple(sorted(s, key=str)) for s in self.simplices}, key=lambda s: (len(s), [str(v) for v in s])))
        object.__setattr__(self, "simplices", simp)
        object.__setattr__(self, "values", {k: as_rational(v) for k, v in self.values.items()})

    def __hash__(self):
        return hash((self.simplices, tuple(sorted(self.values.items(), key=lambda kv: str(kv[0])))))

    @property
    def vertices(self) -> list:
        return [s[0] for s in self.simplices if len(s) == 1]

    @classmethod
    def from_maximal(cls, maximal, values) -> "SimplicialFunction":
        """Close a list of maximal simplices under taking faces."""
        faces = set()
        for s in maximal:
            s = tuple(s)
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        return cls(tuple(faces), values)

    def with_values(self, values) -> "SimplicialFunction":
        return SimplicialFunction(self.simplices, values)


def validate_simplicial(K: SimplicialFunction) -> list[str]:
    problems = []
    present = set(K.simplices)
    for s in K.simplices:
        if len(s) > 3:
            problems.append(f"simplex {s} has dimension > 2")
        if len(set(s)) != len(s):
            problems.append(f"simplex {s} repeats a vertex")
        for k in range(1, len(s)):
            for face in combinations(s, k):
                if tuple(sorted(face, key=str)) not in present:
                    problems.append(f"face {face} of {s} is missing")
    missing = sorted((str(v) for v in K.vertices if v not in K.values))
    if missing:
        problems.append(f"vertices without values: {missing}")
    return problems


def _simplex_label(s) -> str:
    return f"{len(s) - 1}:" + ",".join(str(v) for v in s)


def lower_star_complex(K: SimplicialFunction) -> FilteredComplex:
    """Simplicial chain complex filtered by the maximum vertex value.

    Each simplex becomes a generator of degree = dimension; the differential
    is the boundary, which never raises the filtration value.  Labels start
    with the dimension, so at equal values faces sort before cofaces.
    """
    problems = validate_simplicial(K)
    if problems:
        raise StructuralError("invalid simplicial function: " + "; ".join(problems))
    gens, diff = [], {}
    for s in K.simplices:
        gens.append(Generator(_simplex_label(s), len(s) - 1, max(K.values[v] for v in s)))
        if len(s) > 1:
            diff[_simplex_label(s)] = {_simplex_label(f) for f in combinations(s, len(s) - 1)}
    return FilteredComplex(tuple(gens), diff, differential_degree=-1, strict=False)


def lower_star_barcode(K: SimplicialFunction) -> GradedBarcode:
    return persistence_barcode(lower_star_complex(K))


@dataclass(frozen=True)
class StabilityReport:
    distance: Extended
    bound: Fraction

    @property
    def passed(self) -> bool:
        return self.distance <= self.bound


def stability_check(K: SimplicialFunction, f: Mapping, g: Mapping) -> StabilityReport:
    """Compare ``d_bottle`` of the two lower-star barcodes with ``max |f - g|``."""
    if set(f) != set(g) or set(f) != set(K.vertices):
        raise StructuralError("f and g must assign values to exactly the vertices of K")
    Bf = lower_star_barcode(K.with_values(f))
    Bg = lower_star_barcode(K.with_values(g))
    bound = max((abs(as_rational(f[v]) - as_rational(g[v])) for v in f), default=Fraction(0))
    return StabilityReport(bottleneck_distance(Bf, Bg), bound)


def octahedron(values=None) -> SimplicialFunction:
    """Boundary of the octahedron, a triangulated 2-sphere on vertices ``+x -x +y -y +z -z``."""
    verts = ["+x", "-x", "+y", "-y", "+z", "-z"]
    tris = [(a, b, c) for a in ("+x", "-x") for b in ("+y", "-y") for c in ("+z", "-z")]
    if values is None:
        values = {v: i for i, v in enumerate(verts)}
    return SimplicialFunction.from_maximal(tris, values)


def cycle_graph(n: int, values) -> SimplicialFunction:
    """The n-cycle on vertices ``0..n-1``; ``values`` is a sequence or mapping."""
    if not isinstance(values, Mapping):
        values = dict(enumerate(values))
    edges = [(i, (i + 1) % n) for i in range(n)]
    return SimplicialFunction.from_maximal(edges, values)
