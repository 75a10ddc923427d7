"""Slow reference computations used to cross-check the fast paths.

None of these call the code they check: the bottleneck oracle enumerates
matchings, the sublevel oracle computes cohomology of every sublevel complex
with its own bitset elimination, and the grid oracle only assumes a working
``bottleneck_distance``.
"""

from __future__ import annotations

from fractions import Fraction

from .barcodes import Bar, GradedBarcode, shift_barcode
from .exact import INF


def _pair_cost(I: Bar, J: Bar):
    if I.degree != J.degree or I.is_infinite != J.is_infinite:
        return None
    cost = abs(I.left - J.left)
    if not I.is_infinite:
        cost = max(cost, abs(I.right - J.right))
    return cost


def _deletion_cost(I: Bar):
    return INF if I.is_infinite else I.length / 2


def brute_force_bottleneck(B: GradedBarcode, C: GradedBarcode):
    """Minimum over every partial matching of the smallest delta it certifies."""
    A, D = list(B), list(C)
    best = INF

    def go(i, used, cost):
        nonlocal best
        if cost >= best:
            return
        if i == len(A):
            rest = max((_deletion_cost(D[j]) for j in range(len(D)) if j not in used), default=Fraction(0))
            best = min(best, max(cost, rest))
            return
        go(i + 1, used, max(cost, _deletion_cost(A[i])))
        for j in range(len(D)):
            if j in used:
                continue
            c = _pair_cost(A[i], D[j])
            if c is not None:
                go(i + 1, used | {j}, max(cost, c))

    go(0, frozenset(), Fraction(0))
    return best


def _rank(vectors) -> int:
    """Rank over Z/2 of vectors given as int bitsets."""
    basis = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def _cohomology_ranks(C, lo_set, hi_set, degree):
    """Rank of the map H^degree(span lo_set) -> H^degree(span hi_set) induced by inclusion.

    Equals dim(Z_lo + B_hi) - dim(B_hi), where Z are cocycles and B coboundaries.
    """
    labels = [g.label for g in C.generators]
    bit = {x: 1 << i for i, x in enumerate(labels)}
    deg = {g.label: g.degree for g in C.generators}

    def vec(chain):
        v = 0
        for y in chain:
            v ^= bit[y]
        return v

    def cocycles(span):
        # kernel of d on the degree-``degree`` part of span, by elimination on (image | source) pairs
        gens = [x for x in span if deg[x] == degree]
        rows = [(vec(C.boundary(x)), bit[x]) for x in gens]
        kernel, pivots = [], {}
        for img, src in rows:
            while img:
                top = img.bit_length() - 1
                if top not in pivots:
                    pivots[top] = (img, src)
                    break
                pimg, psrc = pivots[top]
                img ^= pimg
                src ^= psrc
            if not img:
                kernel.append(src)
        return kernel

    def coboundaries(span):
        return [vec(C.boundary(x)) for x in span if deg[x] == degree - C.differential_degree]

    z_lo = cocycles(lo_set)
    b_hi = coboundaries(hi_set)
    return _rank(z_lo + b_hi) - _rank(b_hi)


def sublevel_persistence(C) -> GradedBarcode:
    """Barcode of ``kappa -> H(span{action < kappa})`` read off inclusion ranks.

    Works region by region: for the action values ``s_0 < ... < s_{m-1}``,
    region ``j`` holds the generators of action ``<= s_{j-1}``.
    """
    values = sorted({g.action for g in C.generators})
    m = len(values)
    spans = [[g.label for g in C.generators if j > 0 and g.action <= values[j - 1]] for j in range(m + 1)]
    bars = []
    for degree in sorted({g.degree for g in C.generators}):
        cache = {}

        def r(i, j):
            if i < 0 or j > m:
                return 0
            if (i, j) not in cache:
                cache[(i, j)] = _cohomology_ranks(C, spans[i], spans[j], degree)
            return cache[(i, j)]

        for i in range(1, m + 1):
            for j in range(i, m + 1):
                mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
                right = values[j] if j < m else INF
                bars += [Bar(values[i - 1], right, degree)] * mult
    return GradedBarcode(tuple(bars))


def grid_quotient_distance(B: GradedBarcode, C: GradedBarcode, step=Fraction(1, 64), radius=None, refine=4):
    """Minimise ``d_bottle(B, C[c])`` over a grid of shifts, then refine around the best points.

    Refinement repeatedly halves the step on a window around the current
    minimisers, ``refine`` times.  Returns ``(value, argmin)``.
    """
    from .bottleneck import bottleneck_distance

    step = Fraction(step)
    if radius is None:
        pts = [abs(x) for x in B.finite_endpoints() + C.finite_endpoints()]
        radius = 2 * max(pts, default=Fraction(0)) + 1
    n = int(radius / step) + 1
    grid = [k * step for k in range(-n, n + 1)]
    scores = {c: bottleneck_distance(B, shift_barcode(C, c)) for c in grid}
    best = min(scores.values())
    for _ in range(refine):
        if best == INF:
            break
        centres = [c for c, v in scores.items() if v == best]
        step /= 2
        for c0 in centres:
            for k in range(-4, 5):
                c = c0 + k * step
                if c not in scores:
                    scores[c] = bottleneck_distance(B, shift_barcode(C, c))
        best = min(scores.values())
    argmin = min((c for c, v in scores.items() if v == best), key=abs)
    return best, argmin
