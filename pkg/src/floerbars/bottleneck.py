"""Exact bottleneck distance, its matching certificate, and the shift-quotient metric."""

from __future__ import annotations

from fractions import Fraction

import networkx as nx

from .barcodes import (
    Bar,
    GradedBarcode,
    MatchingCertificate,
    _deletable,
    _pair_ok,
    iter_degrees,
    shift_barcode,
    sigma_infinity,
)
from .exact import INF, Extended


def _candidates(A: list[Bar], C: list[Bar]) -> list[Fraction]:
    values = {Fraction(0)}
    for I in A:
        for J in C:
            if I.is_infinite != J.is_infinite:
                continue
            values.add(abs(I.left - J.left))
            if not I.is_infinite:
                values.add(abs(I.right - J.right))
    for I in A + C:
        if not I.is_infinite:
            values.add(I.length / 2)
    return sorted(values)


def _try_matching(A: list[Bar], C: list[Bar], delta: Fraction):
    """Perfect matching in the bar/diagonal bipartite graph at ``delta`` or None.

    Left side: bars of A plus one diagonal slot per bar of C; right side: bars
    of C plus one diagonal slot per bar of A.  A bar may only use its own
    diagonal slot, and only if it is deletable at ``delta``.
    """
    p, q = len(A), len(C)
    G = nx.Graph()
    top = [("a", i) for i in range(p)] + [("da", j) for j in range(q)]
    G.add_nodes_from(top)
    G.add_nodes_from([("b", j) for j in range(q)] + [("db", i) for i in range(p)])
    for i, I in enumerate(A):
        for j, J in enumerate(C):
            if _pair_ok(I, J, delta):
                G.add_edge(("a", i), ("b", j))
        if _deletable(I, delta, closed=True):
            G.add_edge(("a", i), ("db", i))
    for j, J in enumerate(C):
        if _deletable(J, delta, closed=True):
            G.add_edge(("da", j), ("b", j))
    for j in range(q):
        for i in range(p):
            G.add_edge(("da", j), ("db", i))
    matching = nx.bipartite.hopcroft_karp_matching(G, top_nodes=top)
    if sum(1 for u in top if u in matching) < p + q:
        return None
    pairs, del_a, del_b = [], [], []
    for i in range(p):
        kind, j = matching[("a", i)]
        if kind == "b":
            pairs.append((i, j))
        else:
            del_a.append(i)
    for j in range(q):
        if matching[("b", j)][0] == "da":
            del_b.append(j)
    return pairs, del_a, del_b


def _degree_bottleneck(A: list[Bar], C: list[Bar]):
    candidates = _candidates(A, C)
    lo, hi = 0, len(candidates) - 1
    best = _try_matching(A, C, candidates[hi])
    if best is None:  # pragma: no cover - the largest candidate is always feasible
        raise AssertionError("no matching at the largest candidate value")
    best_value = candidates[hi]
    while lo < hi:
        mid = (lo + hi) // 2
        found = _try_matching(A, C, candidates[mid])
        if found is None:
            lo = mid + 1
        else:
            hi = mid
            best, best_value = found, candidates[mid]
    return best_value, best


def bottleneck_matching(B: GradedBarcode, C: GradedBarcode) -> tuple[Extended, MatchingCertificate | None]:
    """Bottleneck distance together with a certificate attaining it.

    The distance is computed degree by degree and maximised.  The certificate
    uses the closed deletion rule (length <= 2 delta), under which the infimum
    is attained.  When the semi-infinite bar counts differ the distance is INF
    and no certificate exists.
    """
    if sigma_infinity(B) != sigma_infinity(C):
        return INF, None
    total = Fraction(0)
    pairs, del_a, del_b = [], [], []
    for d in iter_degrees(B, C):
        idx_a, bars_a = zip(*B.in_degree(d)) if B.in_degree(d) else ((), ())
        idx_b, bars_b = zip(*C.in_degree(d)) if C.in_degree(d) else ((), ())
        value, (p, da, db) = _degree_bottleneck(list(bars_a), list(bars_b))
        total = max(total, value)
        pairs += [(idx_a[i], idx_b[j]) for i, j in p]
        del_a += [idx_a[i] for i in da]
        del_b += [idx_b[j] for j in db]
    return total, MatchingCertificate(total, tuple(pairs), frozenset(del_a), frozenset(del_b), closed=True)


def bottleneck_distance(B: GradedBarcode, C: GradedBarcode) -> Extended:
    return bottleneck_matching(B, C)[0]


def shift_candidates(B: GradedBarcode, C: GradedBarcode) -> list[Fraction]:
    """Shifts ``c`` among which ``c -> d_bottle(B, C[c])`` attains its minimum.

    For a fixed matching the cost is a max of constants (deletions) and
    V-shaped terms ``|c - x|``; such a convex function is minimised at a V
    vertex or where two V's cross, i.e. at an endpoint difference or at the
    midpoint of two of them.
    """
    diffs = set()
    for d in iter_degrees(B, C):
        for _, I in B.in_degree(d):
            for _, J in C.in_degree(d):
                if I.is_infinite != J.is_infinite:
                    continue
                diffs.add(J.left - I.left)
                if not I.is_infinite:
                    diffs.add(J.right - I.right)
    diffs = sorted(diffs)
    out = set(diffs) | {Fraction(0)}
    for k, x in enumerate(diffs):
        for y in diffs[k + 1:]:
            out.add((x + y) / 2)
    return sorted(out)


def quotient_distance_with_shift(B: GradedBarcode, C: GradedBarcode) -> tuple[Extended, Fraction | None]:
    """Minimum over shifts ``c`` of ``d_bottle(B, C[c])`` and a minimising ``c``."""
    if sigma_infinity(B) != sigma_infinity(C):
        return INF, None
    best, best_c = INF, None
    for c in shift_candidates(B, C):
        value = bottleneck_distance(B, shift_barcode(C, c))
        if value < best:
            best, best_c = value, c
            if best == 0:
                break
    return best, best_c


def quotient_distance(B: GradedBarcode, C: GradedBarcode) -> Extended:
    return quotient_distance_with_shift(B, C)[0]
