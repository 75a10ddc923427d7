"""Seeded random barcodes, complexes and vertex functions for self-tests."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import gf2
from .barcodes import Bar, GradedBarcode
from .complexes import FilteredComplex, Generator, validate_complex
from .exact import INF


def random_rational(rng: random.Random, lo: int = 0, hi: int = 8, denom: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * denom, hi * denom), denom)


def random_barcode(
    rng: random.Random,
    max_bars: int = 6,
    degrees=(0, 1),
    denom: int = 4,
    hi: int = 6,
    inf_prob: float = 0.3,
    sigma: dict[int, int] | None = None,
) -> GradedBarcode:
    """Random finite barcode with endpoints in ``(1/denom) Z`` inside ``[0, hi]``.

    With ``sigma`` given, the semi-infinite bars are exactly that many per
    degree and only finite bars are random.
    """
    bars = []
    if sigma is not None:
        for deg, count in sigma.items():
            bars += [Bar(random_rational(rng, 0, hi, denom), INF, deg) for _ in range(count)]
    n = rng.randint(0, max(max_bars - len(bars), 0))
    for _ in range(n):
        deg = rng.choice(degrees)
        left = random_rational(rng, 0, hi - 1, denom)
        if sigma is None and rng.random() < inf_prob:
            bars.append(Bar(left, INF, deg))
            continue
        length = Fraction(rng.randint(1, denom * 3), denom)
        bars.append(Bar(left, left + length, deg))
    return GradedBarcode(tuple(bars))


def random_complex(
    rng: random.Random,
    max_gens: int = 8,
    degrees=(0, 1, 2),
    denom: int = 2,
    hi: int = 6,
    mix: float = 0.5,
    prefix: str = "x",
) -> FilteredComplex:
    """Random valid cochain complex with a non-trivial differential.

    Built as a sum of single generators and pairs ``x -> y`` (``y`` of lower
    action, one degree up), then disguised by a filtered change of basis that
    adds lower-action generators of the same degree to each basis vector.
    """
    gens, diff = [], {}
    target = rng.randint(1, max_gens)
    while len(gens) < target:
        k = len(gens)
        if target - len(gens) >= 2 and rng.random() < 0.5 and len(degrees) > 1:
            deg = rng.choice(degrees[:-1])
            lo = random_rational(rng, 0, hi - 1, denom)
            up = lo + Fraction(rng.randint(1, 2 * denom), denom)
            x, y = f"{prefix}{k}", f"{prefix}{k + 1}"
            gens += [Generator(x, deg, up), Generator(y, deg + 1, lo)]
            diff[x] = {y}
        else:
            gens.append(Generator(f"{prefix}{k}", rng.choice(degrees), random_rational(rng, 0, hi, denom)))
    C = FilteredComplex(tuple(gens), diff)
    N = len(gens)
    P = np.eye(N, dtype=np.uint8)
    for c, gc in enumerate(gens):
        for r, gr in enumerate(gens):
            if gr.degree == gc.degree and gr.action < gc.action and rng.random() < mix:
                P[r, c] = 1
    D = C.matrix()
    Dn = gf2.matmul(gf2.matmul(gf2.inverse(P), gf2.asmatrix(D)), gf2.asmatrix(P))
    labels = C.labels
    new_diff = {labels[c]: {labels[r] for r in np.nonzero(Dn[:, c])[0]} for c in range(N)}
    out = FilteredComplex(C.generators, new_diff)
    problems = validate_complex(out)
    assert not problems, problems
    return out


def random_values(rng: random.Random, vertices, denom: int = 4, hi: int = 4) -> dict:
    return {v: random_rational(rng, -hi, hi, denom) for v in vertices}
