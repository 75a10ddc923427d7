from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest

from floerbars import (
    FilteredComplex,
    FilteredMap,
    Generator,
    RankError,
    StructuralError,
    TwistComplexSpec,
    UndefinedValueError,
    chain_action,
    circle_model,
    dual,
    gamma_diam,
    gamma_fund,
    persistence_barcode,
    poincare_dual,
    selectors,
    sigma_infinity,
    spectrum,
    sphere_self_complex,
    sublevel,
    tensor,
    total_cohomology_rank,
    twist_complex,
    validate_complex,
    verify_filtered_map,
)
from floerbars.exact import INF
from floerbars.oracles import sublevel_persistence
from floerbars.random_models import random_complex

from conftest import bc


def pair_complex(ax=2, ay=1):
    return FilteredComplex((Generator("x", 0, ax), Generator("y", 1, ay)), {"x": {"y"}})


def single(label="p", deg=0, act=0):
    return FilteredComplex((Generator(label, deg, act),))


class TestValidate:
    def test_zero_differential(self):
        assert validate_complex(FilteredComplex((Generator("a", 0, 5), Generator("b", 3, -1)))) == []

    def test_pair(self):
        assert validate_complex(pair_complex()) == []

    def test_action_increase(self):
        problems = validate_complex(pair_complex(1, 2))
        assert len(problems) == 1 and "action" in problems[0]

    def test_square_nonzero(self):
        C = FilteredComplex(
            (Generator("a", 0, 3), Generator("b", 1, 2), Generator("c", 2, 1)),
            {"a": {"b"}, "b": {"c"}},
        )
        assert validate_complex(C) == ["d(da) = ['c'] is not zero"]

    def test_unknown_and_duplicate_labels(self):
        C = FilteredComplex((Generator("a", 0, 1), Generator("a", 1, 0)), {"a": {"zz"}})
        problems = validate_complex(C)
        assert len(problems) >= 2

    def test_degree_rule(self):
        C = FilteredComplex((Generator("x", 0, 2), Generator("y", 2, 1)), {"x": {"y"}})
        assert validate_complex(C)


class TestChainAction:
    def test_single(self):
        C = FilteredComplex((Generator("p", 0, 1), Generator("q", 0, 3)))
        assert chain_action(C, ["p"]) == 1

    def test_max_rule_and_order(self):
        C = FilteredComplex((Generator("p", 0, 1), Generator("q", 0, 3)))
        assert chain_action(C, ["p", "q"]) == 3 == chain_action(C, ["q", "p"])

    def test_empty(self):
        assert chain_action(single(), []) == -INF


class TestPersistence:
    def test_single(self):
        assert persistence_barcode(single(deg=3, act=F(5, 2))) == bc((F(5, 2), None, 3))

    def test_pair(self):
        assert persistence_barcode(pair_complex()) == bc((1, 2, 1))

    def test_sphere(self):
        assert persistence_barcode(sphere_self_complex(2, 0, 1)) == bc((0, None, 0), (-1, None, 2))

    def test_invalid(self):
        with pytest.raises(StructuralError):
            persistence_barcode(pair_complex(1, 2))

    def test_matches_sublevel_oracle(self, rng):
        for _ in range(60):
            C = random_complex(rng, max_gens=10)
            assert persistence_barcode(C) == sublevel_persistence(C)

    def test_oracle_hand_case(self):
        assert sublevel_persistence(pair_complex()) == bc((1, 2, 1))

    def test_infinite_bars_count_cohomology(self, rng):
        for _ in range(30):
            C = random_complex(rng)
            ranks = {d: r for d, r in total_cohomology_rank(C).items() if r}
            assert sigma_infinity(persistence_barcode(C)) == ranks


class TestSpectrumAndSelectors:
    def test_empty(self):
        assert spectrum(FilteredComplex()) == []

    def test_sphere(self):
        C = sphere_self_complex(2, 0, 1)
        assert Counter(spectrum(C)) == Counter([F(0), F(-1)])
        assert selectors(C) == {0: [0], 2: [-1]}

    def test_tensor_sumset(self, rng):
        for _ in range(10):
            C, D = random_complex(rng, 4, prefix="a"), random_complex(rng, 4, prefix="b")
            assert Counter(spectrum(tensor(C, D))) == Counter(a + b for a in spectrum(C) for b in spectrum(D))

    def test_single(self):
        assert selectors(single(act=F(7, 3))) == {0: [F(7, 3)]}

    def test_twist_m1(self):
        sel = selectors(twist_complex(TwistComplexSpec(1, 2)))
        assert sum(len(v) for v in sel.values()) == 2 and len(sel) == 2


class TestGamma:
    def test_single(self):
        assert gamma_diam(single(act=4)) == 0

    def test_sphere(self):
        assert gamma_diam(sphere_self_complex(2, 0, 1)) == 1
        assert gamma_fund(sphere_self_complex(2, 0, 1), 2) == 1

    def test_undefined(self):
        with pytest.raises(UndefinedValueError):
            gamma_diam(pair_complex())

    def test_rank_error_names_degree(self):
        with pytest.raises(RankError, match="degree 2"):
            gamma_fund(single(), 2)

    def test_equal_actions(self):
        C = FilteredComplex((Generator("a", 0, 3), Generator("b", 2, 3)))
        assert gamma_fund(C, 2) == 0

    def test_fund_agrees_with_diam_on_two_bars(self, rng):
        for _ in range(30):
            a, b = F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4)
            C = FilteredComplex(
                (Generator("u", 0, a), Generator("v", 2, b), Generator("x", 0, 5), Generator("y", 1, 4)),
                {"x": {"y"}},
            )
            assert gamma_diam(C) == abs(gamma_fund(C, 2))

    def test_tensor_square_doubles(self):
        C = sphere_self_complex(2, 0, 1)
        assert gamma_diam(tensor(C, C)) == 2 * gamma_diam(C)

    def test_additive(self, rng):
        for _ in range(20):
            C, D = random_complex(rng, 5, prefix="a"), random_complex(rng, 5, prefix="b")
            if selectors(C) and selectors(D):
                assert gamma_diam(tensor(C, D)) == gamma_diam(C) + gamma_diam(D)


class TestTensor:
    def test_empty(self):
        assert tensor(single(), FilteredComplex()).generators == ()

    def test_single_generators(self):
        T = tensor(single("p", 1, 2), single("q", 2, F(1, 3)))
        assert T.generators == (Generator("(p,q)", 3, F(7, 3)),)

    def test_torus(self):
        T = tensor(circle_model(), circle_model())
        assert sigma_infinity(persistence_barcode(T)) == {0: 1, 1: 2, 2: 1}

    def test_product_is_valid_and_kunneth(self, rng):
        for _ in range(20):
            C, D = random_complex(rng, 5, prefix="a"), random_complex(rng, 5, prefix="b")
            T = tensor(C, D)
            assert validate_complex(T) == []
            sc, sd, st = selectors(C), selectors(D), selectors(T)
            expect = Counter()
            for i, xs in sc.items():
                for j, ys in sd.items():
                    expect.update((i + j, x + y) for x in xs for y in ys)
            assert Counter((k, v) for k, vs in st.items() for v in vs) == expect


class TestDual:
    def test_single(self):
        assert dual(single(act=3)).generators == (Generator("p", 0, -3),)

    def test_involution(self, rng):
        for _ in range(20):
            C = random_complex(rng)
            assert dual(dual(C)) == C

    def test_spectrum_negates(self, rng):
        for _ in range(20):
            C = random_complex(rng)
            assert spectrum(dual(C)) == sorted(-a for a in spectrum(C))
            assert validate_complex(dual(C)) == []

    def test_poincare_degrees(self):
        D = poincare_dual(sphere_self_complex(2, 0, 1), 2)
        assert sorted(g.degree for g in D.generators) == [0, 2]


class TestFilteredMap:
    def test_identity(self, rng):
        C = random_complex(rng)
        phi = FilteredMap.from_matrix(C, C, np.eye(len(C.generators), dtype=np.uint8))
        assert verify_filtered_map(phi)

    def test_action_shift_violation(self):
        S = FilteredComplex((Generator("x", 0, 1),))
        T = FilteredComplex((Generator("q", 0, 3),))
        assert not verify_filtered_map(FilteredMap(S, T, {"x": {"q"}}, 0, 1))
        assert verify_filtered_map(FilteredMap(S, T, {"x": {"q"}}, 0, 2))

    def test_subcomplex_inclusion(self, rng):
        for _ in range(20):
            C = random_complex(rng)
            kappa = F(rng.randint(0, 12), 2)
            S = sublevel(C, kappa)
            assert verify_filtered_map(FilteredMap(S, C, {x: {x} for x in S.labels}))

    def test_not_a_chain_map(self):
        C = pair_complex()
        assert not verify_filtered_map(FilteredMap(C, C, {"x": {"x"}}))

    def test_unknown_generator(self):
        C = pair_complex()
        with pytest.raises(StructuralError):
            verify_filtered_map(FilteredMap(C, C, {"zz": {"x"}}))

    def test_from_matrix_shape(self):
        C = pair_complex()
        with pytest.raises(StructuralError):
            FilteredMap.from_matrix(C, C, np.eye(3, dtype=np.uint8))
