from fractions import Fraction as F

import pytest

from floerbars import (
    FilteredMap,
    MatchingCertificate,
    SchemaError,
    TwistComplexSpec,
    bottleneck_matching,
    cycle_graph,
    interleaving_from_matching,
    octahedron,
    realize,
    twist_complex,
    verify_interleaving,
)
from floerbars import documents as docs
from floerbars.random_models import random_barcode, random_complex

from conftest import bc


def stable(to_doc, from_doc, value):
    text = docs.dumps(to_doc(value))
    again = from_doc(docs.loads(text))
    assert docs.dumps(to_doc(again)) == text
    return again


def test_barcode_round_trip(rng):
    for _ in range(30):
        B = random_barcode(rng)
        assert stable(docs.barcode_to_doc, docs.barcode_from_doc, B) == B


def test_barcode_format():
    doc = docs.barcode_to_doc(bc((F(-1, 2), None, 2), (0, 2, 0)))
    assert doc == {
        "schema": "v1",
        "bars": [
            {"deg": 0, "left": "0/1", "right": "2/1"},
            {"deg": 2, "left": "-1/2", "right": "inf"},
        ],
    }


def test_matching_round_trip(rng):
    for _ in range(20):
        B, C = random_barcode(rng), random_barcode(rng)
        _, cert = bottleneck_matching(B, C)
        if cert is not None:
            again = stable(docs.matching_to_doc, docs.matching_from_doc, cert)
            assert again == cert


def test_module_and_interleaving_round_trip(rng):
    for _ in range(15):
        B, C = random_barcode(rng), random_barcode(rng)
        V = realize(B)
        assert stable(docs.module_to_doc, docs.module_from_doc, V) == V
        _, cert = bottleneck_matching(B, C)
        if cert is None:
            continue
        inter = stable(docs.interleaving_to_doc, docs.interleaving_from_doc, interleaving_from_matching(B, C, cert))
        assert verify_interleaving(V, realize(C), inter)


def test_complex_round_trip(rng):
    for _ in range(20):
        C = random_complex(rng)
        assert stable(docs.complex_to_doc, docs.complex_from_doc, C) == C
    T = twist_complex(TwistComplexSpec(2, 4))
    assert stable(docs.complex_to_doc, docs.complex_from_doc, T) == T


def test_chain_complex_keeps_convention():
    from floerbars import lower_star_complex

    C = lower_star_complex(cycle_graph(3, [0, 1, 2]))
    doc = docs.complex_to_doc(C)
    assert doc["differential_degree"] == -1 and doc["strict"] is False
    assert docs.complex_from_doc(doc) == C


def test_map_twist_simplicial_round_trip():
    C = twist_complex(TwistComplexSpec(1, 2))
    phi = FilteredMap(C, C, {x: {x} for x in C.labels})
    assert stable(docs.map_to_doc, docs.map_from_doc, phi) == phi
    spec = TwistComplexSpec(3, 4, {"eps": F(1, 2)}, "flat")
    assert stable(docs.twist_spec_to_doc, docs.twist_spec_from_doc, spec) == spec
    K = octahedron()
    assert stable(docs.simplicial_to_doc, docs.simplicial_from_doc, K) == K


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"bars": [', "line 1"),
        ('{"schema": "v9", "bars": []}', "$.schema"),
        ('{"bars": [{"deg": 0, "left": "x", "right": "1"}]}', "$.bars[0].left"),
        ('{"bars": [{"deg": 0.5, "left": "0", "right": "1"}]}', "$.bars[0].deg"),
        ('{"bars": {}}', "$.bars"),
        ('[]', "$"),
    ],
)
def test_barcode_schema_errors(text, where):
    with pytest.raises(SchemaError) as info:
        docs.barcode_from_doc(docs.loads(text))
    assert info.value.where.startswith(where)


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError):
        docs.load_file(tmp_path / "nope.json")


def _leaves(doc):
    if isinstance(doc, dict):
        for v in doc.values():
            yield from _leaves(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from _leaves(v)
    else:
        yield doc


def test_rationals_are_reduced_strings(rng):
    for _ in range(10):
        for doc in (docs.complex_to_doc(random_complex(rng)), docs.barcode_to_doc(random_barcode(rng))):
            for leaf in _leaves(doc):
                assert not isinstance(leaf, float)
                if isinstance(leaf, str) and "/" in leaf:
                    p, q = (int(x) for x in leaf.split("/"))
                    assert q > 0 and F(p, q).denominator == q
