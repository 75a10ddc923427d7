"""JSON documents (schema ``v1``) for every value the package exchanges.

Rationals are always strings ``"p/q"`` in lowest terms (``"inf"`` for a
semi-infinite right end).  :func:`dumps` is the canonical serializer: parsing
its output and dumping again reproduces the same bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import gf2
from .barcodes import Bar, GradedBarcode, MatchingCertificate
from .complexes import FilteredComplex, FilteredMap, Generator
from .errors import SchemaError
from .exact import format_rational, parse_extended, parse_rational
from .floer import SimplicialFunction, TwistComplexSpec
from .persistence import DegreePart, InterleavingCertificate, PersistenceModule, PiecewiseMap

SCHEMA = "v1"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def load_file(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads(text)


def _need(cond, message, where):
    if not cond:
        raise SchemaError(message, where)


def _obj(doc, where, keys=(), kind=None):
    _need(isinstance(doc, dict), "expected an object", where)
    if "schema" in doc:
        _need(doc["schema"] == SCHEMA, f"unsupported schema {doc['schema']!r}", f"{where}.schema")
    for k in keys:
        _need(k in doc, f"missing key {k!r}", where)
    return doc


def _rat(value, where):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SchemaError(str(exc), where) from None


def _ext(value, where):
    try:
        return parse_extended(value)
    except ValueError as exc:
        raise SchemaError(str(exc), where) from None


def _int(value, where):
    _need(isinstance(value, int) and not isinstance(value, bool), f"expected an integer, got {value!r}", where)
    return value


def _list(value, where):
    _need(isinstance(value, list), "expected a list", where)
    return value


def _bits(rows, shape, where):
    _list(rows, where)
    try:
        arr = np.array(rows, dtype=np.int64).reshape(shape)
    except ValueError:
        raise SchemaError(f"matrix does not have shape {shape}", where) from None
    _need(np.isin(arr, (0, 1)).all(), "matrix entries must be 0 or 1", where)
    return gf2.asmatrix(arr)


def _rows(M) -> list:
    return [[int(x) for x in row] for row in np.asarray(M)]


# barcodes ------------------------------------------------------------------

def barcode_to_doc(B: GradedBarcode) -> dict:
    return {
        "schema": SCHEMA,
        "bars": [
            {"deg": b.degree, "left": format_rational(b.left), "right": format_rational(b.right)} for b in B
        ],
    }


def barcode_from_doc(doc, where="$") -> GradedBarcode:
    _obj(doc, where, ["bars"])
    bars = []
    for i, item in enumerate(_list(doc["bars"], f"{where}.bars")):
        at = f"{where}.bars[{i}]"
        _obj(item, at, ["deg", "left", "right"])
        bars.append(Bar(_rat(item["left"], f"{at}.left"), _ext(item["right"], f"{at}.right"), _int(item["deg"], f"{at}.deg")))
    return GradedBarcode(tuple(bars))


def matching_to_doc(cert: MatchingCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "delta": format_rational(cert.delta),
        "closed": cert.closed,
        "pairs": [list(p) for p in cert.pairs],
        "deleted_a": sorted(cert.deleted_a),
        "deleted_b": sorted(cert.deleted_b),
    }


def matching_from_doc(doc, where="$") -> MatchingCertificate:
    _obj(doc, where, ["delta", "pairs"])
    pairs = []
    for i, p in enumerate(_list(doc["pairs"], f"{where}.pairs")):
        _need(isinstance(p, list) and len(p) == 2, "pair must be [i, j]", f"{where}.pairs[{i}]")
        pairs.append((_int(p[0], f"{where}.pairs[{i}][0]"), _int(p[1], f"{where}.pairs[{i}][1]")))
    da = [_int(x, f"{where}.deleted_a") for x in _list(doc.get("deleted_a", []), f"{where}.deleted_a")]
    db = [_int(x, f"{where}.deleted_b") for x in _list(doc.get("deleted_b", []), f"{where}.deleted_b")]
    closed = doc.get("closed", True)
    _need(isinstance(closed, bool), "closed must be a boolean", f"{where}.closed")
    return MatchingCertificate(_rat(doc["delta"], f"{where}.delta"), tuple(pairs), frozenset(da), frozenset(db), closed)


# persistence modules -------------------------------------------------------

def module_to_doc(V: PersistenceModule) -> dict:
    return {
        "schema": SCHEMA,
        "spectrum": [format_rational(s) for s in V.spectrum],
        "degrees": {
            str(deg): {"dims": list(part.dims), "maps": [_rows(M) for M in part.maps]} for deg, part in V.parts.items()
        },
    }


def module_from_doc(doc, where="$") -> PersistenceModule:
    _obj(doc, where, ["spectrum", "degrees"])
    spectrum = tuple(_rat(s, f"{where}.spectrum[{i}]") for i, s in enumerate(_list(doc["spectrum"], f"{where}.spectrum")))
    _need(isinstance(doc["degrees"], dict), "expected an object", f"{where}.degrees")
    parts = {}
    for key, part in doc["degrees"].items():
        at = f"{where}.degrees.{key}"
        try:
            deg = int(key)
        except ValueError:
            raise SchemaError("degree keys must be integers", at) from None
        _obj(part, at, ["dims", "maps"])
        dims = tuple(_int(d, f"{at}.dims") for d in _list(part["dims"], f"{at}.dims"))
        raw = _list(part["maps"], f"{at}.maps")
        _need(len(raw) == len(dims) - 1, f"expected {len(dims) - 1} maps", f"{at}.maps")
        maps = tuple(_bits(M, (dims[j + 1], dims[j]), f"{at}.maps[{j}]") for j, M in enumerate(raw))
        parts[deg] = DegreePart(dims, maps)
    return PersistenceModule(spectrum, parts)


def _piecewise_to_doc(pm: PiecewiseMap) -> dict:
    return {
        "breaks": [format_rational(b) for b in pm.breaks],
        "shapes": [list(M.shape) for M in pm.mats],
        "maps": [_rows(M) for M in pm.mats],
    }


def _piecewise_from_doc(doc, where) -> PiecewiseMap:
    _obj(doc, where, ["breaks", "shapes", "maps"])
    breaks = tuple(_rat(b, f"{where}.breaks[{i}]") for i, b in enumerate(_list(doc["breaks"], f"{where}.breaks")))
    shapes, maps = _list(doc["shapes"], f"{where}.shapes"), _list(doc["maps"], f"{where}.maps")
    _need(len(shapes) == len(maps) == len(breaks) + 1, "need one shape and one map per cell", where)
    mats = []
    for i, (shape, M) in enumerate(zip(shapes, maps)):
        _need(isinstance(shape, list) and len(shape) == 2, "shape must be [rows, cols]", f"{where}.shapes[{i}]")
        mats.append(_bits(M, tuple(shape), f"{where}.maps[{i}]"))
    return PiecewiseMap(breaks, tuple(mats))


def interleaving_to_doc(cert: InterleavingCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "delta": format_rational(cert.delta),
        "epsilon": format_rational(cert.epsilon),
        "f": {str(d): _piecewise_to_doc(pm) for d, pm in cert.f.items()},
        "g": {str(d): _piecewise_to_doc(pm) for d, pm in cert.g.items()},
    }


def interleaving_from_doc(doc, where="$") -> InterleavingCertificate:
    _obj(doc, where, ["delta", "epsilon", "f", "g"])
    maps = {}
    for side in ("f", "g"):
        _need(isinstance(doc[side], dict), "expected an object", f"{where}.{side}")
        maps[side] = {int(k): _piecewise_from_doc(v, f"{where}.{side}.{k}") for k, v in doc[side].items()}
    return InterleavingCertificate(_rat(doc["delta"], f"{where}.delta"), _rat(doc["epsilon"], f"{where}.epsilon"), maps["f"], maps["g"])


# complexes -----------------------------------------------------------------

def complex_to_doc(C: FilteredComplex) -> dict:
    doc = {
        "schema": SCHEMA,
        "generators": [{"label": g.label, "deg": g.degree, "action": format_rational(g.action)} for g in C.generators],
        "differential": {x: sorted(ys) for x, ys in C.differential.items()},
    }
    if C.differential_degree != 1:
        doc["differential_degree"] = C.differential_degree
    if not C.strict:
        doc["strict"] = False
    return doc


def complex_from_doc(doc, where="$") -> FilteredComplex:
    _obj(doc, where, ["generators"])
    gens = []
    for i, g in enumerate(_list(doc["generators"], f"{where}.generators")):
        at = f"{where}.generators[{i}]"
        _obj(g, at, ["label", "deg", "action"])
        _need(isinstance(g["label"], str), "label must be a string", f"{at}.label")
        gens.append(Generator(g["label"], _int(g["deg"], f"{at}.deg"), _rat(g["action"], f"{at}.action")))
    diff = doc.get("differential", {})
    _need(isinstance(diff, dict), "expected an object", f"{where}.differential")
    for x, ys in diff.items():
        _list(ys, f"{where}.differential.{x}")
        _need(all(isinstance(y, str) for y in ys), "labels must be strings", f"{where}.differential.{x}")
    dd = _int(doc.get("differential_degree", 1), f"{where}.differential_degree")
    strict = doc.get("strict", True)
    _need(isinstance(strict, bool), "strict must be a boolean", f"{where}.strict")
    return FilteredComplex(tuple(gens), {x: frozenset(ys) for x, ys in diff.items()}, dd, strict)


def map_to_doc(phi: FilteredMap) -> dict:
    return {
        "schema": SCHEMA,
        "source": complex_to_doc(phi.source),
        "target": complex_to_doc(phi.target),
        "images": {x: sorted(ys) for x, ys in sorted(phi.images.items())},
        "degree_shift": phi.degree_shift,
        "action_shift": format_rational(phi.action_shift),
    }


def map_from_doc(doc, where="$") -> FilteredMap:
    _obj(doc, where, ["source", "target", "images"])
    images = doc["images"]
    _need(isinstance(images, dict), "expected an object", f"{where}.images")
    for x, ys in images.items():
        _list(ys, f"{where}.images.{x}")
    return FilteredMap(
        complex_from_doc(doc["source"], f"{where}.source"),
        complex_from_doc(doc["target"], f"{where}.target"),
        {x: frozenset(ys) for x, ys in images.items()},
        _int(doc.get("degree_shift", 0), f"{where}.degree_shift"),
        _rat(doc.get("action_shift", "0/1"), f"{where}.action_shift"),
    )


# constructors' inputs ------------------------------------------------------

def twist_spec_to_doc(spec: TwistComplexSpec) -> dict:
    return {
        "schema": SCHEMA,
        "m": spec.m,
        "n": spec.n,
        "actions": {k: format_rational(v) for k, v in sorted(spec.actions.items())},
        "degree_rule": spec.degree_rule,
    }


def twist_spec_from_doc(doc, where="$") -> TwistComplexSpec:
    _obj(doc, where, ["m"])
    actions = doc.get("actions", {})
    _need(isinstance(actions, dict), "expected an object", f"{where}.actions")
    return TwistComplexSpec(
        _int(doc["m"], f"{where}.m"),
        _int(doc.get("n", 2), f"{where}.n"),
        {k: _rat(v, f"{where}.actions.{k}") for k, v in actions.items()},
        doc.get("degree_rule", "graded-shift"),
    )


def simplicial_to_doc(K: SimplicialFunction) -> dict:
    return {
        "schema": SCHEMA,
        "vertices": [str(v) for v in K.vertices],
        "simplices": [[str(v) for v in s] for s in K.simplices],
        "values": {str(v): format_rational(K.values[v]) for v in K.vertices if v in K.values},
    }


def simplicial_from_doc(doc, where="$") -> SimplicialFunction:
    """Vertex ids are strings in documents."""
    _obj(doc, where, ["simplices", "values"])
    simplices = []
    for i, s in enumerate(_list(doc["simplices"], f"{where}.simplices")):
        _need(isinstance(s, list) and s and all(isinstance(v, str) for v in s), "simplex must be a non-empty list of vertex names", f"{where}.simplices[{i}]")
        simplices.append(tuple(s))
    for v in doc.get("vertices", []):
        simplices.append((str(v),))
    values = doc["values"]
    _need(isinstance(values, dict), "expected an object", f"{where}.values")
    return SimplicialFunction(tuple(simplices), {k: _rat(v, f"{where}.values.{k}") for k, v in values.items()})
