import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from floerbars import (
    FilteredComplex,
    FilteredMap,
    Generator,
    MatchingCertificate,
    TwistComplexSpec,
    sphere_self_complex,
    twist_complex,
)
from floerbars import documents as docs
from floerbars.cli import main

from conftest import bc


def write(path, doc):
    path.write_text(docs.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "b1": write(tmp_path / "b1.json", docs.barcode_to_doc(bc((0, 1), (0, None)))),
        "b2": write(tmp_path / "b2.json", docs.barcode_to_doc(bc((F(1, 2), F(3, 2)), (F(1, 5), None)))),
        "b3": write(tmp_path / "b3.json", docs.barcode_to_doc(bc((0, None, 1)))),
        "sphere": write(tmp_path / "sphere.json", docs.complex_to_doc(sphere_self_complex(2, 0, 1))),
        "twist2": write(tmp_path / "twist.json", docs.complex_to_doc(twist_complex(TwistComplexSpec(2, 2)))),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


class TestBarcode:
    def test_self_distance(self, capsys, files):
        code, doc, _ = run_json(capsys, "barcode", "distance", files["b1"], files["b1"])
        assert code == 0 and doc["distance"] == "0/1"

    def test_distance_with_certificate(self, capsys, files):
        code, doc, _ = run_json(capsys, "barcode", "distance", files["b1"], files["b2"])
        assert doc["distance"] == "1/2" and doc["certificate"]["delta"] == "1/2"

    def test_sigma_mismatch_reports_inf(self, capsys, files):
        code, doc, _ = run_json(capsys, "barcode", "distance", files["b1"], files["b3"])
        assert code == 0 and doc["distance"] == "inf"

    def test_qdistance(self, capsys, files):
        code, doc, _ = run_json(capsys, "barcode", "qdistance", files["b1"], files["b2"])
        assert code == 0 and F(doc["distance"]) <= F(1, 2)

    def test_sigma_of_twist(self, capsys, files):
        code, doc, _ = run_json(capsys, "barcode", "sigma", files["twist2"])
        assert doc["total"] == 4 and doc["0"] == 1

    def test_shift_and_truncate(self, capsys, files):
        _, doc, _ = run_json(capsys, "barcode", "shift", files["b1"], "--by", "1/2")
        assert docs.barcode_from_doc(doc) == bc((F(-1, 2), F(1, 2)), (F(-1, 2), None))
        _, doc, _ = run_json(capsys, "barcode", "truncate", files["b1"], "--eps", "2")
        assert docs.barcode_from_doc(doc) == bc((0, None))

    def test_truncate_range_is_input_error(self, capsys, files):
        code, _, err = run(capsys, "barcode", "truncate", files["b1"], "--eps", "0")
        assert code == 2 and "eps" in err

    def test_parse_error_position(self, capsys, files):
        bad = files["dir"] / "bad.json"
        bad.write_text('{"bars": [\n  {"deg": 0,,}\n]}')
        code, out, err = run(capsys, "barcode", "sigma", str(bad))
        assert code == 2 and out == "" and "line 2" in err

    def test_render(self, capsys, files):
        svg = files["dir"] / "two.svg"
        two = write(files["dir"] / "two.json", docs.barcode_to_doc(bc((0, 2), (1, 3))))
        code, doc, _ = run_json(capsys, "barcode", "render", two, "--svg", str(svg))
        text = svg.read_text()
        assert code == 0 and doc["rectangles"] == 2 and doc["arrows"] == 0
        assert text.count('id="bar-') == 2 and text.count('id="arrow-') == 0

    def test_tsv(self, capsys, files):
        code, out, _ = run(capsys, "--format", "tsv", "barcode", "sigma", files["twist2"])
        assert out.splitlines()[0] == "deg\tcount" and out.splitlines()[-1] == "total\t4"

    def test_verify_matching_false(self, capsys, files):
        bad = MatchingCertificate(F(1, 10), [(0, 0), (1, 1)], [], [])
        cert = write(files["dir"] / "m.json", docs.matching_to_doc(bad))
        code, doc, _ = run_json(capsys, "barcode", "verify-matching", files["b1"], files["b2"], cert)
        assert code == 1 and doc["valid"] is False


class TestModule:
    def test_realize_decompose(self, capsys, files):
        code, out, _ = run(capsys, "module", "realize", files["b1"])
        mod = write(files["dir"] / "mod.json", json.loads(out))
        _, doc, _ = run_json(capsys, "module", "decompose", mod)
        assert docs.barcode_from_doc(doc) == bc((0, 1), (0, None))

    def test_interleave_and_verify(self, capsys, files):
        code, out, _ = run(capsys, "module", "interleave", files["b1"], files["b2"])
        cert = write(files["dir"] / "cert.json", json.loads(out))
        mods = []
        for name in ("b1", "b2"):
            _, out, _ = run(capsys, "module", "realize", files[name])
            mods.append(write(files["dir"] / f"{name}.mod.json", json.loads(out)))
        code, doc, _ = run_json(capsys, "module", "verify", *mods, cert)
        assert code == 0 and doc["valid"] is True
        code, doc, _ = run_json(capsys, "module", "distance", *mods)
        assert doc["distance"] == "1/2"


class TestComplex:
    def test_persistence_sphere(self, capsys, files):
        _, doc, _ = run_json(capsys, "complex", "persistence", files["sphere"])
        assert docs.barcode_from_doc(doc) == bc((0, None, 0), (-1, None, 2))

    def test_gamma(self, capsys, files):
        _, doc, _ = run_json(capsys, "complex", "gamma", "--mode", "diam", files["sphere"])
        assert doc["gamma"] == "1/1"
        _, doc, _ = run_json(capsys, "complex", "gamma", "--mode", "fund", "--top", "2", files["sphere"])
        assert doc["gamma"] == "1/1"

    def test_gamma_rank_failure(self, capsys, files):
        code, _, err = run(capsys, "complex", "gamma", "--mode", "fund", "--top", "5", files["sphere"])
        assert code == 1 and "degree 5" in err

    def test_spectrum_selectors_tensor_dual(self, capsys, files):
        _, doc, _ = run_json(capsys, "complex", "spectrum", files["sphere"])
        assert doc["spectrum"] == ["-1/1", "0/1"]
        _, doc, _ = run_json(capsys, "complex", "selectors", files["sphere"])
        assert doc["selectors"] == {"0": ["0/1"], "2": ["-1/1"]}
        _, doc, _ = run_json(capsys, "complex", "tensor", files["sphere"], files["sphere"])
        assert len(doc["generators"]) == 4
        _, doc, _ = run_json(capsys, "complex", "dual", files["sphere"])
        assert sorted(g["action"] for g in doc["generators"]) == ["0/1", "1/1"]

    def test_verify_map_bad_shift(self, capsys, files):
        S = FilteredComplex((Generator("x", 0, 1),))
        T = FilteredComplex((Generator("q", 0, 3),))
        bad = write(files["dir"] / "bad_shift.json", docs.map_to_doc(FilteredMap(S, T, {"x": {"q"}}, 0, 1)))
        code, doc, _ = run_json(capsys, "complex", "verify-map", bad)
        assert code == 1 and doc["valid"] is False
        good = write(files["dir"] / "good.json", docs.map_to_doc(FilteredMap(S, T, {"x": {"q"}}, 0, 2)))
        assert run(capsys, "complex", "verify-map", good)[0] == 0

    def test_invalid_complex_is_input_error(self, capsys, files):
        C = FilteredComplex((Generator("x", 0, 1), Generator("y", 1, 2)), {"x": {"y"}})
        bad = write(files["dir"] / "inc.json", docs.complex_to_doc(C))
        code, _, err = run(capsys, "complex", "persistence", bad)
        assert code == 2 and "action" in err
        assert run(capsys, "complex", "validate", bad)[0] == 1


class TestTwist:
    @pytest.mark.parametrize(
        "k1, k2, verdict",
        [
            ("0", "3", "Different(direct; totals 2 vs 6)"),
            ("0", "1", "Different(squaring; totals 2 vs 4)"),
            ("2", "-2", "Inconclusive(same-model; totals 4 vs 4)"),
        ],
    )
    def test_verdicts(self, capsys, k1, k2, verdict):
        code, doc, _ = run_json(capsys, "twist", "--k1", k1, "--k2", k2, "--n", "2")
        assert code == 0 and doc["verdict"] == verdict
        assert doc["sigma1"] and doc["sigma2"] and doc["justification"]

    def test_odd_n(self, capsys):
        code, _, err = run(capsys, "twist", "--k1", "0", "--k2", "1", "--n", "3")
        assert code == 2 and "even" in err

    def test_emit(self, capsys, tmp_path):
        out = tmp_path / "t.json"
        code, doc, _ = run_json(capsys, "twist", "--m", "3", "--n", "4", "--emit", str(out))
        assert code == 0 and doc["total"] == 6
        assert docs.complex_from_doc(docs.load_file(out)) == twist_complex(TwistComplexSpec(3, 4))


def test_selftest_seeded(capsys, monkeypatch):
    monkeypatch.setenv("PERSIST_TWIST_SEED", "7")
    code, doc, _ = run_json(capsys, "selftest", "--cases", "5")
    assert code == 0 and doc["seed"] == 7 and doc["failures"] == []


def test_entry_point_deterministic(files):
    argv = [sys.executable, "-m", "floerbars.cli", "barcode", "distance", files["b1"], files["b2"]]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["distance"] == "1/2"
