from fractions import Fraction as F

from floerbars.plotting import barcode_figure, render_barcode

from conftest import bc


def counts(path):
    text = path.read_text()
    return text.count('id="bar-'), text.count('id="arrow-')


def test_two_finite_bars(tmp_path):
    out = render_barcode(bc((0, 2), (1, 3)), tmp_path / "a.svg")
    assert counts(out) == (2, 0)


def test_infinite_bars_get_arrowheads(tmp_path):
    B = bc((0, None, 0), (F(1, 2), 2, 1), (-1, None, 2))
    assert counts(render_barcode(B, tmp_path / "b.svg", title="mixed")) == (3, 2)


def test_empty_barcode(tmp_path):
    assert counts(render_barcode(bc(), tmp_path / "e.svg")) == (0, 0)


def test_svg_is_byte_deterministic(tmp_path):
    B = bc((0, None), (1, 3, 1))
    a = render_barcode(B, tmp_path / "1.svg").read_bytes()
    b = render_barcode(B, tmp_path / "2.svg").read_bytes()
    assert a == b


def test_png(tmp_path):
    out = render_barcode(bc((0, 1)), tmp_path / "p.png")
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_degrees_share_one_axis():
    fig, ax = barcode_figure(bc((0, 1, 0), (5, 6, 1)))
    lo, hi = ax.get_xlim()
    assert lo < 0 and hi > 6
    assert [t.get_text() for t in ax.get_yticklabels()] == ["deg 0", "deg 1"]
