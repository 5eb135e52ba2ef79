import numpy as np

from normcompress.export import SvgCanvas, csv_header, fmt, write_csv


def test_fmt_round_trips():
    for v in (0.1, 1 / 3, np.float64(2.5e-17), -0.0):
        assert float(fmt(v)) == float(v)
    assert fmt(3) == "3"


def test_csv_header_and_rows(tmp_path):
    head = csv_header("bset", 7, {"b": 2.0, "a": "x"})
    assert head[0] == "# schema_version=1 command=bset seed=7"
    assert head[1:3] == ["# a=x", "# b=2.0"]
    assert head[-1].startswith("# tolerances=")
    p = write_csv(tmp_path / "o" / "t.csv", head, ["x", "y"], [(0.1, 2)])
    assert p.read_text().splitlines()[-2:] == ["x,y", "0.1,2"]


def test_svg_viewbox_and_legend():
    c = SvgCanvas()
    c.points(c.layer("dots"), [0, 1 + 1j])
    svg = c.render(["hello <world>"])
    assert 'viewBox="-0.100000 -1.100000 1.200000 1.200000"' in svg
    assert "hello &lt;world&gt;" in svg and '<g id="dots">' in svg
