from rectpart.ink import ink_partition
from rectpart.svg import render_svg, write_svg


def test_polygon_only(rectangle):
    svg = render_svg(rectangle)
    assert svg.startswith("<svg")
    assert svg.count("<path") == 1
    assert "<line" not in svg


def test_partition_draws_cuts(lshape):
    svg = render_svg(lshape, ink_partition(lshape))
    assert svg.count('class="cut"') == 1
    assert svg.count("<rect") == 2


def test_rendering_is_deterministic(cross):
    res = ink_partition(cross)
    assert render_svg(cross, res) == render_svg(cross, res)


def test_holes_in_one_path(windmill, shapes, tmp_path):
    svg = render_svg(windmill)
    assert svg.count("<path") == 1
    assert svg.count("z") >= 2
    out = tmp_path / "holes.svg"
    write_svg(shapes["pointholes"], None, out)
    assert out.read_text().count("<circle") == 2
