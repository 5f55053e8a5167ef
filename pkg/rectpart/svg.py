"""Deterministic SVG rendering of polygons and partitions."""

import xml.etree.ElementTree as ET

MARGIN = 1
STYLE = {
    "polygon": {"fill": "#e8eef7", "stroke": "#1f3b63", "stroke-width": "0.08", "fill-rule": "evenodd"},
    "rect": {"fill": "none", "stroke": "#7a8ca6", "stroke-width": "0.04"},
    "cut": {"stroke": "#c0392b", "stroke-width": "0.1", "stroke-linecap": "round"},
    "hole": {"fill": "#1f3b63"},
}


def _loop(ring, scale):
    head, *rest = ring
    d = f"M{head[0] * scale} {head[1] * scale}"
    for p in rest:
        d += f"L{p[0] * scale} {p[1] * scale}"
    return d + "z"


def svg_root(bounds):
    x0, y0, x1, y1 = bounds
    w, h = x1 - x0 + 2 * MARGIN, y1 - y0 + 2 * MARGIN
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{w * 20}",
        height=f"{h * 20}",
        viewBox=f"{x0 - MARGIN} {-(y1 + MARGIN)} {w} {h}",
    )


def render_svg(poly, result=None):
    """SVG document (a string) of poly and, optionally, a partition of it.

    Result coordinates are divided by its scale so both share one frame.
    y is flipped so the drawing reads with y pointing up.
    """
    box = poly.bounding_rect()
    svg = svg_root((box.lo.x, box.lo.y, box.hi.x, box.hi.y))
    frame = ET.SubElement(svg, "g", transform="scale(1,-1)")
    d = " ".join(_loop(ring, 1) for ring in poly.rings)
    ET.SubElement(frame, "path", {"class": "polygon", "d": d, **STYLE["polygon"]})
    for p in poly.point_holes:
        ET.SubElement(frame, "circle", {"class": "hole", "cx": f"{p.x}", "cy": f"{p.y}", "r": "0.12", **STYLE["hole"]})
    if result is not None:
        s = result.scale
        group = ET.SubElement(frame, "g", {"class": "rectangles"})
        for r in result.rectangles:
            ET.SubElement(group, "rect", {
                "x": _num(r.lo.x, s), "y": _num(r.lo.y, s),
                "width": _num(r.width, s), "height": _num(r.height, s),
                **STYLE["rect"],
            })
        group = ET.SubElement(frame, "g", {"class": "cuts"})
        for a, b in result.cuts:
            ET.SubElement(group, "line", {
                "class": "cut",
                "x1": _num(a[0], s), "y1": _num(a[1], s), "x2": _num(b[0], s), "y2": _num(b[1], s),
                **STYLE["cut"],
            })
    return ET.tostring(svg, encoding="unicode")


def _num(value, scale):
    if value % scale == 0:
        return str(value // scale)
    return f"{value / scale:.6f}".rstrip("0")


def write_svg(poly, result, path):
    with open(path, "w") as file:
        file.write(render_svg(poly, result))
