"""Deterministic SVG rendering of rank-2 diagrams with overlays.

All geometry stays exact until the final coordinate formatting; identical
inputs produce byte-identical documents.
"""

from fractions import Fraction

from .geometry import vadd, vscale, vneg, is_zero


def _func_label(f):
    if f.is_one():
        return "1"
    parts = ["1"]
    for k, c in f.terms():
        e = tuple(k * x for x in f.direction)
        cs = "" if c == 1 else "%s " % (c,)
        parts.append("%sz^(%d,%d)" % (cs, e[0], e[1]))
    return "+".join(parts)


def _mono_label(p):
    c = "" if p.coeff == 1 else "%s " % (p.coeff,)
    return "%sz^(%d,%d)" % (c, p.exponent[0], p.exponent[1])


class _View:
    def __init__(self, radius, size=640, margin=40):
        self.r = Fraction(radius)
        self.size = size
        self.margin = margin

    def pt(self, p):
        s = Fraction(self.size - 2 * self.margin, 2)
        x = self.margin + float((Fraction(p[0]) / self.r + 1) * s)
        y = self.margin + float((1 - Fraction(p[1]) / self.r) * s)
        return "%.2f,%.2f" % (x, y)

    def xy(self, p):
        return self.pt(p).split(",")


def _content_radius(diagram, overlays):
    r = Fraction(4)
    for pts in overlays:
        for p in pts:
            for c in p:
                a = abs(Fraction(c))
                if a > r:
                    r = a
    return r + 1


def _line_points(line, radius):
    pts = [p.bend_point for p in line.pieces[:-1]] + [tuple(line.endpoint)]
    ext = vadd(pts[0], vscale(2 * Fraction(radius), line.pieces[0].exponent))
    return [ext] + pts


def _segment_points(seg):
    return seg.positions()


def render_svg(diagram, broken_lines=(), segments=(), polygons=(), size=640):
    overlays = [[_p for _p in _segment_points(s)] for s in segments]
    overlays += [list(p) for p in polygons]
    overlays += [[p.bend_point for p in bl.pieces[:-1]] + [tuple(bl.endpoint)]
                 for bl in broken_lines]
    radius = _content_radius(diagram, overlays)
    v = _View(radius, size)
    out = []
    out.append('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
               'viewBox="0 0 %d %d">' % (size, size, size, size))
    out.append('<rect width="%d" height="%d" fill="white"/>' % (size, size))
    for w in diagram.walls:
        a = vscale(radius, w.direction)
        b = vneg(a) if w.kind == "line" else (0, 0)
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="black" '
                   'stroke-width="1.5"/>' % (tuple(v.xy(a)) + tuple(v.xy(b))))
        lab = vscale(Fraction(7, 10) * radius, w.direction)
        out.append('<text x="%s" y="%s" font-size="11">%s</text>'
                   % (tuple(v.xy(lab)) + (_func_label(w.func),)))
    for cyc in polygons:
        path = " ".join(v.pt(p) for p in cyc)
        out.append('<polygon points="%s" fill="steelblue" fill-opacity="0.2" '
                   'stroke="steelblue"/>' % path)
    for bl in broken_lines:
        pts = _line_points(bl, radius)
        out.append('<polyline points="%s" fill="none" stroke="crimson" '
                   'stroke-width="1.2"/>' % " ".join(v.pt(p) for p in pts))
        for i, piece in enumerate(bl.pieces):
            mid = vscale(Fraction(1, 2), vadd(pts[i], pts[i + 1]))
            out.append('<text x="%s" y="%s" font-size="10" fill="crimson">%s</text>'
                       % (tuple(v.xy(mid)) + (_mono_label(piece),)))
    for seg in segments:
        pts = _segment_points(seg)
        out.append('<polyline points="%s" fill="none" stroke="darkgreen" '
                   'stroke-width="1.2"/>' % " ".join(v.pt(p) for p in pts))
        for i, piece in enumerate(seg.pieces):
            mid = vscale(Fraction(1, 2), vadd(pts[i], pts[i + 1]))
            out.append('<text x="%s" y="%s" font-size="10" fill="darkgreen">%s</text>'
                       % (tuple(v.xy(mid)) + (_mono_label(piece),)))
    out.append("</svg>")
    return "\n".join(out) + "\n"
