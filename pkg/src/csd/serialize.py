"""Canonical JSON (de)serialization for seeds, diagrams, lines and segments.

Rationals are strings "num/den" ("num" when integral); serialization is
byte-stable: sorted keys, compact separators, trailing newline.
"""

import json
from fractions import Fraction
from math import gcd

from .lattice import FixedData, with_principal_coefficients
from .series import WallFunction
from .scattering import Wall, Diagram
from .brokenline import Piece, BrokenLine, Segment


def frac_to_str(x):
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def frac_from_str(s):
    return Fraction(s)


def point_to_json(pt):
    out = []
    for c in pt:
        f = Fraction(c)
        out.append(int(f) if f.denominator == 1 else frac_to_str(f))
    return out


def point_from_json(v):
    return tuple(Fraction(c) for c in v)


def fd_to_json(fd, principal=False):
    return {
        "rank": fd.rank,
        "unfrozen": list(fd.unfrozen),
        "d": list(fd.d),
        "exchange": [[int(x) for x in row] for row in fd.exchange],
        "principal": bool(principal),
    }


def fd_from_json(doc):
    fd = FixedData.from_exchange(doc["exchange"], doc["d"], doc.get("unfrozen"))
    if doc.get("principal"):
        fd, _ = with_principal_coefficients(fd)
    return fd


def wallfunction_to_json(f):
    ks = [k for k, c in f.terms()]
    step = 0
    for k in ks:
        step = gcd(step, k)
    step = step or 1
    coeffs = [f.coeff(step * j) for j in range(1, (max(ks) // step + 1) if ks else 1)]
    return {
        "dir": [step * x for x in f.direction],
        "coeffs": [frac_to_str(c) for c in coeffs],
    }


def wallfunction_from_json(doc):
    d = tuple(int(x) for x in doc["dir"])
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    g = g or 1
    m0 = tuple(x // g for x in d)
    coeffs = []
    for c in doc["coeffs"]:
        coeffs.extend([Fraction(0)] * (g - 1))
        coeffs.append(Fraction(c))
    return WallFunction(m0, coeffs)


def wall_to_json(w):
    support = {"kind": "line"} if w.kind == "line" else {"kind": "ray", "dir": list(w.direction)}
    return {"normal": list(w.normal), "support": support, "func": wallfunction_to_json(w.func)}


def wall_from_json(doc, fd):
    from .scattering import line_dir
    n = tuple(int(x) for x in doc["normal"])
    kind = doc["support"]["kind"]
    if kind == "line":
        direction = line_dir(fd, n)
    else:
        direction = tuple(int(x) for x in doc["support"]["dir"])
    return Wall(n, kind, direction, wallfunction_from_json(doc["func"]))


def diagram_to_json(diagram, principal=False):
    return {
        "seed": fd_to_json(diagram.fd, principal),
        "order": diagram.order,
        "saturated": bool(diagram.saturated),
        "walls": [wall_to_json(w) for w in diagram.walls],
    }


def diagram_from_json(doc):
    from .lattice import Seed
    fd = fd_from_json(doc["seed"])
    walls = [wall_from_json(w, fd) for w in doc["walls"]]
    return Diagram(fd, Seed.identity(fd.rank), walls, doc["order"], doc["saturated"])


def brokenline_to_json(line):
    return {
        "endpoint": point_to_json(line.endpoint),
        "pieces": [
            {
                "exponent": point_to_json(p.exponent),
                "coeff": frac_to_str(p.coeff),
                "bend": None if p.bend_point is None else point_to_json(p.bend_point),
            }
            for p in line.pieces
        ],
    }


def brokenline_from_json(doc):
    pieces = []
    for p in doc["pieces"]:
        bend = None if p["bend"] is None else point_from_json(p["bend"])
        pieces.append(Piece(tuple(int(Fraction(x)) for x in p["exponent"]),
                            Fraction(p["coeff"]), bend))
    return BrokenLine(point_from_json(doc["endpoint"]), pieces)


def segment_to_json(seg):
    return {
        "start": point_to_json(seg.start),
        "end": point_to_json(seg.end),
        "total_time": frac_to_str(seg.total_time),
        "pieces": [
            {
                "exponent": point_to_json(p.exponent),
                "coeff": frac_to_str(p.coeff),
                "bend": None if p.bend_point is None else point_to_json(p.bend_point),
                "duration": None if p.duration is None else frac_to_str(p.duration),
            }
            for p in seg.pieces
        ],
    }


def segment_from_json(doc):
    pieces = []
    for p in doc["pieces"]:
        bend = None if p["bend"] is None else point_from_json(p["bend"])
        dur = None if p["duration"] is None else Fraction(p["duration"])
        pieces.append(Piece(tuple(int(Fraction(x)) for x in p["exponent"]),
                            Fraction(p["coeff"]), bend, dur))
    return Segment(point_from_json(doc["start"]), point_from_json(doc["end"]),
                   pieces, Fraction(doc["total_time"]))


def pair_to_json(pair):
    return {
        "base": point_to_json(pair.base),
        "line1": brokenline_to_json(pair.line1),
        "line2": brokenline_to_json(pair.line2),
    }


def pair_from_json(doc):
    from .constructions import BalancedPair
    return BalancedPair(brokenline_from_json(doc["line1"]),
                        brokenline_from_json(doc["line2"]),
                        point_from_json(doc["base"]))


def points_to_json(pts):
    return [point_to_json(p) for p in pts]


def points_from_json(doc):
    return [point_from_json(p) for p in doc]


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def save(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))


def load(path):
    with open(path) as fh:
        return json.load(fh)
