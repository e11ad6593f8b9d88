import json
from fractions import Fraction

from csd import serialize
from csd.brokenline import Piece, BrokenLine, Segment, enumerate_lines
from csd.constructions import BalancedPair
from csd.series import WallFunction
from csd.svg import render_svg

F = Fraction


def test_frac_roundtrip():
    assert serialize.frac_to_str(F(3)) == "3"
    assert serialize.frac_to_str(F(-5, 2)) == "-5/2"
    assert serialize.frac_from_str("-5/2") == F(-5, 2)
    assert serialize.point_to_json((F(1), F(2, 3))) == [1, "2/3"]
    assert serialize.point_from_json([1, "2/3"]) == (F(1), F(2, 3))


def test_fd_roundtrip(g2):
    doc = serialize.fd_to_json(g2)
    assert doc["exchange"] == [[0, 3], [-1, 0]]
    back = serialize.fd_from_json(json.loads(json.dumps(doc)))
    assert back.exchange == g2.exchange
    assert back.d == g2.d
    assert back.unfrozen == g2.unfrozen


def test_fd_principal(a2):
    doc = serialize.fd_to_json(a2, principal=True)
    back = serialize.fd_from_json(doc)
    assert back.rank == 4
    assert back.unfrozen == (0, 1)


def test_wallfunction_sparse_roundtrip():
    f = WallFunction((-1, 1), [0, 2, 0, 3, 0, 4])
    doc = serialize.wallfunction_to_json(f)
    # the shared step is folded into the stored direction
    assert doc["dir"] == [-2, 2]
    assert doc["coeffs"] == ["2", "3", "4"]
    assert serialize.wallfunction_from_json(doc) == f


def test_diagram_roundtrip(g2, g2_diagram):
    doc = serialize.diagram_to_json(g2_diagram)
    s = serialize.dumps_canonical(doc)
    back = serialize.diagram_from_json(json.loads(s))
    assert back.order == g2_diagram.order
    assert back.saturated == g2_diagram.saturated
    assert len(back.walls) == len(g2_diagram.walls)
    assert serialize.dumps_canonical(serialize.diagram_to_json(back)) == s
    got = {(w.normal, w.kind, w.direction): w.func for w in back.walls}
    for w in g2_diagram.walls:
        assert got[(w.normal, w.kind, w.direction)] == w.func


def test_brokenline_roundtrip(a2, a2_diagram):
    lines = enumerate_lines(a2, a2_diagram, (-1, 0), (F(2), F(1)), 6)
    for line in lines:
        doc = serialize.brokenline_to_json(line)
        back = serialize.brokenline_from_json(json.loads(json.dumps(doc)))
        assert back.endpoint == line.endpoint
        assert [(p.exponent, p.coeff, p.bend_point) for p in back.pieces] == \
            [(p.exponent, p.coeff, p.bend_point) for p in line.pieces]


def test_segment_and_pair_roundtrip():
    seg = Segment((F(1), F(-5)), (F(2), F(4)),
                  [Piece((1, -3), 1, (F(0), F(-2)), F(1)),
                   Piece((-1, -1), F(3), None, F(2))], F(3))
    back = serialize.segment_from_json(json.loads(serialize.dumps_canonical(
        serialize.segment_to_json(seg))))
    assert back.start == seg.start and back.end == seg.end
    assert back.total_time == seg.total_time
    assert [(p.exponent, p.coeff, p.bend_point, p.duration) for p in back.pieces] == \
        [(p.exponent, p.coeff, p.bend_point, p.duration) for p in seg.pieces]
    l1 = BrokenLine((F(0), F(3)), [Piece((1, 0), 1, None)])
    pair = BalancedPair(l1, l1, (0, 3))
    pback = serialize.pair_from_json(json.loads(json.dumps(serialize.pair_to_json(pair))))
    assert pback.base == pair.base
    assert pback.line1.final == pair.line1.final


def test_dumps_canonical_stable():
    a = serialize.dumps_canonical({"b": 1, "a": [1, 2]})
    assert a == '{"a":[1,2],"b":1}\n'


def test_svg_deterministic(a2, a2_diagram):
    lines = enumerate_lines(a2, a2_diagram, (-1, 0), (F(2), F(1)), 6)
    doc1 = render_svg(a2_diagram, broken_lines=lines)
    doc2 = render_svg(a2_diagram, broken_lines=lines)
    assert doc1 == doc2
    assert doc1.startswith("<svg") or "<svg" in doc1
    assert "</svg>" in doc1
