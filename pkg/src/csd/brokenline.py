"""Broken lines, theta functions, segments and perturbation families.

A broken line is traced backward from its endpoint: a ray escaping to
infinity, bending at wall crossings.  Pieces are stored unbounded-first;
each carries the exponent of its attached monomial, the cumulative
coefficient, and the point where it bends into the next piece.
"""

from fractions import Fraction

from .geometry import (vadd, vsub, vneg, vscale, is_zero, primitive, same_ray,
                       cross, sgn)
from .lattice import pairing, n_circ_primitive, cone_coords, cone_order, j_order, unit
from .series import WallFunction, wf_mul, wf_pow, wf_coeff_pow, LaurentPoly
from .scattering import on_support


class Piece:
    def __init__(self, exponent, coeff=Fraction(1), bend_point=None, duration=None):
        self.exponent = tuple(exponent)
        self.coeff = Fraction(coeff)
        self.bend_point = None if bend_point is None else tuple(bend_point)
        self.duration = duration

    def __repr__(self):
        return "Piece(m=%r, c=%r, at=%r, dt=%r)" % (
            self.exponent, self.coeff, self.bend_point, self.duration)


class BrokenLine:
    """Pieces unbounded-first; bend_point of a piece is where it ends."""

    def __init__(self, endpoint, pieces):
        self.endpoint = tuple(endpoint)
        self.pieces = list(pieces)

    @property
    def initial(self):
        return self.pieces[0].exponent

    @property
    def final(self):
        return self.pieces[-1].exponent

    @property
    def coeff(self):
        return self.pieces[-1].coeff

    def signature(self):
        return tuple((p.exponent, p.bend_point or ()) for p in self.pieces)

    def __repr__(self):
        return "BrokenLine(end=%r, %r)" % (self.endpoint, self.pieces)


class Segment:
    """A finite broken-line segment; pieces carry rational durations.

    Velocity on a piece is minus its exponent; duration None marks a
    degenerate (zero-length) domain.
    """

    def __init__(self, start, end, pieces, total_time):
        self.start = tuple(start)
        self.end = tuple(end)
        self.pieces = list(pieces)
        self.total_time = Fraction(total_time)

    def positions(self):
        """Position at the start of each piece, plus the final position."""
        out = [self.start]
        pos = self.start
        for p in self.pieces:
            if p.duration is not None:
                pos = vsub(pos, vscale(p.duration, p.exponent))
            out.append(pos)
        return out

    def __repr__(self):
        return "Segment(%r -> %r, T=%r, %r)" % (self.start, self.end, self.total_time, self.pieces)


def wall_families(fd, diagram, point):
    """Walls through the point grouped by support line, as (n0_primitive, m0, func)."""
    groups = {}
    for w in diagram.walls:
        if not on_support(fd, w, point):
            continue
        n0 = n_circ_primitive(fd, w.normal)
        key = tuple(abs(x) for x in primitive(n0))
        groups.setdefault(key, []).append(w)
    out = []
    for ws in groups.values():
        n0 = n_circ_primitive(fd, ws[0].normal)
        m0 = ws[0].func.direction
        f = ws[0].func
        for w in ws[1:]:
            if w.func.direction != m0:
                raise ValueError("walls sharing a support line disagree on function direction")
            f = wf_mul(f, w.func, len(f.coeffs) + len(w.func.coeffs))
        out.append((n0, m0, f))
    return out


def allowed_bends(fd, diagram, point, m_in, K):
    """All exponents reachable by bending at the point, with coefficients.

    Includes the trivial no-bend term.  K bounds the order of the shift.
    """
    fams = wall_families(fd, diagram, point)
    if not fams:
        raise ValueError("point %r lies on no wall" % (point,))
    out = [(tuple(m_in), Fraction(1))]
    for n0, m0, f in fams:
        pw = pairing(fd, n0, m_in)
        if pw.denominator != 1:
            raise ValueError("non-integral bending power")
        pw = abs(int(pw))
        if pw == 0:
            continue
        step = cone_order(fd, m0)
        kmax = int(Fraction(K) / step)
        if kmax < 1:
            continue
        g = wf_pow(f, pw, kmax)
        for k, c in g.terms():
            out.append((vadd(m_in, vscale(k, m0)), c))
    return out


def _ray_events(fd, diagram, pos, direction):
    """Wall crossings of the open ray pos + t*direction, t > 0, grouped by t.

    Returns (events, t_origin) where events is a sorted list of
    (t, point, families) and t_origin is the positive time the ray meets the
    origin, or None.
    """
    t_origin = None
    if cross(pos, direction) == 0:
        t = None
        for i in range(len(pos)):
            if direction[i] != 0:
                t = Fraction(-pos[i], direction[i])
                break
        if t is not None and t > 0:
            t_origin = t
    hits = {}
    for w in diagram.walls:
        s0 = pairing(fd, w.normal, pos)
        sd = pairing(fd, w.normal, direction)
        if sd == 0:
            continue
        t = -s0 / sd
        if t <= 0:
            continue
        pt = vadd(pos, vscale(t, direction))
        if is_zero(pt):
            continue
        if on_support(fd, w, pt):
            hits.setdefault(t, (pt, []))[1].append(w)
    events = [(t, pt, ws) for t, (pt, ws) in sorted(hits.items())]
    if t_origin is not None:
        events = [e for e in events if e[0] < t_origin]
    return events, t_origin


def enumerate_lines(fd, diagram, initial, endpoint, K=None):
    """All broken lines with the given initial exponent and endpoint.

    Bounds the shift of the final exponent by the diagram order (or K).
    """
    if K is None:
        K = diagram.order
    if is_zero(initial):
        raise ValueError("initial exponent must be nonzero")
    for w in diagram.walls:
        if on_support(fd, w, endpoint):
            raise ValueError("endpoint lies on a wall; perturb it first")
    g1, g2 = fd.monoid_gens
    results = []
    for a in range(K + 1):
        for b in range(K + 1 - a):
            p = vadd(vscale(a, g1), vscale(b, g2))
            final = vadd(initial, p)
            if is_zero(final):
                continue
            _trace(fd, diagram, endpoint, final, p, K, [], results)
    lines = [_assemble(endpoint, rev_steps) for rev_steps in results]
    lines.sort(key=lambda l: l.signature())
    return lines


def _in_monoid(fd, p):
    co = cone_coords(fd, p)
    return co is not None and all(a >= 0 and a.denominator == 1 for a in co)


def _trace(fd, diagram, pos, m_cur, p_rem, K, steps, results):
    """Backward search; steps collect (bend_point, m_before_bend, coeff) endpoint-first."""
    events, t_origin = _ray_events(fd, diagram, pos, m_cur)
    if t_origin is not None:
        # the traced ray would pass through the singular origin, silently
        # losing a family of lines; the endpoint must be perturbed
        raise ValueError("trajectory with exponent %r from %r runs into the "
                         "origin; endpoint is not generic, perturb it"
                         % (m_cur, pos))
    for t, pt, walls in events:
        # the bending power only depends on the pairing with the wall normal,
        # which the bend itself preserves, so the forward coefficients apply
        for m_out, c in allowed_bends(fd, diagram, pt, m_cur, K):
            if m_out == m_cur:
                continue
            step = vsub(m_out, m_cur)
            m_prev = vsub(m_cur, step)
            p_new = vsub(p_rem, step)
            if is_zero(m_prev) or not _in_monoid(fd, p_new):
                continue
            _trace(fd, diagram, pt, m_prev, p_new, K,
                   steps + [(pt, m_cur, c)], results)
    if is_zero(p_rem):
        results.append(steps + [(None, m_cur, Fraction(1))])


def _assemble(endpoint, rev_steps):
    # rev_steps, endpoint-first: (start_point_of_piece, exponent, bend_coeff);
    # the last entry is the unbounded piece (start None, coeff 1)
    fwd = list(reversed(rev_steps))
    pieces = []
    coeff = Fraction(1)
    for i, (pt, m, c) in enumerate(fwd):
        coeff *= c
        end_pt = fwd[i + 1][0] if i + 1 < len(fwd) else None
        pieces.append(Piece(m, coeff, end_pt))
    return BrokenLine(endpoint, pieces)


def theta(fd, diagram, m, endpoint, K=None):
    if K is None:
        K = diagram.order
    if is_zero(m):
        return LaurentPoly({tuple(m): Fraction(1)}, tuple(m), K)
    terms = {}
    for line in enumerate_lines(fd, diagram, m, endpoint, K):
        e = line.final
        terms[e] = terms.get(e, Fraction(0)) + line.coeff
    return LaurentPoly(terms, tuple(m), K)


def reverse(segment):
    pieces = [Piece(vneg(p.exponent), p.coeff, None, p.duration)
              for p in reversed(segment.pieces)]
    return Segment(segment.end, segment.start, pieces, segment.total_time)


def _bend_ok(fd, diagram, point, m_prev, m_next):
    """Check one bend of a segment; returns (ok, reason)."""
    if m_prev == m_next:
        return True, None
    step = vsub(m_next, m_prev)
    try:
        fams = wall_families(fd, diagram, point)
    except ValueError:
        fams = []
    if not fams:
        return False, "bend point %r lies on no wall" % (point,)
    for n0, m0, f in fams:
        if not same_ray(step, m0):
            continue
        i = 0 if m0[0] != 0 else 1
        k = Fraction(step[i], m0[i])
        if k.denominator != 1 or k < 1:
            continue
        pw = pairing(fd, n0, m_prev)
        if pw.denominator != 1:
            continue
        pw = abs(int(pw))
        if pw == 0:
            continue
        if wf_coeff_pow(f, pw, int(k)) > 0:
            return True, None
    return False, "bend %r -> %r at %r is not allowed" % (m_prev, m_next, point)


def validate_segment(fd, diagram, segment):
    """Verdict (bool, first_violation_message_or_None)."""
    pos = segment.start
    total = Fraction(0)
    n = len(segment.pieces)
    for i, p in enumerate(segment.pieces):
        if is_zero(p.exponent):
            return False, "piece %d has zero exponent" % i
        if p.duration is not None:
            if p.duration < 0:
                return False, "piece %d has negative duration" % i
            nxt = vsub(pos, vscale(p.duration, p.exponent))
            total += p.duration
        else:
            nxt = pos
        if i + 1 < n:
            ok, why = _bend_ok(fd, diagram, nxt, p.exponent, segment.pieces[i + 1].exponent)
            if not ok:
                return False, why
        pos = nxt
    if tuple(pos) != tuple(segment.end):
        return False, "segment ends at %r, expected %r" % (pos, segment.end)
    if total != segment.total_time:
        return False, "durations sum to %r, expected total %r" % (total, segment.total_time)
    return True, None


def line_bounded_segment(fd, line):
    """The bounded part of a broken line as a Segment (first bend to endpoint)."""
    bounded = line.pieces[1:]
    if not bounded:
        raise ValueError("straight line has no bounded part")
    start = line.pieces[0].bend_point
    pts = [p.bend_point for p in bounded[:-1]] + [line.endpoint]
    pieces = []
    pos = start
    total = Fraction(0)
    for p, nxt in zip(bounded, pts):
        d = vsub(pos, nxt)
        if is_zero(d):
            dt = None
        else:
            m = p.exponent
            i = 0 if m[0] != 0 else 1
            dt = Fraction(d[i], m[i])
            total += dt
        pieces.append(Piece(p.exponent, p.coeff, None, dt))
        pos = nxt
    return Segment(start, line.endpoint, pieces, total)


class PerturbedFamily:
    """Generic deformations of a broken line: endpoint shifted by eps * v.

    The plan (sequence of piece exponents) is re-traced for each eps; the
    threshold below which the combinatorics are stable is found by halving.
    """

    def __init__(self, fd, diagram, line, v, K=None):
        self.fd = fd
        self.diagram = diagram
        self.is_segment = isinstance(line, Segment)
        self.endpoint = tuple(line.end if self.is_segment else line.endpoint)
        self.plan = [p.exponent for p in line.pieces]
        self.coeffs = [p.coeff for p in line.pieces]
        self.first_duration = line.pieces[0].duration if self.is_segment else None
        self.v = tuple(v)
        self.K = diagram.order if K is None else K
        self.threshold = self._find_threshold()

    def at(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        line, _ = self._retrace(eps, allow_degenerate=False)
        return line

    def limit(self):
        line, _ = self._retrace(Fraction(0), allow_degenerate=True)
        return line

    def _find_threshold(self, start=Fraction(1)):
        eps = Fraction(start)
        for _ in range(64):
            a = self._try(eps)
            b = self._try(eps / 2)
            if a is not None and b is not None and a == b:
                return eps
            eps /= 2
        raise ValueError("no stable perturbation threshold for v=%r" % (self.v,))

    def _try(self, eps):
        try:
            _, combi = self._retrace(eps, allow_degenerate=False)
            return combi
        except ValueError:
            return None

    def _crossed(self, a, b):
        """Primitive normals of walls crossed strictly between two points."""
        out = []
        v = vsub(b, a)
        if is_zero(v):
            return ()
        for w in self.diagram.walls:
            sa = pairing(self.fd, w.normal, a)
            sb = pairing(self.fd, w.normal, b)
            if sa == sb:
                continue
            t = sa / (sa - sb)
            if 0 < t < 1 and on_support(self.fd, w, vadd(a, vscale(t, v))):
                out.append(primitive(w.normal))
        return tuple(sorted(out))

    def _retrace(self, eps, allow_degenerate):
        end = vadd(self.endpoint, vscale(eps, self.v))
        s = len(self.plan)
        starts = [None] * s
        combi = []
        pos = end
        m_cur = self.plan[-1]
        for idx in range(s - 1, 0, -1):
            m_prev = self.plan[idx - 1]
            step = vsub(m_cur, m_prev)
            pt = self._bend_site(pos, m_cur, step, allow_degenerate)
            if not (allow_degenerate and is_zero(pt)):
                ok, why = _bend_ok(self.fd, self.diagram, pt, m_prev, m_cur)
                if not ok:
                    raise ValueError(why)
            combi.append((None if is_zero(pt) else primitive(pt), tuple(step),
                          self._crossed(pt, pos)))
            starts[idx] = pt
            pos = pt
            m_cur = m_prev
        if self.is_segment:
            dur0 = self.first_duration
            start = pos if dur0 is None else vadd(pos, vscale(dur0, m_cur))
            pts = [start] + [starts[i] for i in range(1, s)] + [end]
            pieces = []
            total = Fraction(0)
            for i in range(s):
                d = vsub(pts[i], pts[i + 1])
                if is_zero(d):
                    dt = None
                else:
                    m = self.plan[i]
                    j = 0 if m[0] != 0 else 1
                    dt = Fraction(d[j], m[j])
                    total += dt
                pieces.append(Piece(self.plan[i], self.coeffs[i], None, dt))
            return Segment(start, end, pieces, total), (tuple(self.plan), tuple(combi))
        events, t_origin = _ray_events(self.fd, self.diagram, pos, m_cur)
        if t_origin is not None and not allow_degenerate:
            raise ValueError("unbounded piece runs into the origin")
        combi.append(tuple(sorted(primitive(w.normal) for _, _, ws in events for w in ws)))
        pieces = []
        for i in range(s):
            end_pt = starts[i + 1] if i + 1 < s else None
            pieces.append(Piece(self.plan[i], self.coeffs[i], end_pt))
        return BrokenLine(end, pieces), (tuple(self.plan), tuple(combi))

    def _bend_site(self, pos, m_cur, step, allow_degenerate):
        """First point backward along m_cur on a wall line whose direction matches step."""
        best = None
        for w in self.diagram.walls:
            if cross(step, w.func.direction) != 0:
                continue
            s0 = pairing(self.fd, w.normal, pos)
            sd = pairing(self.fd, w.normal, m_cur)
            if sd == 0:
                continue
            t = -s0 / sd
            if t < 0 or (t == 0 and not allow_degenerate):
                continue
            pt = vadd(pos, vscale(t, m_cur))
            if not (on_support(self.fd, w, pt) or (allow_degenerate and is_zero(pt))):
                continue
            if best is None or t < best[0]:
                best = (t, pt)
        if best is None:
            raise ValueError("no wall available for bend step %r from %r" % (step, pos))
        return best[1]
