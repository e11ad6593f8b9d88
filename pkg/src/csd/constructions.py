"""Structure constants and the two constructive directions:

balanced pair of broken lines -> broken line segment (dilate, bend the
support towards the origin, attach rescaled monomials, glue at the common
endpoint), and segment -> balanced pair (split at an interior time, read off
exponents from the affine invariant x + t*m of each piece).
"""

import warnings
from fractions import Fraction
from math import gcd, lcm

from .geometry import (vadd, vsub, vneg, vscale, is_zero, primitive, same_ray,
                       cross, dot, sgn)
from .lattice import pairing, n_circ_primitive, cone_order
from .series import (LaurentPoly, lp_mul, lp_add, lp_scale, lp_truncate,
                     wf_coeff_pow)
from .scattering import on_support
from .brokenline import (BrokenLine, Segment, Piece, enumerate_lines, theta,
                         wall_families, reverse)


class BalancedPair:
    def __init__(self, line1, line2, base):
        self.line1 = line1
        self.line2 = line2
        self.base = tuple(base)

    def is_balanced(self):
        return vadd(self.line1.final, self.line2.final) == self.base

    def __repr__(self):
        return "BalancedPair(base=%r, F1=%r, F2=%r)" % (
            self.base, self.line1.final, self.line2.final)


class ConstructionTrace:
    def __init__(self, rho, C, xt, mt, times, tau):
        self.rho = rho
        self.C = C
        self.xt = xt
        self.mt = mt
        self.times = times
        self.tau = tau


class ReverseTrace:
    def __init__(self, split_index, mt1, mt2, rho1, rho2, a, b, times1, times2,
                 T, tau, delta=None):
        self.split_index = split_index
        self.mt1 = mt1
        self.mt2 = mt2
        self.rho1 = rho1
        self.rho2 = rho2
        self.a = a
        self.b = b
        self.times1 = times1
        self.times2 = times2
        self.T = T
        self.tau = tau
        self.delta = delta


def spiral_directions(radius=6):
    """Deterministic direction probe order: growing rings, counterclockwise."""
    from .geometry import sort_ccw
    out = []
    for r in range(1, radius + 1):
        ring = set()
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                if max(abs(x), abs(y)) == r:
                    ring.add((x, y))
        out.extend(sort_ccw(ring))
    return out


def generic_endpoint_near(fd, diagram, r):
    """A generic point r + eps*v with deterministic v and exact eps."""
    for v in spiral_directions():
        ok = True
        for w in diagram.walls:
            if pairing(fd, w.normal, r) == 0 and pairing(fd, w.normal, v) == 0:
                ok = False
                break
        if ok:
            break
    else:
        raise ValueError("no generic direction near %r" % (r,))
    eps = None
    for w in diagram.walls:
        sa = pairing(fd, w.normal, r)
        sv = pairing(fd, w.normal, v)
        if sa != 0 and sv != 0:
            t = abs(sa / sv)
            if eps is None or t < eps:
                eps = t
    eps = Fraction(1) if eps is None else eps / 2
    return v, eps


def _alpha_at(fd, diagram, p, q, r, z, K):
    total = Fraction(0)
    ones = enumerate_lines(fd, diagram, p, z, K)
    twos = enumerate_lines(fd, diagram, q, z, K)
    for l1 in ones:
        for l2 in twos:
            if vadd(l1.final, l2.final) == tuple(r):
                total += l1.coeff * l2.coeff
    return total


def structure_constant(fd, diagram, p, q, r, K=None):
    """alpha(p, q, r): balanced-pair count at a generic point near r."""
    if K is None:
        K = diagram.order
    p, q, r = tuple(p), tuple(q), tuple(r)
    if is_zero(p):
        return Fraction(1) if r == q else Fraction(0)
    if is_zero(q):
        return Fraction(1) if r == p else Fraction(0)
    v, eps = generic_endpoint_near(fd, diagram, r)
    val = _alpha_at(fd, diagram, p, q, r, vadd(r, vscale(eps, v)), K)
    for _ in range(3):
        eps /= 2
        val2 = _alpha_at(fd, diagram, p, q, r, vadd(r, vscale(eps, v)), K)
        if val2 == val:
            return val
        val = val2
    warnings.warn("structure constant at %r did not stabilize in z" % (r,))
    return val


def _theta_cached(fd, diagram, m, z0, K):
    cache = getattr(diagram, "_theta_cache", None)
    if cache is None:
        cache = diagram._theta_cache = {}
    key = (tuple(m), tuple(z0), K)
    if key not in cache:
        cache[key] = theta(fd, diagram, m, z0, K)
    return cache[key]


def fixed_generic_endpoint(fd, diagram):
    """Endpoint for theta-basis expansions.

    Large coprime coordinates keep the ray through the endpoint clear of
    every exponent the truncated expansions can produce, so each theta
    keeps its leading monomial; wall-genericity is still checked.
    """
    cands = [(9973, 9967), (9973, -9967), (-9967, 9973), (-9973, -9967),
             (9967, 10007), (10007, -9973)]
    for v in cands:
        if all(pairing(fd, w.normal, v) != 0 for w in diagram.walls):
            return v
    raise ValueError("no generic probe point found")


def alpha_table(fd, diagram, p, q, K=None):
    """All r with alpha(p,q,r) != 0, by triangular decomposition in the theta basis."""
    if K is None:
        K = diagram.order
    p, q = tuple(p), tuple(q)
    if is_zero(p):
        return {q: Fraction(1)}
    if is_zero(q):
        return {p: Fraction(1)}
    z0 = fixed_generic_endpoint(fd, diagram)
    base = vadd(p, q)
    tp = _theta_cached(fd, diagram, p, z0, K)
    tq = _theta_cached(fd, diagram, q, z0, K)
    rem = lp_truncate(fd, lp_mul(fd, tp, tq).terms, base, K)
    out = {}
    while rem.terms:
        e = min(rem.terms, key=lambda e: (cone_order(fd, vsub(e, base)), e))
        c = rem.terms[e]
        out[e] = c
        th = _theta_cached(fd, diagram, e, z0, K)
        if th.terms.get(tuple(e)) != 1:
            raise ValueError("theta at %r has no unit leading term; "
                             "probe endpoint is not generic enough" % (e,))
        rebased = lp_truncate(fd, th.terms, base, K)
        rem = lp_add(fd, rem, lp_scale(rebased, -c))
    return out


def ray_segment_intersection(x, lam1, m, lam2, ray):
    """Intersection of the segment [lam1*x, lam2*m] with the ray R_{>=0}*ray."""
    p1 = vscale(Fraction(lam1), x)
    p2 = vscale(Fraction(lam2), m)
    c1 = cross(p1, ray)
    c2 = cross(p2, ray)
    if c1 == c2:
        raise ValueError("segment parallel to or inside the ray line")
    t = Fraction(c1, c1 - c2)
    if not (0 <= t <= 1):
        raise ValueError("segment misses the ray line")
    pt = vadd(p1, vscale(t, vsub(p2, p1)))
    if dot(pt, ray) < 0:
        raise ValueError("segment meets the line on the opposite ray")
    return pt


def _dual_perp(fd, v):
    """Primitive n with <n, v> = 0 (wall normal of the line containing v)."""
    return primitive((fd.d[0] * v[1], -fd.d[1] * v[0]))


def _endpoint_first(gamma):
    """(exponents m_0..m_s endpoint-first, bend points x_1..x_s endpoint-first)."""
    ms = [p.exponent for p in reversed(gamma.pieces)]
    bends = [p.bend_point for p in reversed(gamma.pieces[:-1])]
    return ms, bends


def _bend_normals(fd, ms):
    """n_{0,i} in N° for i = 1..s, from the bend steps m_{i-1} - m_i."""
    out = [None]
    for i in range(1, len(ms)):
        step = vsub(ms[i - 1], ms[i])
        out.append(n_circ_primitive(fd, _dual_perp(fd, step)))
    return out


def segment_support(fd, gamma, a, b):
    """Support polyline of the dilated segment: x~_0 .. x~_s plus m_s/a."""
    ms, _ = _endpoint_first(gamma)
    ns = _bend_normals(fd, ms)
    x0 = gamma.endpoint
    xt = [vscale(Fraction(1, a + b), x0)]
    for i in range(1, len(ms)):
        prev = xt[-1]
        tip = vscale(Fraction(1, a), ms[i - 1])
        sa = pairing(fd, ns[i], prev)
        sb = pairing(fd, ns[i], tip)
        if sa == sb:
            if sa != 0:
                raise ValueError("support chord misses the bending wall")
            xt.append(prev)
            continue
        t = sa / (sa - sb)
        xt.append(vadd(prev, vscale(t, vsub(tip, prev))))
    return xt + [vscale(Fraction(1, a), ms[-1])]


def _rho_list(fd, ms, ns):
    s = len(ms) - 1
    rho = [1] * (s + 1)
    for i in range(s - 1, -1, -1):
        w = pairing(fd, ns[i + 1], ms[i])
        rho[i] = rho[i + 1] * abs(int(w))
    return rho


def bend_coefficient(fd, diagram, point, m_prev, m_next):
    """Coefficient of the allowed bend m_prev -> m_next at the point (1 if trivial)."""
    if tuple(m_prev) == tuple(m_next):
        return Fraction(1)
    step = vsub(m_next, m_prev)
    for n0, m0, f in wall_families(fd, diagram, point):
        if not same_ray(step, m0):
            continue
        i = 0 if m0[0] != 0 else 1
        k = Fraction(step[i], m0[i])
        if k.denominator != 1 or k < 1:
            continue
        pw = abs(int(pairing(fd, n0, m_prev)))
        if pw == 0:
            continue
        c = wf_coeff_pow(f, pw, int(k))
        if c != 0:
            return c
    raise ValueError("bend %r -> %r at %r is not allowed" % (m_prev, m_next, point))


def attach_monomials(fd, support, gamma, a, b, lam):
    """Monomials on the support polyline; returns a Segment with a .trace."""
    ms, _ = _endpoint_first(gamma)
    ns = _bend_normals(fd, ms)
    s = len(ms) - 1
    xt = support[:s + 1]
    rho = _rho_list(fd, ms, ns)
    C = [Fraction(a * (a + b) * rho[0] * lam)]
    mt = [vscale(C[0], vsub(vscale(Fraction(1, a), ms[0]), xt[0]))]
    for i in range(1, s + 1):
        num = pairing(fd, ns[i], mt[i - 1])
        den = pairing(fd, ns[i], ms[i - 1])
        Ci = Fraction(a) * num / den
        C.append(Ci)
        mt.append(vscale(Ci, vsub(vscale(Fraction(1, a), ms[i]), xt[i])))
    times = [1 / C[i] - 1 / C[0] for i in range(s + 1)]
    tau = -1 / C[0]
    trace = ConstructionTrace(rho, C, xt, mt, times, tau)
    # segment runs from m_s/a (time tau, shifted to 0) to x~_0 (time 0)
    pieces = []
    pos = support[-1]
    bounds = times + [tau]
    for i in range(s, -1, -1):
        dt = bounds[i] - bounds[i + 1]
        pieces.append(Piece(mt[i], Fraction(1), None, None if dt == 0 else dt))
    seg = Segment(support[-1], xt[0], pieces, -tau)
    seg.trace = trace
    return seg


def construct_segment(fd, gamma, a, b, lam):
    return attach_monomials(fd, segment_support(fd, gamma, a, b), gamma, a, b, lam)


def _merge_durations(p1, p2):
    d = (p1.duration or Fraction(0)) + (p2.duration or Fraction(0))
    return None if d == 0 else d


def _recoefficient(fd, diagram, seg):
    """Recompute cumulative piece coefficients from actual bend coefficients."""
    pos = seg.start
    coeff = Fraction(1)
    prev = None
    for p in seg.pieces:
        if prev is not None:
            coeff *= bend_coefficient(fd, diagram, pos, prev.exponent, p.exponent)
        p.coeff = coeff
        if p.duration is not None:
            pos = vsub(pos, vscale(p.duration, p.exponent))
        prev = p
    return seg


def glue_balanced(fd, diagram, pair, a, b):
    """Balanced pair -> segment from I(line1)/a to I(line2)/b through base/(a+b)."""
    if not pair.is_balanced():
        raise ValueError("pair is not balanced: %r" % (pair,))
    g1, g2 = pair.line1, pair.line2
    ms1, _ = _endpoint_first(g1)
    ms2, _ = _endpoint_first(g2)
    rho1 = _rho_list(fd, ms1, _bend_normals(fd, ms1))[0]
    rho2 = _rho_list(fd, ms2, _bend_normals(fd, ms2))[0]
    side1 = construct_segment(fd, g1, a, b, rho2)
    side2 = construct_segment(fd, g2, b, a, rho1)
    back = reverse(side2)
    pieces = list(side1.pieces)
    j1, j2 = pieces[-1], back.pieces[0]
    if j1.exponent != j2.exponent:
        raise ValueError("glued exponents disagree at the junction")
    pieces[-1] = Piece(j1.exponent, Fraction(1), None, _merge_durations(j1, j2))
    pieces.extend(back.pieces[1:])
    seg = Segment(side1.start, back.end, pieces, side1.total_time + back.total_time)
    seg.trace1 = side1.trace
    seg.trace2 = side2.trace
    return _recoefficient(fd, diagram, seg)


def _piece_intervals(seg):
    """(t_start, t_end, start_pos) per piece; degenerate pieces have t_start = t_end."""
    out = []
    t = Fraction(0)
    pos = seg.start
    for p in seg.pieces:
        dt = p.duration or Fraction(0)
        out.append((t, t + dt, pos))
        pos = vsub(pos, vscale(dt, p.exponent))
        t += dt
    return out


def _auto_ab(fd, tau, T, pt, qt, rho1, rho2):
    frac = Fraction(tau, T)
    x, y = frac.numerator, frac.denominator
    t = 1
    for c, vec, rho in ((y - x, pt, rho1), (x, qt, rho2)):
        for i in range(fd.rank):
            f = Fraction(c) * Fraction(vec[i]) / (rho * fd.d[i])
            t = lcm(t, f.denominator)
    return (y - x) * t, x * t


def pair_from_segment(fd, diagram, seg, tau, a=None, b=None):
    """Split a segment at time tau into a balanced pair of broken lines."""
    tau = Fraction(tau)
    T = seg.total_time
    if not (0 < tau < T):
        raise ValueError("tau must lie strictly inside (0, T)")
    iv = _piece_intervals(seg)
    # the piece whose half-open interval (t_start, t_end] contains tau;
    # a bend exactly at tau is assigned to the far (end) side
    j = next(i for i, (t0, t1, _) in enumerate(iv) if t0 < tau <= t1)
    delta = None
    events = sorted({t0 for t0, _, _ in iv} | {t1 for _, t1, _ in iv})
    if tau in events:
        gaps = [abs(tau - e) for e in events if e != tau]
        delta = min(gaps) / 2 if gaps else None
    rt = vsub(iv[j][2], vscale(tau - iv[j][0], seg.pieces[j].exponent))
    pt, qt = seg.start, seg.end

    def invariant1(i):
        t0, _, pos = iv[i]
        m = seg.pieces[i].exponent
        return vadd(pos, vscale(t0, m))

    def invariant2(i):
        t0, _, pos = iv[i]
        m = seg.pieces[i].exponent
        return vsub(pos, vscale(T - t0, m))

    mt1 = [seg.pieces[i].exponent for i in range(j, -1, -1)]
    mt2 = [vneg(seg.pieces[i].exponent) for i in range(j, len(seg.pieces))]
    ns1 = _bend_normals_from(fd, mt1)
    ns2 = _bend_normals_from(fd, mt2)
    rho1 = _rho_prefix(fd, mt1, ns1)
    rho2 = _rho_prefix(fd, mt2, ns2)
    if a is None or b is None:
        a, b = _auto_ab(fd, tau, T, pt, qt, rho1[0], rho2[0])
    m1 = [vscale(a, invariant1(i)) for i in range(j, -1, -1)]
    m2 = [vscale(b, invariant2(i)) for i in range(j, len(seg.pieces))]
    base = vscale(a + b, rt)
    times1 = [tau - iv[i][1] for i in range(j, -1, -1)]
    times2 = [iv[i][0] - tau for i in range(j, len(seg.pieces))]
    line1 = _trace_pair_line(fd, base, m1, ns1)
    line2 = _trace_pair_line(fd, base, m2, ns2)
    trace = ReverseTrace(j, m1, m2, rho1, rho2, a, b, times1, times2, T, tau, delta)
    return BalancedPair(line1, line2, base), trace


def _bend_normals_from(fd, mt):
    """Normals n_{0,i} for the exponent list m~_0..m~_s of one side."""
    out = [None]
    for i in range(1, len(mt)):
        step = vsub(mt[i - 1], mt[i])
        if is_zero(step):
            out.append(None)
        else:
            out.append(n_circ_primitive(fd, _dual_perp(fd, step)))
    return out


def _rho_prefix(fd, mt, ns):
    """rho~_i = product over k = 1..s-i of |<n_{0,k}, m~_k>| (positive)."""
    s = len(mt) - 1
    rho = [1] * (s + 1)
    for i in range(s - 1, -1, -1):
        k = s - i
        w = 1 if ns[k] is None else abs(int(pairing(fd, ns[k], mt[k])))
        rho[i] = rho[i + 1] * w
    return rho


def _trace_pair_line(fd, base, m_list, ns):
    """Broken line with endpoint base and endpoint-first exponents m_0..m_s.

    Bend i sits on the wall line with normal ns[i]; positions found by
    following each piece backward from the endpoint.
    """
    pos = base
    bend_pts = []
    for i in range(1, len(m_list)):
        n = ns[i]
        if n is None:
            bend_pts.append(tuple(pos))
            continue
        s0 = pairing(fd, n, pos)
        sd = pairing(fd, n, m_list[i - 1])
        if sd == 0:
            raise ValueError("piece runs parallel to its bending wall")
        u = -s0 / sd
        pos = vadd(pos, vscale(u, m_list[i - 1]))
        bend_pts.append(tuple(pos))
    pieces = []
    s = len(m_list) - 1
    for k in range(s, -1, -1):
        end_pt = bend_pts[k - 1] if k >= 1 else None
        pieces.append(Piece(m_list[k], Fraction(1), end_pt))
    return BrokenLine(base, pieces)
