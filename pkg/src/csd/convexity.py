"""Broken-line convexity, hulls and positivity for rank-2 diagrams.

Convexity is decided in charts: a region is broken-line convex exactly when
its image under every seed-chart straightening map is ordinarily convex.
The straightening maps are integral piecewise-linear bijections, stored as
counterclockwise sector lists with one unimodular matrix per sector.
"""

import os
import random
from fractions import Fraction

from .geometry import (vadd, vsub, vneg, vscale, is_zero, primitive, cross, dot,
                       ccw_key, ccw_between, sort_ccw, rot90, sgn, convex_hull,
                       cycle_is_convex, point_in_hull, lattice_points_in_hull)
from .lattice import pairing, p1_star, skew_form, unit
from .brokenline import Segment, Piece, validate_segment
from .constructions import alpha_table, structure_constant, pair_from_segment

I2 = ((1, 0), (0, 1))


def mat_vec(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


def mat_det(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def mat_inv(M):
    d = mat_det(M)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    return ((M[1][1] // d, -M[0][1] // d), (-M[1][0] // d, M[0][0] // d))


class PLMap:
    """Piecewise-linear map: ccw list of (sector start direction, matrix).

    Sector i acts on directions in [start_i, start_{i+1}) counterclockwise;
    a single-sector map is linear.
    """

    def __init__(self, sectors):
        self.sectors = self._canonical(list(sectors))

    @staticmethod
    def _canonical(sectors):
        sectors = sorted(((tuple(primitive(s)), tuple(map(tuple, M)))
                          for s, M in sectors), key=lambda sm: ccw_key(sm[0]))
        out = []
        for s, M in sectors:
            if out and out[-1][1] == M:
                continue
            out.append((s, M))
        while len(out) > 1 and out[0][1] == out[-1][1]:
            out.pop(0)
        if len(out) == 1:
            out[0] = ((1, 0), out[0][1])
        return tuple(out)

    @classmethod
    def identity(cls):
        return cls([((1, 0), I2)])

    def key(self):
        return self.sectors

    def __eq__(self, other):
        return isinstance(other, PLMap) and self.sectors == other.sectors

    def __hash__(self):
        return hash(self.sectors)

    def matrix_at(self, d):
        secs = self.sectors
        n = len(secs)
        if n == 1:
            return secs[0][1]
        for i in range(n):
            a = secs[i][0]
            b = secs[(i + 1) % n][0]
            if ccw_between(a, d, b):
                return secs[i][1]
        return secs[-1][1]

    def apply(self, v):
        if is_zero(v):
            return tuple(v)
        return mat_vec(self.matrix_at(primitive(v)), v)

    def boundaries(self):
        if len(self.sectors) == 1:
            return []
        return [s for s, _ in self.sectors]

    def compose(self, other):
        """self after other."""
        dirs = set()
        for s in other.boundaries():
            dirs.add(s)
            dirs.add(vneg(s))
        for b in self.boundaries():
            for s, M in other.sectors:
                d = primitive(mat_vec(mat_inv(M), b))
                for cand in (d, vneg(d)):
                    dirs.add(cand)
        if not dirs:
            return PLMap([((1, 0), mat_mul(self.sectors[0][1], other.sectors[0][1]))])
        dirs = sort_ccw(dirs)
        sectors = []
        n = len(dirs)
        for i in range(n):
            u, w = dirs[i], dirs[(i + 1) % n]
            rep = rot90(u) if cross(u, w) == 0 else vadd(u, w)
            Mo = other.matrix_at(primitive(rep))
            Ms = self.matrix_at(primitive(mat_vec(Mo, rep)))
            sectors.append((u, mat_mul(Ms, Mo)))
        return PLMap(sectors)

    def inverse(self):
        out = []
        for s, M in self.sectors:
            out.append((primitive(mat_vec(M, s)), mat_inv(M)))
        return PLMap(out)

    def normalized(self):
        """Representative modulo linear maps applied after this one.

        Convexity of the image is unchanged by a linear change of target
        coordinates, so charts are compared in this normal form.
        """
        inv = mat_inv(self.matrix_at((1, 0)))
        return PLMap([(s, mat_mul(inv, M)) for s, M in self.sectors])


def shear_map(fd, n, dk):
    """Straightening of the incoming wall with normal n: identity where the
    pairing with n is nonpositive, shear along the wall on the other side."""
    from .scattering import line_dir
    g = p1_star(fd, n)
    M = [[Fraction(1 if i == j else 0) for j in range(2)] for i in range(2)]
    for i in range(2):
        for j in range(2):
            M[i][j] += Fraction(dk * n[j], fd.d[j]) * g[i]
    if any(x.denominator != 1 for r in M for x in r):
        raise ValueError("straightening matrix is not integral for normal %r" % (n,))
    M = tuple(tuple(int(x) for x in r) for r in M)
    d = line_dir(fd, n)
    if pairing(fd, n, rot90(d)) > 0:
        return PLMap([(d, M), (vneg(d), I2)])
    return PLMap([(vneg(d), M), (d, I2)])


def _mutate_basis(fd, basis, k):
    eps = [[skew_form(fd, basis[i], basis[j]) * fd.d[j] for j in range(fd.rank)]
           for i in range(fd.rank)]
    out = []
    for i, e in enumerate(basis):
        if i == k:
            out.append(vneg(e))
        else:
            c = max(int(eps[i][k]), 0)
            out.append(vadd(e, vscale(c, basis[k])))
    return tuple(out)


def depth_bound():
    return int(os.environ.get("CSD_DEPTH_BOUND", "16"))


def chart_maps(fd, diagram=None, bound=None):
    """All seed-chart straightening maps reachable by mutation; (maps, closed).

    In rank 2 every seed lies on one of the two alternating mutation walks
    from the initial seed.  Maps are collected modulo linear target
    coordinates, which convexity cannot see.
    """
    if bound is None:
        bound = depth_bound()
    ks = sorted(fd.unfrozen)
    phi0 = PLMap.identity().normalized()
    seen = {phi0.key()}
    maps = [phi0]
    closed = True
    for first in range(2):
        basis = tuple(unit(fd.rank, i) for i in range(fd.rank))
        phi = PLMap.identity()
        walk_closed = False
        for step in range(bound):
            k = ks[(first + step) % 2]
            phi = shear_map(fd, basis[k], fd.d[k]).compose(phi)
            basis = _mutate_basis(fd, basis, k)
            norm = phi.normalized()
            if norm.key() in seen:
                if norm.key() == phi0.key():
                    walk_closed = True
                    break
                continue
            seen.add(norm.key())
            maps.append(norm)
        closed = closed and walk_closed
    return maps, closed


def initial_shear_charts(fd):
    """Identity plus the two initial-wall straightenings.

    These are genuine charts, so non-convexity in any of them disproves
    broken-line convexity.  The converse fails: a segment may bend at both
    initial walls, and straightening that needs a chart deeper in the
    mutation walk, even for origin-containing regions.
    """
    maps = [PLMap.identity().normalized()]
    for k in fd.unfrozen:
        t = shear_map(fd, unit(fd.rank, k), fd.d[k])
        maps.append(t.normalized())
    uniq = []
    seen = set()
    for m in maps:
        if m.key() not in seen:
            seen.add(m.key())
            uniq.append(m)
    return uniq


class CheckReport:
    def __init__(self, verdict, witnesses=None, degree_checked=None,
                 order_checked=None, closed=True):
        self.verdict = verdict  # True / False / None (unknown)
        self.witnesses = witnesses or []
        self.degree_checked = degree_checked
        self.order_checked = order_checked
        self.closed = closed

    def __repr__(self):
        return "CheckReport(verdict=%r, witnesses=%r)" % (self.verdict, self.witnesses)


def _edge_fold_points(a, b, folds):
    """Points where segment a->b crosses fold rays, ordered along the edge."""
    hits = []
    v = vsub(b, a)
    for s in folds:
        den = cross(v, s)
        if den == 0:
            continue
        t = Fraction(cross(s, a), den)
        if not (0 < t < 1):
            continue
        pt = vadd(a, vscale(t, v))
        if dot(pt, s) >= 0:
            hits.append((t, pt))
    hits.sort()
    out = []
    for t, pt in hits:
        if not out or out[-1] != pt:
            out.append(pt)
    return out


def refine_cycle(cycle, folds):
    out = []
    n = len(cycle)
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        out.append(tuple(a))
        out.extend(tuple(p) for p in _edge_fold_points(a, b, folds))
    return out


def map_cycle(phi, cycle):
    refined = refine_cycle(cycle, phi.boundaries())
    return [phi.apply(p) for p in refined], refined


def _polyline_from_chord(phi_inv, u, w):
    """Pull a straight chart chord back through phi_inv as a base polyline."""
    pts = [u] + _edge_fold_points(u, w, phi_inv.boundaries()) + [w]
    return [phi_inv.apply(p) for p in pts]


def _segment_from_polyline(poly):
    pieces = []
    total = Fraction(0)
    for a, b in zip(poly, poly[1:]):
        d = vsub(a, b)
        if is_zero(d):
            continue
        m = primitive(d)
        i = 0 if m[0] != 0 else 1
        dt = Fraction(d[i], m[i])
        total += dt
        pieces.append(Piece(m, Fraction(1), None, dt))
    if not pieces:
        return None
    return Segment(poly[0], poly[-1], pieces, total)


def _region_contains(cycle, pt):
    return point_in_hull(pt, convex_hull(cycle))


def _convexity_witness(fd, diagram, cycle, phi):
    """A validated broken-line segment with endpoints in the region leaving it."""
    image, refined = map_cycle(phi, cycle)
    phi_inv = phi.inverse()
    n = len(image)
    for i in range(n):
        for j in range(i + 1, n):
            if image[i] == image[j]:
                continue
            poly = _polyline_from_chord(phi_inv, image[i], image[j])
            probes = []
            for a, b in zip(poly, poly[1:]):
                probes.append(vscale(Fraction(1, 2), vadd(a, b)))
            probes.extend(poly[1:-1])
            if all(_region_contains(cycle, p) for p in probes):
                continue
            seg = _segment_from_polyline(poly)
            if seg is None:
                continue
            ok, _ = validate_segment(fd, diagram, seg)
            if ok:
                return seg
            ok2, _ = validate_segment(fd, diagram, _reversed_copy(seg))
            if ok2:
                return _reversed_copy(seg)
    return None


def _reversed_copy(seg):
    from .brokenline import reverse
    return reverse(seg)


def is_blc_2d(fd, diagram, cycle, K=None, charts=None):
    """Chart-convexity check; cycle is a ccw vertex list (1 or 2 points allowed).

    Every collected map is a genuine seed chart, so a non-convex image is a
    sound failure even when the chart set never closes; certifying convexity
    needs the closed set, otherwise the verdict is None (unknown).
    """
    if K is None:
        K = diagram.order
    cycle = [tuple(p) for p in cycle]
    closed = True
    if charts is None:
        charts, closed = chart_maps(fd, diagram)
    for phi in charts:
        image, _ = map_cycle(phi, cycle)
        if not cycle_is_convex(image):
            wit = _convexity_witness(fd, diagram, cycle, phi)
            return CheckReport(False, [wit] if wit is not None else [],
                               order_checked=K, closed=closed)
    if not closed:
        return CheckReport(None, order_checked=K, closed=False)
    return CheckReport(True, order_checked=K)


def blc_hull_2d(fd, diagram, pts, max_rounds=64):
    """Smallest chart-convex region containing the points, as a base-chart cycle."""
    charts, closed = chart_maps(fd, diagram)
    V = {tuple(p) for p in pts}
    flagged = not closed
    prev = None
    for _ in range(max_rounds):
        hull = convex_hull(V)
        if hull == prev:
            break
        prev = hull
        for phi in charts:
            image, _ = map_cycle(phi, hull)
            ih = convex_hull(image)
            phi_inv = phi.inverse()
            back = []
            n = len(ih)
            for i in range(n):
                a = ih[i]
                back.append(phi_inv.apply(a))
                if n > 1:
                    b = ih[(i + 1) % n]
                    back.extend(phi_inv.apply(p)
                                for p in _edge_fold_points(a, b, phi_inv.boundaries()))
            V.update(tuple(p) for p in back)
    else:
        flagged = True
    hull = convex_hull(V)
    report_cycle = _prune_cycle(hull)
    return report_cycle, flagged


def _prune_cycle(hull):
    return [tuple(p) for p in hull]


def check_positive(fd, diagram, cycle, max_degree, K=None):
    """Bounded positivity scan using structure constants; first violation wins.

    A pair (p, q) can only produce a violation if some exponent of the theta
    product escapes the dilated region, since structure constants are
    nonnegative and each contributing exponent shows up in the product.  Pairs
    whose whole truncation triangle p+q+{order <= K} sits inside are skipped
    without any series work.
    """
    if K is None:
        K = diagram.order
    cycle = [tuple(p) for p in cycle]
    hull = convex_hull(cycle)
    witnesses = []
    from .series import lp_mul
    from .constructions import fixed_generic_endpoint, _theta_cached
    z0 = fixed_generic_endpoint(fd, diagram)
    for total in range(2, max_degree + 1):
        for a in range(1, total):
            b = total - a
            if a > b:
                continue
            pa = sorted(lattice_points_in_hull(_dilate(hull, a)), reverse=True)
            pb = sorted(lattice_points_in_hull(_dilate(hull, b)), reverse=True)
            target = _dilate(hull, a + b)
            for p in pa:
                for q in pb:
                    if is_zero(p) or is_zero(q):
                        r = tuple(q) if is_zero(p) else tuple(p)
                        if not point_in_hull(r, target):
                            witnesses.append({"p": p, "q": q, "r": r, "a": a, "b": b,
                                              "alpha": Fraction(1)})
                            return CheckReport(False, witnesses, degree_checked=max_degree,
                                               order_checked=K)
                        continue
                    corners = [vadd(p, q)]
                    corners += [vadd(vadd(p, q), vscale(K, g)) for g in fd.monoid_gens]
                    if all(point_in_hull(c, target) for c in corners):
                        continue
                    prod = lp_mul(fd, _theta_cached(fd, diagram, p, z0, K),
                                  _theta_cached(fd, diagram, q, z0, K))
                    if all(point_in_hull(e, target) for e in prod.terms):
                        continue
                    table = _alpha_cached(fd, diagram, p, q, K)
                    for r in sorted(table):
                        if table[r] != 0 and not point_in_hull(r, target):
                            witnesses.append({"p": p, "q": q, "r": r, "a": a, "b": b,
                                              "alpha": table[r]})
                            return CheckReport(False, witnesses, degree_checked=max_degree,
                                               order_checked=K)
    return CheckReport(True, degree_checked=max_degree, order_checked=K)


def _dilate(hull, k):
    return [vscale(k, p) for p in hull]


def _alpha_cached(fd, diagram, p, q, K):
    cache = getattr(diagram, "_alpha_cache", None)
    if cache is None:
        cache = diagram._alpha_cache = {}
    key = (tuple(sorted((tuple(p), tuple(q)))), K)
    if key not in cache:
        cache[key] = alpha_table(fd, diagram, p, q, K)
    return cache[key]


def _random_polygon(rng):
    n = rng.randint(2, 5)
    pts = set()
    while len(pts) < n:
        x = Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2)))
        y = Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2)))
        pts.add((x, y))
    if rng.random() < 0.5:
        pts.add((Fraction(0), Fraction(0)))
    return convex_hull(pts)


def _certify_failure(fd, diagram, cycle, seg, K, max_ab=24):
    """Turn a convexity witness segment into an explicit positivity violation."""
    iv_t = Fraction(0)
    tau = None
    pos = seg.start
    for p in seg.pieces:
        dt = p.duration or Fraction(0)
        mid = vsub(pos, vscale(dt / 2, p.exponent))
        if dt > 0 and not _region_contains(cycle, mid):
            tau = iv_t + dt / 2
            break
        pos = vsub(pos, vscale(dt, p.exponent))
        iv_t += dt
    if tau is None:
        return None
    try:
        pair, tr = pair_from_segment(fd, diagram, seg, tau)
    except (ValueError, ZeroDivisionError, ArithmeticError):
        return None
    if tr.a + tr.b > max_ab:
        return None
    p = tuple(pair.line1.initial)
    q = tuple(pair.line2.initial)
    r = tuple(pair.base)
    alpha = structure_constant(fd, diagram, p, q, r, K)
    if alpha == 0:
        return None
    return {"p": p, "q": q, "r": r, "a": tr.a, "b": tr.b, "alpha": alpha}


def main_theorem_harness(fd, diagram, trials, max_degree=3, K=None, perturb_seed=0):
    """Random polygons: positivity scan verdict vs chart-convexity verdict."""
    if K is None:
        K = diagram.order
    rng = random.Random(perturb_seed)
    report = {"trials": trials, "agree": 0, "skipped_unknown": 0,
              "certified_beyond_bound": 0, "disagreements": []}
    for _ in range(trials):
        cycle = _random_polygon(rng)
        blc = is_blc_2d(fd, diagram, cycle, K)
        if blc.verdict is None:
            report["skipped_unknown"] += 1
            continue
        pos = check_positive(fd, diagram, cycle, max_degree, K)
        if blc.verdict == pos.verdict:
            report["agree"] += 1
            continue
        if blc.verdict is False and pos.verdict is True and blc.witnesses:
            wit = _certify_failure(fd, diagram, cycle, blc.witnesses[0], K)
            if wit is not None:
                report["certified_beyond_bound"] += 1
                continue
        report["disagreements"].append({
            "polygon": cycle, "is_blc": blc.verdict, "positive": pos.verdict,
            "blc_witnesses": blc.witnesses, "pos_witnesses": pos.witnesses})
    return report
