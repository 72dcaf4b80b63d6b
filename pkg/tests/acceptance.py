"""Acceptance criteria 1-8, shared by the pytest module and direct runs.

Each ``criterion_k`` returns ``(ok, detail)``; ``run`` times it against its
limit and formats the one-line verdict.
"""
import math
import random
import time
from itertools import combinations, product as cart

from escalier.algebra import grlex, lex, polys
from escalier.groebner import buchberger, is_groebner, normal_form
from escalier.planes import generic_fiber, ideal_of_variety, standard_set_of_variety
from escalier.staircase import InfinitePlaneCount, Plane, StandardSet, coordinate_plane, plane_set
from escalier.verify import CHECKS, InstanceGenerator, check_finiteness, fuzz, run_check
from fixtures import (
    FIXTURES, MIXED_FIVE_BASIS, PARALLEL_PAIR_BASIS, SKEW_PAIR_BASIS, STACKED_TRIPLE_BASIS,
)

LIMITS = {1: 1.0, 2: 1.0, 3: 1.0, 4: 5.0, 5: 300.0, 6: 60.0, 7: 30.0, 8: 60.0}
RESULTS = {}


def same_ideal_basis(G, texts, order):
    """A reference generator list is a Gröbner basis of G's ideal with G's leading terms."""
    pub = polys(texts, n=G.n)
    return (is_groebner(pub, order)
            and all(not normal_form(g, G) for g in pub)
            and buchberger(pub, order) == G
            and sorted(g.leading_exponent(order) for g in pub) == sorted(G.leads))


def axis(n, i):
    return coordinate_plane(n, [i])


def criterion_1():
    V, o = FIXTURES["skew_pair"]
    G = ideal_of_variety(V, o)
    D = StandardSet(3, G.leads)
    ok = (o.name == "grlex" and same_ideal_basis(G, SKEW_PAIR_BASIS, o)
          and set(D.corners) == {(1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)}
          and D == axis(3, 0) | axis(3, 1) | StandardSet.from_points(3, [(0, 0, 1)]))
    return ok, "4 reference generators agree after inter-reduction; corners exact"


def criterion_2():
    V, o = FIXTURES["stacked_triple"]
    G = ideal_of_variety(V, o)
    D = StandardSet(3, G.leads)
    expected = (axis(3, 1) | plane_set(3, Plane((1,), (1, 0, 0))) | axis(3, 2)
                | StandardSet.from_points(3, [(2, 0, 0)]))
    ok = (G.generators[0] == polys(["X^3 - 6X^2 + 11X - 6"])[0]
          and same_ideal_basis(G, STACKED_TRIPLE_BASIS, o)
          and D == expected and run_check("theorem_stack", V, o).passed)
    return ok, "first generator X^3-6X^2+11X-6; stacked staircase exact"


def criterion_3():
    V, o = FIXTURES["parallel_pair"]
    G = ideal_of_variety(V, o)
    F = generic_fiber(V, o)
    ok = (set(G) == set(polys(PARALLEL_PAIR_BASIS))
          and F.delta == StandardSet.from_points(2, [(0, 0), (1, 0)])
          and set(F.exceptional) <= {0}
          and run_check("theorem_inherit", V, o).passed)
    return ok, f"basis verbatim; delta {{(0,0),(1,0)}}; exceptional {sorted(map(int, F.exceptional))}"


def criterion_4():
    V, o = FIXTURES["mixed_five"]
    G = ideal_of_variety(V, o)
    F = generic_fiber(V, o)
    e1, e2 = axis(2, 0), axis(2, 1)
    pts = lambda *p: StandardSet.from_points(2, p)
    fibers_ok = (F.delta == pts((0, 0), (0, 1))
                 and sorted(F.exceptional) == [1, 2, 3]
                 and F.exceptional[1] == e1 | pts((0, 1), (0, 2))
                 and F.exceptional[2] == e1 | pts((0, 1)))
    # The reference third fiber lists (2,0); (Y-3)(Y-4) vanishes on that slice,
    # so Y^2 is a leading term and only (1,0),(1,1) can join the Z axis.
    third = F.exceptional.get(3)
    reference_third = e2 | pts((1, 0), (2, 0))
    corrected_third = e2 | pts((1, 0), (1, 1))
    slice_basis = ideal_of_variety(V.slice(3), o.restrict_tail())
    y_squared_lead = (2, 0) in slice_basis.leads
    counts = run_check("theorem_number", V, o)
    ok = (fibers_ok and third == corrected_third and third != reference_third and y_squared_lead
          and same_ideal_basis(G, MIXED_FIVE_BASIS, o)
          and counts.passed and counts.details["counts"] == {"[0]": 2, "[1]": 2, "[2]": 1}
          and run_check("corollary_general", V, o).passed)
    return ok, ("delta, D(A_1), D(A_2), counts (2,2,1) verbatim; deviation: D(A_3) checked as "
                "N e_Z + {(1,0),(1,1)}, the reference (2,0) is refuted by lead Y^2")


STRUCTURE_CHECKS = ["theorem_number", "lemma_decompose", "theorem_stack", "corollary_recursive",
                "hyperplane_formula", "theorem_inherit", "corollary_general", "inequality_strong",
                "prop_iff_reduction"]


def criterion_5(count=200, seed=0):
    reports = fuzz(InstanceGenerator(seed), STRUCTURE_CHECKS, count)
    failed = [r for r in reports if not r.passed]
    tally = {}
    for r in reports:
        tally[r.name] = tally.get(r.name, 0) + 1
    ok = not failed and all(tally.get(c) == count for c in STRUCTURE_CHECKS)
    return ok, f"{len(reports)} instances over {len(STRUCTURE_CHECKS)} checks, {len(failed)} failures"


def random_bar_staircase(rng, n, top=5, finite=False):
    corners = [tuple(rng.randint(0, top) for _ in range(n)) for _ in range(rng.randint(0, 4))]
    axes = range(n) if finite else [0]
    for i in axes:
        corners.append(tuple(rng.randint(1 if finite else 0, top) if j == i else 0 for j in range(n)))
    return StandardSet(n, corners)


def members(D, box):
    return {a for a in cart(*(range(b + 1) for b in box))
            if not any(all(g[i] <= a[i] for i in range(D.n)) for g in D.corners)}


def brute_fiber(D, alpha, reach):
    return sum(1 for t in range(reach) if not any(
        all(g[i] <= x for i, x in enumerate((t,) + alpha)) for g in D.corners))


def brute_d_planes(D, J):
    """Bases of planes along J, or None when some plane sits past the corner box."""
    off = [i for i in range(D.n) if i not in J]
    reach = [max((g[i] for g in D.corners), default=0) + 1 for i in range(D.n)]
    found = []
    for vals in cart(*(range(reach[i] + 1) for i in off)):
        base = [0] * D.n
        for i, v in zip(off, vals):
            base[i] = v
        # a plane along J is inside D iff no corner is bounded by base on the off coordinates
        if not any(all(g[i] <= base[i] for i in off) for g in D.corners):
            found.append(tuple(base))
    if any(b[i] >= reach[i] for b in found for i in off):
        return None
    return sorted(found)


def staircase_properties(a, b, c, fa, fb):
    n = a.n
    if not (a + b == b + a and (a + b) + c == a + (b + c) and a + StandardSet.empty(n) == a):
        return "add laws"
    if (fa + fb).size() != fa.size() + fb.size():
        return "cardinality"
    s = a + b
    reach = max(x for D in (a, b, s) for x in D.bounds) + 2
    for alpha in cart(*(range(reach) for _ in range(n - 1))):
        fa_, fb_ = brute_fiber(a, alpha, 4 * reach), brute_fiber(b, alpha, 4 * reach)
        if a.fiber_count(alpha) != fa_ or s.fiber_count(alpha) != fa_ + fb_:
            return "fiber_count"
    for d in range(n + 1):
        for J in combinations(range(n), d):
            expect = brute_d_planes(a, J)
            try:
                got = sorted(P.base for P in a.d_planes(J))
            except InfinitePlaneCount:
                got = None
            if got != expect:
                return f"d_planes {J}"
    box = tuple(max(a.bounds[i], b.bounds[i]) + 1 for i in range(n))
    ma, mb = members(a, box), members(b, box)
    if members(a | b, box) != ma | mb or members(a & b, box) != ma & mb:
        return "lattice membership"
    if not (a | (a & b) == a and a & (a | b) == a and (a | b) | c == a | (b | c)
            and (a & b) & c == a & (b & c) and a | b == b | a):
        return "lattice laws"
    return None


def criterion_6(count=500, seed=0):
    rng = random.Random(f"{seed}:staircase-algebra")
    for k in range(count):
        n = rng.randint(1, 4)
        a, b, c = (random_bar_staircase(rng, n) for _ in range(3))
        fa, fb = (random_bar_staircase(rng, n, top=3, finite=True) for _ in range(2))
        problem = staircase_properties(a, b, c, fa, fb)
        if problem:
            return False, f"instance {k}: {problem} fails for {a!r}, {b!r}"
    return True, f"{count} staircase triples in n <= 4, corners <= 5"


def criterion_7(count=100, seed=0):
    gen = InstanceGenerator(seed)
    sizes = []
    for i in range(count):
        pts, o = gen.point_set(i)
        r = check_finiteness(pts, o)
        if not r.passed:
            return False, f"point set {i}: {r.to_doc()}"
        sizes.append(len(pts))
    return True, f"{count} point sets, sizes {min(sizes)}..{max(sizes)}"


def growth_times_factorial(D, d):
    """d-th difference of the Hilbert function, read off well past the corners."""
    t0 = sum(D.bounds) + d + 2
    diffs = []
    for t in (t0, t0 + 1):
        vals = [D.hilbert_function(s) for s in range(t - d, t + 1)]
        for _ in range(d):
            vals = [y - x for x, y in zip(vals, vals[1:])]
        diffs.append(vals[0])
    return diffs[0] if diffs[0] == diffs[1] else None


def hilbert_agrees(V, o):
    D = standard_set_of_variety(V, o)
    d = V.dim
    total = sum(len(D.d_planes(J)) for J in combinations(range(V.n), d))
    return growth_times_factorial(D, d) == total == len(V)


def criterion_8(count=50, seed=0):
    for name, (V, o) in FIXTURES.items():
        if not hilbert_agrees(V, o):
            return False, f"fixture {name}"
    gen = InstanceGenerator(seed)
    for i in range(count):
        V, o, _ = gen.instance("hilbert_slope", i)
        if not hilbert_agrees(V, o):
            return False, f"fuzz instance {i}"
    return True, f"{len(FIXTURES)} fixtures and {count} random varieties"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def run(k):
    start = time.perf_counter()
    ok, detail = CRITERIA[k]()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < LIMITS[k]
    line = (f"criterion {k}: {'PASS' if passed else 'FAIL'} "
            f"({elapsed:.2f}s, limit {LIMITS[k]:g}s) {detail}")
    RESULTS[k] = line
    return passed, line


if __name__ == "__main__":
    for k in CRITERIA:
        print(run(k)[1])
