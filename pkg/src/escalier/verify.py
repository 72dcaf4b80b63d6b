"""Mechanical checks of the structure results on concrete and random varieties.

Every check computes the standard set of a variety with Buchberger's
algorithm and compares it with what the combinatorial description predicts.
A check returns a CheckReport; violated preconditions raise
PreconditionError instead, since there is nothing to check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence

from gmpy2 import mpq

from .algebra import Q, TermOrder, add_exp, grlex, is_product_order, lex, product, unit
from .planes import (
    AffinePlane,
    Variety,
    generic_fiber,
    homogenize_variety,
    projection_support,
    slice_variety,
    standard_set_of_variety,
)
from .staircase import (
    InfinitePlaneCount,
    StandardSet,
    add_all,
    coordinate_plane,
    hyperplane_staircase,
)


class PreconditionError(ValueError):
    """The instance does not satisfy the hypotheses of the check."""


@dataclass
class CheckReport:
    name: str
    instance: Any
    verdict: str
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_doc(self) -> dict:
        return {"check": self.name, "instance": self.instance, "verdict": self.verdict,
                "witness": _plain(self.witness), "details": _plain(self.details)}


def _plain(x):
    """JSON-friendly copy: rationals to strings, tuples to lists."""
    if isinstance(x, type(mpq())):
        return str(x)
    if isinstance(x, StandardSet):
        return {"n": x.n, "corners": [list(g) for g in x.corners]}
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _report(name, instance, ok, witness=None, **details) -> CheckReport:
    return CheckReport(name, instance, "pass" if ok else "fail", None if ok else witness, details)


def _describe(V: Variety, order: TermOrder):
    # local import keeps documents (which imports planes) out of the module cycle
    from .documents import variety_to_doc
    return variety_to_doc(V, order)


def _same_dimension(V: Variety) -> int:
    if not V.components:
        raise PreconditionError("the variety has no components")
    ds = V.dims
    if len(ds) != 1:
        raise PreconditionError(f"components have different dimensions {ds}")
    return ds[0]


def _need_product(order: TermOrder, levels: int = 1):
    o = order
    for _ in range(levels):
        if not is_product_order(o):
            raise PreconditionError(f"{order.name} is not a product order at every required level")
        o = o.restrict_tail() if o.n > 1 else o


# -- finiteness and counting -------------------------------------------------

def check_finiteness(points: Sequence[Sequence], order: Optional[TermOrder] = None) -> CheckReport:
    pts = [tuple(Q(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise PreconditionError("points are not distinct")
    V = Variety.from_points(pts)
    order = order or lex(V.n)
    D = standard_set_of_variety(V, order)
    size = D.size()
    return _report("finiteness", {"points": [[str(x) for x in p] for p in pts], "order": order.name},
                   size == len(pts), {"standard_set": D, "size": size}, size=size)


def check_theorem_number(V: Variety, order: TermOrder) -> CheckReport:
    d = _same_dimension(V)
    D = standard_set_of_variety(V, order)
    inst = _describe(V, order)
    m = V.free_sets()
    counts = {}
    for J in combinations(range(V.n), d):
        try:
            counts[J] = len(D.d_planes(J))
        except InfinitePlaneCount as e:
            return _report("theorem_number", inst, False, {"J": list(J), "infinite": list(e.witness)})
        if counts[J] != m.get(J, 0):
            return _report("theorem_number", inst, False,
                           {"J": list(J), "planes": counts[J], "components": m.get(J, 0)})
    if d < V.n and any(D.has_plane(K) for K in combinations(range(V.n), d + 1)):
        return _report("theorem_number", inst, False, {"larger_plane": True, "standard_set": D})
    return _report("theorem_number", inst, True, counts={str(list(J)): c for J, c in counts.items() if c})


def check_lemma_decompose(V: Variety, order: TermOrder) -> CheckReport:
    _same_dimension(V)
    D = standard_set_of_variety(V, order)
    whole = set(D.top_planes())
    parts = set()
    for J, VJ in V.by_free_set().items():
        parts |= set(standard_set_of_variety(VJ, order).top_planes())
    ok = whole == parts
    return _report("lemma_decompose", _describe(V, order), ok,
                   {"only_in_whole": sorted(whole - parts), "only_in_parts": sorted(parts - whole)})


def check_hilbert_slope(V: Variety, order: TermOrder) -> CheckReport:
    """The d-th difference of the Hilbert function equals the number of d-planes."""
    d = _same_dimension(V)
    D = standard_set_of_variety(V, order)
    dd, c = D.hilbert_growth()
    planes = len(D.top_planes())
    ok = dd == d and c == planes == len(V)
    return _report("hilbert_slope", _describe(V, order), ok,
                   {"growth_degree": dd, "difference": c, "planes": planes, "components": len(V)},
                   difference=c)


# -- stacking along x0 ---------------------------------------------------------

def _pinned(V: Variety):
    if any(0 in P.J for P in V.components):
        raise PreconditionError("some component has x0 among its free variables")


def stacked(V: Variety, order: TermOrder, depth: int,
            leaf: Optional[Callable[[Variety, TermOrder], StandardSet]] = None) -> StandardSet:
    """Nested addition-map sum of slice staircases, ``depth`` levels deep."""
    if depth == 0:
        if leaf is not None:
            return leaf(V, order)
        if V.n == 0:
            return StandardSet.full(0) if V.components else StandardSet.empty(0)
        return standard_set_of_variety(V, order)
    tail = order.restrict_tail() if V.n > 1 else None
    parts = []
    for lam in projection_support(V):
        S = stacked(slice_variety(V, lam), tail, depth - 1, leaf)
        parts.append(S.embed())
    return add_all(V.n, parts)


def check_theorem_stack(V: Variety, order: TermOrder) -> CheckReport:
    _need_product(order)
    _pinned(V)
    D = standard_set_of_variety(V, order)
    S = stacked(V, order, 1)
    return _report("theorem_stack", _describe(V, order), D == S,
                   {"standard_set": D, "stacked": S}, support=[str(x) for x in projection_support(V)])


def _check_recursive_pre(V: Variety, order: TermOrder, b: int):
    d = _same_dimension(V)
    if not 1 <= b <= V.n - d:
        raise PreconditionError(f"depth b={b} must lie in [1, n-d] = [1, {V.n - d}]")
    if any(j < b for P in V.components for j in P.J):
        raise PreconditionError(f"some component has a free variable among x0..x{b - 1}")
    _need_product(order, b)
    return d


def check_corollary_recursive(V: Variety, order: TermOrder, b: int = 1) -> CheckReport:
    _check_recursive_pre(V, order, b)
    D = standard_set_of_variety(V, order)
    S = stacked(V, order, b)
    return _report("corollary_recursive", _describe(V, order), D == S,
                   {"standard_set": D, "stacked": S}, b=b)


def _leaves(V: Variety, depth: int):
    if depth == 0:
        yield V
        return
    for lam in projection_support(V):
        yield from _leaves(slice_variety(V, lam), depth - 1)


def corlex_case(V: Variety, b: int) -> Optional[str]:
    """``"a"`` if every depth-b slice is one plane, ``"b"`` if every one is a union
    of hyperplanes, else None."""
    d = _same_dimension(V)
    leaves = list(_leaves(V, b))
    if all(len(L) == 1 for L in leaves):
        return "a"
    if d == V.n - b - 1:
        return "b"
    return None


def _closed_leaf(case):
    def leaf(L: Variety, order):
        if case == "a":
            (P,) = L.components
            return coordinate_plane(L.n, P.J)
        counts = [0] * L.n
        for P in L.components:
            (i,) = [k for k in range(L.n) if k not in P.J]
            counts[i] += 1
        return hyperplane_staircase(counts)
    return leaf


def check_corlex_formulas(V: Variety, order: TermOrder, b: Optional[int] = None) -> CheckReport:
    """Closed-form nested sums of coordinate planes or hyperplane staircases."""
    d = _same_dimension(V)
    choices = [b] if b is not None else range(1, V.n - d + 1)
    for bb in choices:
        try:
            _check_recursive_pre(V, order, bb)
        except PreconditionError:
            if b is not None:
                raise
            continue
        case = corlex_case(V, bb)
        if case is None:
            if b is not None:
                raise PreconditionError(f"slices at depth {bb} are neither single planes nor hyperplane unions")
            continue
        D = standard_set_of_variety(V, order)
        S = stacked(V, order, bb, _closed_leaf(case))
        return _report("corlex_formulas", _describe(V, order), D == S,
                       {"standard_set": D, "formula": S}, b=bb, case=case)
    raise PreconditionError("no depth b satisfies the hypotheses of either closed formula")


def check_hyperplane_formula(V: Variety, order: TermOrder) -> CheckReport:
    d = _same_dimension(V)
    if d != V.n - 1:
        raise PreconditionError("components are not hyperplanes")
    counts = [0] * V.n
    for P in V.components:
        (i,) = [k for k in range(V.n) if k not in P.J]
        counts[i] += 1
    D = standard_set_of_variety(V, order)
    H = hyperplane_staircase(counts)
    return _report("hyperplane_formula", _describe(V, order), D == H,
                   {"standard_set": D, "formula": H}, counts=counts)


# -- generic fibers ----------------------------------------------------------

def check_theorem_inherit(V: Variety, order: TermOrder) -> CheckReport:
    _need_product(order)
    if not V.components or any(0 not in P.J for P in V.components):
        raise PreconditionError("every component must have x0 among its free variables")
    D = standard_set_of_variety(V, order)
    gf = generic_fiber(V, order)
    C = gf.delta.cuboid()
    inst = _describe(V, order)
    if not C.issubset(D):
        return _report("theorem_inherit", inst, False, {"cuboid": C, "standard_set": D, "delta": gf.delta})
    lines = D.e1_lines()
    return _report("theorem_inherit", inst, lines == gf.delta,
                   {"e1_lines": lines, "delta": gf.delta}, delta=gf.delta)


def check_corollary_general(V: Variety, order: TermOrder) -> CheckReport:
    """Containment of the cuboid and the exceptional stack; strictness is recorded."""
    _need_product(order)
    _same_dimension(V)
    D = standard_set_of_variety(V, order)
    gf = generic_fiber(V, order)
    C = gf.delta.cuboid()
    S = add_all(V.n, [E.embed() for E in gf.exceptional.values()])
    inst = _describe(V, order)
    details = {"delta": gf.delta, "exceptional": {str(k): v for k, v in gf.exceptional.items()}}
    if not C.issubset(D):
        return _report("corollary_general", inst, False, {"cuboid": C, "standard_set": D}, **details)
    if not S.issubset(D):
        return _report("corollary_general", inst, False, {"exceptional_sum": S, "standard_set": D}, **details)
    lines = D.e1_lines()
    if lines != gf.delta:
        return _report("corollary_general", inst, False, {"e1_lines": lines, "delta": gf.delta}, **details)
    return _report("corollary_general", inst, True, strict=(C | S) != D, **details)


def check_inequality_strong(V: Variety, order: TermOrder, trials: Optional[int] = None,
                            rng: Optional[random.Random] = None) -> CheckReport:
    """``beta_0 >= #{lam : p(beta) in D(A_lam)}`` for complement elements beta.

    Tested on every corner and every corner plus a unit vector; ``trials``
    additionally samples random complement elements up to twice the corner box.
    """
    _need_product(order)
    _same_dimension(V)
    D = standard_set_of_variety(V, order)
    gf = generic_fiber(V, order)
    betas = set(D.corners)
    for g in D.corners:
        for k in range(V.n):
            betas.add(add_exp(g, unit(V.n, k)))
    if trials:
        rng = rng or random.Random(0)
        box = [2 * x + 1 for x in D.bounds]
        for _ in range(trials):
            a = tuple(rng.randint(0, m) for m in box)
            if a not in D:
                betas.add(a)
    inst = _describe(V, order)
    for beta in sorted(betas):
        tail = beta[1:]
        if tail in gf.delta:
            return _report("inequality_strong", inst, False, {"beta": list(beta), "generic_fiber_hit": True})
        hits = sum(1 for E in gf.exceptional.values() if tail in E)
        if beta[0] < hits:
            return _report("inequality_strong", inst, False, {"beta": list(beta), "fiber_hits": hits})
    return _report("inequality_strong", inst, True, tested=len(betas))


def check_prop_iff_reduction(V: Variety, order: TermOrder) -> CheckReport:
    """d-plane bases of D(A) from the (d+1)-planes of the homogenized variety."""
    d = _same_dimension(V)
    Js = set(P.J for P in V.components)
    if len(Js) != 1:
        raise PreconditionError("components have different minimal free variables")
    (J,) = Js
    H = homogenize_variety(V)
    hJ = (0,) + tuple(j + 1 for j in J)
    if any(P.J != hJ for P in H.components):
        return _report("prop_iff_reduction", _describe(V, order), False, {"homogenized_free_sets": [list(P.J) for P in H.components]})
    Dh = standard_set_of_variety(H, product(order))
    D = standard_set_of_variety(V, order)
    try:
        lifted = sorted(P.base[1:] for P in Dh.d_planes(hJ))
        direct = sorted(P.base for P in D.d_planes(J))
    except InfinitePlaneCount as e:
        return _report("prop_iff_reduction", _describe(V, order), False, {"infinite": list(e.witness)})
    return _report("prop_iff_reduction", _describe(V, order), lifted == direct,
                   {"homogenized": lifted, "direct": direct}, bases=[list(b) for b in direct])


# -- random instances -------------------------------------------------------

class InstanceGenerator:
    """Deterministic random varieties in canonical form.

    Each instance draws from its own ``random.Random`` seeded by
    ``(seed, label, index)``, so any single instance can be rebuilt alone.
    """

    def __init__(self, seed: int = 0, max_n: int = 4, max_m: int = 4, max_d: int = 2, bound: int = 5):
        self.seed = seed
        self.max_n = max_n
        self.max_m = max_m
        self.max_d = max_d
        self.bound = bound

    def rng(self, label: str, index: int) -> random.Random:
        return random.Random(f"{self.seed}:{label}:{index}")

    def rational(self, rng: random.Random):
        num = rng.randint(-self.bound, self.bound)
        den = 1 if rng.random() < 0.7 else rng.randint(2, self.bound)
        return mpq(num, den)

    def plane(self, rng: random.Random, n: int, J: Sequence[int], fixed: Optional[Dict[int, Any]] = None) -> AffinePlane:
        """Canonical plane with free set J; ``fixed`` pins chosen constants."""
        J = sorted(J)
        fixed = fixed or {}
        b, c = {}, {}
        for i in range(n):
            if i in J:
                continue
            for j in J:
                if j < i and rng.random() < 0.6:
                    b[(i, j)] = self.rational(rng)
            c[i] = fixed[i] if i in fixed else self.rational(rng)
        return AffinePlane(n, J, b, c)

    def points(self, rng: random.Random, n: int, m: int) -> List[tuple]:
        pts = set()
        while len(pts) < m:
            pts.add(tuple(self.rational(rng) for _ in range(n)))
        return sorted(pts)

    def _distinct(self, rng, n, m, make) -> Variety:
        comps: List[AffinePlane] = []
        tries = 0
        while len(comps) < m and tries < 50 * m:
            P = make()
            tries += 1
            if P not in comps:
                comps.append(P)
        return Variety(n, comps)

    def _shape(self, rng, min_n=1, d_max=None, d_min=0):
        n = rng.randint(max(min_n, d_min + 1), self.max_n)
        d = rng.randint(d_min, min(d_max if d_max is not None else self.max_d, n - 1))
        m = rng.randint(1, self.max_m)
        return n, d, m

    def order(self, rng: random.Random, n: int, product_levels: int = 0) -> TermOrder:
        """lex, grlex, or a product order whose first ``product_levels`` tails stay product orders."""
        if product_levels == 0:
            return lex(n) if rng.random() < 0.5 else grlex(n)
        if rng.random() < 0.5:
            return lex(n)
        inner = grlex(n - product_levels)
        for _ in range(product_levels):
            inner = product(inner)
        return inner

    def variety(self, rng, n, d, m) -> Variety:
        return self._distinct(rng, n, m, lambda: self.plane(rng, n, rng.sample(range(n), d)))

    def pinned_variety(self, rng, n, d, m, depth=1) -> Variety:
        """Components with x0..x{depth-1} bound and pinned to few values, so slices collide."""
        values = [mpq(v) for v in rng.sample(range(-2, 3), 3)]

        def make():
            J = rng.sample(range(depth, n), d)
            return self.plane(rng, n, J, {i: rng.choice(values) for i in range(depth)})
        return self._distinct(rng, n, m, make)

    def instance(self, check: str, index: int):
        """``(variety, order, extra kwargs)`` shaped to satisfy the check's hypotheses."""
        rng = self.rng(check, index)
        if check in ("theorem_number", "lemma_decompose", "hilbert_slope"):
            n, d, m = self._shape(rng)
            return self.variety(rng, n, d, m), self.order(rng, n), {}
        if check == "theorem_stack":
            n, d, m = self._shape(rng, min_n=1)
            d = min(d, n - 1)
            return self.pinned_variety(rng, n, d, m), self.order(rng, n, 1), {}
        if check == "corollary_recursive":
            b = rng.randint(1, 2)
            n = rng.randint(b, self.max_n)
            d = rng.randint(0, min(self.max_d, n - b))
            m = rng.randint(1, self.max_m)
            return self.pinned_variety(rng, n, d, m, b), self.order(rng, n, b), {"b": b}
        if check == "corlex_formulas":
            return self._corlex_instance(rng)
        if check == "hyperplane_formula":
            n = rng.randint(1, self.max_n)
            m = rng.randint(1, self.max_m)
            return self.variety(rng, n, n - 1, m), self.order(rng, n), {}
        if check == "theorem_inherit":
            n = rng.randint(2, self.max_n)
            d = rng.randint(1, min(self.max_d, n - 1))
            m = rng.randint(1, self.max_m)

            def make():
                J = [0] + rng.sample(range(1, n), d - 1)
                return self.plane(rng, n, J)
            return self._distinct(rng, n, m, make), self.order(rng, n, 1), {}
        if check in ("corollary_general", "inequality_strong"):
            n = rng.randint(2, self.max_n)
            d = rng.randint(0, min(self.max_d, n - 1))
            m = rng.randint(1, self.max_m)
            values = [mpq(rng.randint(-2, 2)) for _ in range(2)]

            def make():
                J = rng.sample(range(n), d)
                fixed = {0: rng.choice(values)} if 0 not in J else {}
                return self.plane(rng, n, J, fixed)
            return self._distinct(rng, n, m, make), self.order(rng, n, 1), {}
        if check == "prop_iff_reduction":
            n, d, m = self._shape(rng)
            J = rng.sample(range(n), d)
            return self._distinct(rng, n, m, lambda: self.plane(rng, n, J)), self.order(rng, n), {}
        raise KeyError(f"unknown check {check!r}")

    def _corlex_instance(self, rng):
        b = rng.randint(1, 2)
        n = rng.randint(b + 1, self.max_n)
        m = rng.randint(1, self.max_m)
        order = self.order(rng, n, b)
        if rng.random() < 0.5:
            # case (a): distinct pinned prefixes, one plane per prefix
            d = rng.randint(0, min(self.max_d, n - b))
            prefixes = set()
            while len(prefixes) < m:
                prefixes.add(tuple(mpq(rng.randint(-2, 2)) for _ in range(b)))
            comps = [self.plane(rng, n, rng.sample(range(b, n), d), {i: -v for i, v in enumerate(p)})
                     for p in sorted(prefixes)]
            return Variety(n, comps), order, {"b": b}
        d = n - b - 1
        return self.pinned_variety(rng, n, d, m, b), order, {"b": b}

    def point_set(self, index: int, max_n: int = 3, max_m: int = 6):
        rng = self.rng("finiteness", index)
        n = rng.randint(1, max_n)
        m = rng.randint(1, max_m)
        return self.points(rng, n, m), self.order(rng, n)


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "theorem_number": check_theorem_number,
    "lemma_decompose": check_lemma_decompose,
    "theorem_stack": check_theorem_stack,
    "corollary_recursive": check_corollary_recursive,
    "corlex_formulas": check_corlex_formulas,
    "hyperplane_formula": check_hyperplane_formula,
    "theorem_inherit": check_theorem_inherit,
    "corollary_general": check_corollary_general,
    "inequality_strong": check_inequality_strong,
    "prop_iff_reduction": check_prop_iff_reduction,
    "hilbert_slope": check_hilbert_slope,
}

FUZZ_CHECKS = tuple(CHECKS) + ("finiteness",)


def run_check(name: str, V: Variety, order: TermOrder, **kwargs) -> CheckReport:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    return CHECKS[name](V, order, **kwargs)


def fuzz(generator: InstanceGenerator, which: Sequence[str], count: int) -> List[CheckReport]:
    """``count`` instances per check, each shaped to meet that check's hypotheses.

    Reports come back grouped by check, in instance order.
    """
    reports = []
    for name in which:
        for i in range(count):
            if name == "finiteness":
                pts, order = generator.point_set(i)
                rep = check_finiteness(pts, order)
            else:
                V, order, kw = generator.instance(name, i)
                rep = run_check(name, V, order, **kw)
            rep.details["seed"] = f"{generator.seed}:{name}:{i}"
            reports.append(rep)
    return reports
