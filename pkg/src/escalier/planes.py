"""Affine d-planes, their canonical equations, and finite unions of them.

A plane in n variables with free set ``J`` is stored by its canonical
equations ``x_i + sum_{j in J, j < i} b[i, j] x_j + c[i] = 0`` for every
``i`` not in ``J``.  ``J`` is the set of minimal free variables: no free
variable can be exchanged for a smaller bound one.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import linalg
from .algebra import Polynomial, Q, Rational, TermOrder
from .groebner import GroebnerBasis, Ideal, corner_set, intersect_all
from .staircase import StandardSet


class InconsistentEquations(ValueError):
    pass


@dataclass(frozen=True)
class AffinePlane:
    n: int
    J: Tuple[int, ...]
    b: Tuple[Tuple[Tuple[int, int], Rational], ...]
    c: Tuple[Tuple[int, Rational], ...]

    def __init__(self, n: int, J: Iterable[int], b: Optional[Dict] = None, c: Optional[Dict] = None):
        J = tuple(sorted(set(J)))
        if any(not 0 <= j < n for j in J):
            raise ValueError(f"free variables {J} out of range for n={n}")
        bound = [i for i in range(n) if i not in J]
        bb = {}
        for (i, j), v in (b or {}).items():
            v = Q(v)
            if not v:
                continue
            if i in J or j not in J or j >= i:
                raise ValueError(f"coefficient b[{i},{j}] is not allowed in canonical form with J={J}")
            bb[(i, j)] = v
        cc = {}
        for i, v in (c or {}).items():
            if i in J:
                raise ValueError(f"constant c[{i}] given for free variable")
            if not 0 <= i < n:
                raise ValueError(f"constant index {i} out of range")
            cc[i] = Q(v)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "b", tuple(sorted(bb.items())))
        object.__setattr__(self, "c", tuple((i, cc.get(i, mpq(0))) for i in bound))

    @classmethod
    def point(cls, coords: Sequence) -> "AffinePlane":
        return cls(len(coords), (), c={i: -Q(x) for i, x in enumerate(coords)})

    @property
    def dim(self) -> int:
        return len(self.J)

    @property
    def bound(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.c)

    def coefficient(self, i: int, j: int) -> Rational:
        return dict(self.b).get((i, j), mpq(0))

    def constant(self, i: int) -> Rational:
        return dict(self.c)[i]

    def equations(self) -> List[Polynomial]:
        bd = dict(self.b)
        out = []
        for i, ci in self.c:
            coeffs = [mpq(0)] * self.n
            coeffs[i] = mpq(1)
            for j in self.J:
                if j < i:
                    coeffs[j] = bd.get((i, j), mpq(0))
            out.append(Polynomial.linear(coeffs, ci))
        return out

    def matrix(self) -> Tuple[List[List[Rational]], List[Rational]]:
        """``(B, c)`` with the plane equal to ``{x : B x + c = 0}``."""
        B = []
        for f in self.equations():
            row = [mpq(0)] * self.n
            for e, v in f.terms.items():
                if any(e):
                    row[e.index(1)] = v
            B.append(row)
        return B, [ci for _, ci in self.c]

    def contains_point(self, x: Sequence) -> bool:
        return all(f.evaluate(x) == 0 for f in self.equations())

    def parametrization(self) -> Tuple[List[Rational], List[List[Rational]]]:
        """A point and direction vectors (one per free variable)."""
        bd = dict(self.b)
        p = [mpq(0)] * self.n
        for i, ci in self.c:
            p[i] = -ci
        dirs = []
        for j in self.J:
            v = [mpq(0)] * self.n
            v[j] = mpq(1)
            for i, _ in self.c:
                v[i] = -bd.get((i, j), mpq(0))
            dirs.append(v)
        return p, dirs

    def pinned_first(self) -> Optional[Rational]:
        """The fixed value of x0 when x0 is not free."""
        if 0 in self.J:
            return None
        return -self.constant(0)

    def slice_first(self, lam) -> Optional["AffinePlane"]:
        """Intersection with ``{x0 = lam}`` as a plane in x1..x{n-1}, or None if empty."""
        lam = Q(lam)
        bd = dict(self.b)
        if 0 not in self.J:
            if -self.constant(0) != lam:
                return None
            return AffinePlane(self.n - 1, [j - 1 for j in self.J],
                               {(i - 1, j - 1): v for (i, j), v in bd.items()},
                               {i - 1: v for i, v in self.c if i != 0})
        return AffinePlane(self.n - 1, [j - 1 for j in self.J if j != 0],
                           {(i - 1, j - 1): v for (i, j), v in bd.items() if j != 0},
                           {i - 1: v + bd.get((i, 0), 0) * lam for i, v in self.c})

    def homogenize(self) -> "AffinePlane":
        """Linear span of ``{(1, a) : a in plane}`` with the new coordinate at index 0."""
        bd = {(i + 1, j + 1): v for (i, j), v in self.b}
        for i, v in self.c:
            bd[(i + 1, 0)] = v
        return AffinePlane(self.n + 1, [0] + [j + 1 for j in self.J], bd, {})

    def ideal(self) -> Ideal:
        return Ideal(self.n, self.equations())

    def to_canonical_dict(self) -> dict:
        return {"J": list(self.J),
                "b": [[i, j, str(v)] for (i, j), v in self.b],
                "c": [[i, str(v)] for i, v in self.c]}


def _validate(B: Sequence[Sequence], c: Sequence, n: Optional[int] = None) -> Tuple[List[List], List]:
    B = [[Q(x) for x in row] for row in B]
    c = [Q(x) for x in c]
    if len(B) != len(c):
        raise ValueError("B and c have different numbers of rows")
    if n is None:
        if not B:
            raise ValueError("cannot infer n from an empty system")
        n = len(B[0])
    if any(len(row) != n for row in B):
        raise ValueError("ragged coefficient matrix")
    r = linalg.rank(B)
    if linalg.rank([row + [ci] for row, ci in zip(B, c)]) != r:
        raise InconsistentEquations("the system B x + c = 0 has no solution")
    return B, c


def minimal_free_variables(B: Sequence[Sequence], c: Sequence, n: Optional[int] = None) -> Tuple[int, ...]:
    """Greedy scan: ``i`` joins J iff the columns outside ``J ∪ {i}`` keep full rank."""
    B, c = _validate(B, c, n)
    n = n if n is not None else len(B[0])
    r = linalg.rank(B) if B else 0
    J: List[int] = []
    for i in range(n):
        rest = [k for k in range(n) if k not in J and k != i]
        if (linalg.rank(linalg.columns(B, rest)) if B and rest else 0) == r:
            J.append(i)
    return tuple(J)


def from_general_equations(B: Sequence[Sequence], c: Sequence, n: Optional[int] = None,
                           dim: Optional[int] = None) -> AffinePlane:
    """Canonical form of the plane ``{x : B x + c = 0}``.

    Pivots are taken from the highest variable down, which leaves the
    smallest possible variables free.
    """
    B, c = _validate(B, c, n)
    n = n if n is not None else len(B[0])
    rows = [row + [ci] for row, ci in zip(B, c)]
    R, pivots = linalg.rref(rows, column_order=range(n - 1, -1, -1))
    J = [j for j in range(n) if j not in pivots]
    if dim is not None and len(J) != dim:
        raise ValueError(f"expected a {dim}-plane, got dimension {len(J)}")
    b, cc = {}, {}
    for row, i in zip(R, pivots):
        for j in J:
            if row[j]:
                b[(i, j)] = row[j]
        cc[i] = row[n]
    return AffinePlane(n, J, b, cc)


def stratum_dimension(J: Sequence[int], n: int) -> int:
    """Dimension of the family of affine planes with minimal free variables J."""
    J = set(J)
    r = sum(sum(1 for j in J if j < i) for i in range(n) if i not in J)
    return r + n - len(J)


@dataclass(frozen=True)
class Variety:
    """A finite union of affine planes (duplicates removed)."""

    n: int
    components: Tuple[AffinePlane, ...]

    def __init__(self, n: int, components: Iterable[AffinePlane] = ()):
        seen = []
        for P in components:
            if P.n != n:
                raise ValueError(f"component in {P.n} variables for a variety in {n}")
            if P not in seen:
                seen.append(P)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "components", tuple(seen))

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "Variety":
        return cls(len(points[0]), [AffinePlane.point(p) for p in points])

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(sorted({P.dim for P in self.components}))

    @property
    def dim(self) -> int:
        ds = self.dims
        if len(ds) != 1:
            raise ValueError(f"components have dimensions {ds}")
        return ds[0]

    def free_sets(self) -> Dict[Tuple[int, ...], int]:
        """``m_J``: how many components have minimal free variables J."""
        out: Dict[Tuple[int, ...], int] = {}
        for P in self.components:
            out[P.J] = out.get(P.J, 0) + 1
        return out

    def by_free_set(self) -> Dict[Tuple[int, ...], "Variety"]:
        groups: Dict[Tuple[int, ...], List[AffinePlane]] = {}
        for P in self.components:
            groups.setdefault(P.J, []).append(P)
        return {J: Variety(self.n, Ps) for J, Ps in groups.items()}

    def slice(self, lam) -> "Variety":
        return slice_variety(self, lam)

    def homogenize(self) -> "Variety":
        return homogenize_variety(self)


def ideal_of_plane(P: AffinePlane) -> Ideal:
    return P.ideal()


def ideal_of_variety(V: Variety, order: TermOrder) -> GroebnerBasis:
    """Reduced Gröbner basis of the vanishing ideal of the union."""
    return intersect_all([P.ideal() for P in V.components], order)


def standard_set_of_variety(V: Variety, order: TermOrder) -> StandardSet:
    return StandardSet(V.n, corner_set(ideal_of_variety(V, order)))


def slice_variety(V: Variety, lam) -> Variety:
    """``V ∩ {x0 = lam}`` in the variables x1..x{n-1}."""
    return Variety(V.n - 1, [S for P in V.components if (S := P.slice_first(lam)) is not None])


def projection_support(V: Variety) -> List[Rational]:
    """Values of x0 taken on V, when every component pins x0."""
    vals = []
    for P in V.components:
        v = P.pinned_first()
        if v is None:
            raise ValueError("a component has x0 among its free variables")
        if v not in vals:
            vals.append(v)
    return sorted(vals)


def homogenize_variety(V: Variety) -> Variety:
    return Variety(V.n + 1, [P.homogenize() for P in V.components])


# -- generic fibers ----------------------------------------------------------

@dataclass
class GenericFiber:
    """Generic standard set of the slices ``V ∩ {x0 = lam}`` and the exceptions."""

    delta: StandardSet
    exceptional: Dict[Rational, StandardSet]
    candidates: List[Rational]
    samples: List[Rational]


class NoStabilization(RuntimeError):
    pass


def _sliced_family(P: AffinePlane):
    """Point ``p0 + lam*p1`` and directions of the slices of a plane with x0 free."""
    bd = dict(P.b)
    Q_ = AffinePlane(P.n - 1, [j - 1 for j in P.J if j != 0],
                     {(i - 1, j - 1): v for (i, j), v in bd.items() if j != 0},
                     {i - 1: v for i, v in P.c})
    p0, dirs = Q_.parametrization()
    p1 = [mpq(0)] * (P.n - 1)
    for i, _ in P.c:
        p1[i - 1] = -bd.get((i, 0), mpq(0))
    return p0, p1, dirs


def exceptional_candidates(V: Variety) -> List[Rational]:
    """Values of x0 where the slice configuration may degenerate.

    Collects the pinned x0 values, and for each pair of components with
    x0 free and each coordinate subset K, the value where the projections
    of the two slices to K start meeting (a linear condition in x0).
    """
    cands = set()
    free = []
    for P in V.components:
        v = P.pinned_first()
        if v is None:
            free.append(_sliced_family(P))
        else:
            cands.add(v)
    m = V.n - 1
    subsets = [K for k in range(1, m + 1) for K in combinations(range(m), k)]
    for (p0, p1, D), (q0, q1, E) in combinations(free, 2):
        for K in subsets:
            u0 = [q0[k] - p0[k] for k in K]
            u1 = [q1[k] - p1[k] for k in K]
            span = [[v[k] for k in K] for v in D + E]
            kind, t = linalg.affine_root(u0, u1, span)
            if kind == "one":
                cands.add(t)
            # coincidence of the two projected directions is lambda-free,
            # so meeting is the only lambda-dependent event per subset
    return sorted(cands)


def _sample_values(budget: int, avoid) -> List[Rational]:
    out = []
    k = 0
    while len(out) < budget:
        lam = mpq(7919 * k + 104729, 97 + 13 * k)
        k += 1
        if lam not in avoid:
            out.append(lam)
    return out


def sample_budget() -> int:
    return int(os.environ.get("ESCALIER_SAMPLE_BUDGET", "20"))


def generic_fiber(V: Variety, order: TermOrder, stable: int = 5, budget: Optional[int] = None) -> GenericFiber:
    """Generic standard set of the slices by sampling, plus the exceptional values.

    ``order`` is the order on all n variables; slices use its restriction
    to x1..x{n-1}.
    """
    budget = budget if budget is not None else sample_budget()
    tail = order.restrict_tail()
    cands = exceptional_candidates(V)
    samples = _sample_values(budget, set(cands))
    seen: List[Tuple[Rational, StandardSet]] = []
    delta = None
    run = 0
    for lam in samples:
        D = standard_set_of_variety(slice_variety(V, lam), tail)
        if seen and D == seen[-1][1]:
            run += 1
        else:
            run = 1
        seen.append((lam, D))
        if run >= stable:
            delta = D
            break
    if delta is None:
        raise NoStabilization(f"slice staircases did not stabilize within {budget} samples")
    exceptional = {lam: D for lam, D in seen if D != delta}
    for lam in cands:
        D = standard_set_of_variety(slice_variety(V, lam), tail)
        if D != delta:
            exceptional[lam] = D
    return GenericFiber(delta, dict(sorted(exceptional.items())), cands, [lam for lam, _ in seen])
