"""Standard sets (monomial staircases) and their combinatorics.

A standard set is a downward closed subset of N^n.  It is stored through
the finite antichain of minimal elements of its complement (its corners):
``a`` is a member iff no corner is coordinatewise ``<= a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as cartesian
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .algebra import Exponent, divides, lcm_exp, unit, zero_exponent


class NotInBarD(ValueError):
    """The standard set contains the whole ray N e_1, so fibers over it are infinite."""


class InfinitePlaneCount(Exception):
    """A plane family is infinite: the staircase contains a larger plane."""

    def __init__(self, J, witness):
        super().__init__(f"infinitely many planes parallel to {tuple(J)}; witness base {witness}")
        self.J = tuple(J)
        self.witness = witness


class Plane(NamedTuple):
    """The set ``base + sum_{j in J} N e_j`` with ``base[j] == 0`` for j in J."""

    J: Tuple[int, ...]
    base: Exponent

    def __contains__(self, a) -> bool:
        return all(x == y for i, (x, y) in enumerate(zip(a, self.base)) if i not in self.J)


def minimize(vectors: Iterable[Sequence[int]]) -> Tuple[Exponent, ...]:
    """Minimal elements under the coordinatewise order, sorted."""
    vs = sorted({tuple(v) for v in vectors}, key=lambda v: (sum(v), v))
    out: List[Exponent] = []
    for v in vs:
        if not any(divides(g, v) for g in out):
            out.append(v)
    return tuple(sorted(out))


@dataclass(frozen=True)
class StandardSet:
    n: int
    corners: Tuple[Exponent, ...]

    def __init__(self, n: int, corners: Iterable[Sequence[int]] = ()):
        corners = [tuple(int(x) for x in c) for c in corners]
        for c in corners:
            if len(c) != n or any(x < 0 for x in c):
                raise ValueError(f"bad corner {c} for arity {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "corners", minimize(corners))

    @classmethod
    def full(cls, n: int) -> "StandardSet":
        return cls(n, ())

    @classmethod
    def empty(cls, n: int) -> "StandardSet":
        return cls(n, [zero_exponent(n)])

    @classmethod
    def from_points(cls, n: int, points: Iterable[Sequence[int]]) -> "StandardSet":
        """Downward closure of a finite set of points."""
        out = cls.empty(n)
        for p in minimize_max(points):
            out = out | cls(n, [tuple(p[k] + 1 if k == i else 0 for k in range(n)) for i in range(n)])
        return out

    def __repr__(self):
        return f"StandardSet({self.n}, {list(self.corners)})"

    def _check(self, other: "StandardSet"):
        if self.n != other.n:
            raise ValueError(f"arity mismatch: {self.n} vs {other.n}")

    # membership
    def __contains__(self, a: Sequence[int]) -> bool:
        return self.contains(a)

    def contains(self, a: Sequence[int]) -> bool:
        a = tuple(a)
        if len(a) != self.n:
            raise ValueError(f"exponent of length {len(a)} for arity {self.n}")
        return not any(divides(g, a) for g in self.corners)

    def is_empty(self) -> bool:
        return self.corners == (zero_exponent(self.n),)

    @property
    def bounds(self) -> Tuple[int, ...]:
        """Largest corner coordinate in each direction (0 if no corner)."""
        return tuple(max((g[i] for g in self.corners), default=0) for i in range(self.n))

    def is_finite(self) -> bool:
        # finite iff every axis is cut off by a pure power x_i^k (k = 0 allowed)
        return all(any(g[i] == sum(g) for g in self.corners) for i in range(self.n))

    def points(self, bounds: Optional[Sequence[int]] = None) -> Iterator[Exponent]:
        """Members inside the box ``[0, bounds[i]]``."""
        bounds = bounds if bounds is not None else self.bounds
        for a in cartesian(*(range(b + 1) for b in bounds)):
            if self.contains(a):
                yield a

    def size(self) -> Optional[int]:
        """Cardinality, or None if infinite."""
        if not self.is_finite():
            return None
        return sum(1 for _ in self.points(tuple(max(b - 1, 0) for b in self.bounds)))

    # planes
    def plane_contained(self, J: Sequence[int], base: Sequence[int]) -> bool:
        J = set(J)
        if any(base[j] for j in J):
            raise ValueError("plane base must vanish on J")
        off = [i for i in range(self.n) if i not in J]
        return all(any(base[i] < g[i] for i in off) for g in self.corners)

    def d_planes(self, J: Sequence[int]) -> List[Plane]:
        """All planes parallel to ``sum_{j in J} N e_j`` contained in the set.

        Raises InfinitePlaneCount if the family is infinite.
        """
        J = tuple(sorted(J))
        off = [i for i in range(self.n) if i not in J]
        M = self.bounds
        out = []
        for vals in cartesian(*(range(M[i] + 1) for i in off)):
            base = [0] * self.n
            for i, v in zip(off, vals):
                base[i] = v
            if self.plane_contained(J, base):
                if any(base[i] == M[i] for i in off):
                    raise InfinitePlaneCount(J, tuple(base))
                out.append(Plane(J, tuple(base)))
        return out

    def has_plane(self, J: Sequence[int]) -> bool:
        return self.plane_contained(J, zero_exponent(self.n))

    def top_dimension(self) -> Optional[int]:
        """Largest d such that a d-plane lies in the set; None for the empty set."""
        if self.is_empty():
            return None
        for d in range(self.n, -1, -1):
            if any(self.has_plane(J) for J in combinations(range(self.n), d)):
                return d
        return None

    def top_planes(self) -> List[Plane]:
        """The planes whose union is E(delta): all planes of top dimension."""
        d = self.top_dimension()
        if d is None:
            return []
        out = []
        for J in combinations(range(self.n), d):
            out.extend(self.d_planes(J))
        return out

    def plane_counts(self, d: int) -> Dict[Tuple[int, ...], int]:
        return {J: len(self.d_planes(J)) for J in combinations(range(self.n), d)}

    def top_part(self) -> "StandardSet":
        """E(delta) as a standard set (a union of planes is downward closed)."""
        out = StandardSet.empty(self.n)
        for P in self.top_planes():
            out = out | plane_set(self.n, P)
        return out

    # projection and the addition map
    def in_bar_d(self) -> bool:
        return any(not any(g[1:]) for g in self.corners)

    def fiber_count(self, alpha: Sequence[int]) -> int:
        """``#{t : (t, alpha) in delta}``."""
        alpha = tuple(alpha)
        if len(alpha) != self.n - 1:
            raise ValueError("fiber index must have length n-1")
        if not self.in_bar_d():
            raise NotInBarD(f"{self!r} contains the ray N e_1")
        return min(g[0] for g in self.corners if divides(g[1:], alpha))

    def project(self) -> "StandardSet":
        """Image under dropping the first coordinate."""
        return StandardSet(self.n - 1, [g[1:] for g in self.corners if g[0] == 0])

    def embed(self) -> "StandardSet":
        """Image under ``a -> (0, a)``."""
        return StandardSet(self.n + 1, [(0,) + g for g in self.corners] + [unit(self.n + 1, 0)])

    def cuboid(self) -> "StandardSet":
        """``N e_1 (+) delta`` in one more variable."""
        return StandardSet(self.n + 1, [(0,) + g for g in self.corners])

    def e1_lines(self) -> "StandardSet":
        """Tails ``a`` with ``(0, a) + N e_1`` inside the set."""
        return StandardSet(self.n - 1, [g[1:] for g in self.corners])

    def __add__(self, other: "StandardSet") -> "StandardSet":
        return add(self, other)

    # lattice operations
    def __or__(self, other: "StandardSet") -> "StandardSet":
        self._check(other)
        return StandardSet(self.n, [lcm_exp(a, b) for a in self.corners for b in other.corners])

    def __and__(self, other: "StandardSet") -> "StandardSet":
        self._check(other)
        return StandardSet(self.n, self.corners + other.corners)

    def union(self, other):
        return self | other

    def intersection(self, other):
        return self & other

    def issubset(self, other: "StandardSet") -> bool:
        self._check(other)
        return all(any(divides(g, h) for g in self.corners) for h in other.corners)

    __le__ = issubset

    # counting
    def hilbert_function(self, t: int) -> int:
        """``#{a in delta : |a| <= t}``."""
        return sum(self.degree_counts(t))

    def degree_counts(self, t: int) -> List[int]:
        counts = [0] * (t + 1)
        for a in compositions_up_to(self.n, t):
            if self.contains(a):
                counts[sum(a)] += 1
        return counts

    def hilbert_growth(self) -> Tuple[Optional[int], int]:
        """``(d, c)`` where the Hilbert function is eventually a degree-d
        polynomial whose d-th finite difference is the constant ``c``."""
        d = self.top_dimension()
        if d is None:
            return None, 0
        t0 = sum(self.bounds) + d + 2
        counts = self.degree_counts(t0 + 1)
        hf, run = [], 0
        for c in counts:
            run += c
            hf.append(run)
        diffs = []
        for t in (t0, t0 + 1):
            vals = hf[t - d:t + 1]
            for _ in range(d):
                vals = [b - a for a, b in zip(vals, vals[1:])]
            diffs.append(vals[0])
        if diffs[0] != diffs[1]:
            raise ArithmeticError(f"Hilbert function not yet polynomial at t={t0}")
        return d, diffs[0]


def minimize_max(points: Iterable[Sequence[int]]) -> List[Exponent]:
    pts = {tuple(p) for p in points}
    return [p for p in pts if not any(q != p and divides(p, q) for q in pts)]


def compositions_up_to(n: int, t: int) -> Iterator[Exponent]:
    """All exponent vectors of length n with total degree at most t."""
    if n == 0:
        yield ()
        return
    for k in range(t + 1):
        for rest in compositions_up_to(n - 1, t - k):
            yield (k,) + rest


def plane_set(n: int, P: Plane) -> StandardSet:
    """Downward closure of a plane, as a standard set."""
    return StandardSet(n, [tuple(P.base[k] + 1 if k == i else 0 for k in range(n))
                           for i in range(n) if i not in P.J])


def validate(n: int, corners: Iterable[Sequence[int]]) -> StandardSet:
    return StandardSet(n, corners)


def contains(delta: StandardSet, a: Sequence[int]) -> bool:
    return delta.contains(a)


def add(d1: StandardSet, d2: StandardSet) -> StandardSet:
    """The addition map: fiber counts over each tail are summed."""
    d1._check(d2)
    for d in (d1, d2):
        if not d.in_bar_d():
            raise NotInBarD(f"{d!r} contains the ray N e_1")
    tails = {g[1:] for g in d1.corners} | {g[1:] for g in d2.corners}
    cand = {zero_exponent(d1.n - 1)}
    frontier = set(cand)
    while frontier:
        new = {lcm_exp(a, b) for a in frontier for b in tails} - cand
        cand |= new
        frontier = new
    return StandardSet(d1.n, [(d1.fiber_count(a) + d2.fiber_count(a),) + a for a in cand])


def add_all(n: int, sets: Iterable[StandardSet]) -> StandardSet:
    """Sum under the addition map; the empty sum is the empty set."""
    acc = StandardSet.empty(n)
    for s in sets:
        acc = add(acc, s)
    return acc


def hyperplane_staircase(counts: Sequence[int]) -> StandardSet:
    """``union_i union_{l < m_i} (l e_i + sum_{j != i} N e_j)`` for ``m = counts``."""
    return StandardSet(len(counts), [tuple(counts)])


def coordinate_plane(n: int, J: Sequence[int]) -> StandardSet:
    """``sum_{j in J} N e_j``."""
    return StandardSet(n, [unit(n, i) for i in range(n) if i not in set(J)])
