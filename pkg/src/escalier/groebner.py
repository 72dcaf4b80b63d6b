"""Division, Buchberger's algorithm and the ideal operations built on it."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from gmpy2 import mpq

from .algebra import (
    Exponent,
    Polynomial,
    TermOrder,
    divides,
    eliminating,
    grlex,
    lcm_exp,
    product,
    sub_exp,
)


@dataclass(frozen=True)
class Ideal:
    """An ideal given by a (not necessarily Gröbner) list of generators."""

    n: int
    generators: Tuple[Polynomial, ...]

    def __init__(self, n: int, generators: Iterable[Polynomial] = ()):
        gens = tuple(g for g in generators if g)
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator in {g.n} variables for an ideal in {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis: monic, inter-reduced, sorted by leading exponent."""

    order: TermOrder
    generators: Tuple[Polynomial, ...]
    leads: Tuple[Exponent, ...]

    def __init__(self, order: TermOrder, generators: Iterable[Polynomial]):
        gens = sorted(generators, key=lambda g: order.key(g.leading_exponent(order)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "leads", tuple(g.leading_exponent(order) for g in gens))

    @property
    def n(self) -> int:
        return self.order.n

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def ideal(self) -> Ideal:
        return Ideal(self.n, self.generators)

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leads)


IdealLike = Union[Ideal, GroebnerBasis, Sequence[Polynomial]]


def _generators(I: IdealLike) -> List[Polynomial]:
    if isinstance(I, (Ideal, GroebnerBasis)):
        return list(I.generators)
    return [g for g in I if g]


def _arity(I: IdealLike, default=None) -> int:
    if isinstance(I, (Ideal, GroebnerBasis)):
        return I.n
    gens = list(I)
    return gens[0].n if gens else default


def _reduce(terms: dict, basis: Sequence[Tuple[Exponent, Polynomial]], order: TermOrder, full=True) -> dict:
    """Divide ``terms`` (consumed) by monic ``basis``; returns the remainder terms.

    Terms wait in a max-heap; entries whose term has cancelled are skipped.
    """
    hk = order.heap_key
    tails = [(lead, [(e, c) for e, c in g.terms.items() if e != lead]) for lead, g in basis]
    heap = [(hk(e), e) for e in terms]
    heapq.heapify(heap)
    rem = {}
    while heap:
        e = heapq.heappop(heap)[1]
        c = terms.pop(e, None)
        if c is None:
            continue
        for lead, tail in tails:
            if all(x <= y for x, y in zip(lead, e)):
                shift = tuple(y - x for x, y in zip(lead, e))
                for ge, gc in tail:
                    t = tuple(x + y for x, y in zip(ge, shift))
                    old = terms.get(t)
                    if old is None:
                        terms[t] = -c * gc
                        heapq.heappush(heap, (hk(t), t))
                    else:
                        s = old - c * gc
                        if s:
                            terms[t] = s
                        else:
                            del terms[t]
                break
        else:
            rem[e] = c
            if not full:
                rem.update(terms)
                return rem
    return rem


def normal_form(f: Polynomial, G: Union[GroebnerBasis, Sequence[Polynomial]], order: TermOrder = None) -> Polynomial:
    """Remainder of ``f`` on division by ``G``; no remainder term is divisible
    by a leading exponent of ``G``."""
    if isinstance(G, GroebnerBasis):
        order = G.order
        basis = list(zip(G.leads, G.generators))
    else:
        if order is None:
            raise ValueError("an order is required when dividing by a plain list")
        basis = [(g.leading_exponent(order), g.monic(order)) for g in G if g]
    if f.n != order.n:
        raise ValueError(f"arity mismatch: polynomial in {f.n}, basis in {order.n} variables")
    rem = _reduce(dict(f.terms), basis, order)
    return Polynomial._raw(f.n, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    a, b = f.leading_exponent(order), g.leading_exponent(order)
    m = lcm_exp(a, b)
    return f.mul_term(sub_exp(m, a), 1 / f.terms[a]) - g.mul_term(sub_exp(m, b), 1 / g.terms[b])


def buchberger(I: IdealLike, order: TermOrder) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``I``.

    Pairs are processed by smallest sugar degree, then smallest lcm; pairs
    with coprime leading monomials and pairs covered by Buchberger's chain
    criterion are skipped.
    """
    key = order.key
    n = order.n
    if _arity(I, n) != n:
        raise ValueError("order and ideal have different arities")
    basis: List[Tuple[Exponent, Polynomial]] = []
    sugar: List[int] = []
    pairs = []
    done = set()

    def add(p: Polynomial, sug: int):
        p = p.monic(order)
        lead = p.leading_exponent(order)
        k = len(basis)
        basis.append((lead, p))
        sugar.append(max(sug, p.total_degree))
        for i in range(k):
            m = lcm_exp(basis[i][0], lead)
            dm = sum(m)
            s_ij = max(sugar[i] + dm - sum(basis[i][0]), sugar[k] + dm - sum(lead))
            heapq.heappush(pairs, (s_ij, key(m), i, k, m))

    for g in _generators(I):
        r = Polynomial._raw(n, _reduce(dict(g.terms), basis, order))
        if r:
            if not any(r.leading_exponent(order)):
                return GroebnerBasis(order, [Polynomial.constant(n, 1)])
            add(r, g.total_degree)

    while pairs:
        sug, _, i, j, m = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = basis[i][0], basis[j][0]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        if _chain_skip(i, j, m, basis, done):
            continue
        s = s_polynomial(basis[i][1], basis[j][1], order)
        r = Polynomial._raw(n, _reduce(dict(s.terms), basis, order))
        if r:
            if not any(r.leading_exponent(order)):
                return GroebnerBasis(order, [Polynomial.constant(n, 1)])
            add(r, sug)

    return GroebnerBasis(order, _interreduce([p for _, p in basis], order))


def _chain_skip(i, j, m, basis, done) -> bool:
    for k, (lk, _) in enumerate(basis):
        if k in (i, j) or not divides(lk, m):
            continue
        if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
            return True
    return False


def _interreduce(gens: List[Polynomial], order: TermOrder) -> List[Polynomial]:
    leads = [g.leading_exponent(order) for g in gens]
    keep = []
    for i, (g, a) in enumerate(zip(gens, leads)):
        dominated = False
        for j, b in enumerate(leads):
            if j != i and divides(b, a) and (b != a or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g.monic(order))
    out = []
    for i, g in enumerate(keep):
        others = [(h.leading_exponent(order), h) for k, h in enumerate(keep) if k != i]
        lead = g.leading_exponent(order)
        tail = dict(g.terms)
        del tail[lead]
        rem = _reduce(tail, others, order)
        rem[lead] = mpq(1)
        out.append(Polynomial._raw(g.n, rem))
    return out


def is_groebner(G: Sequence[Polynomial], order: TermOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if normal_form(s_polynomial(G[i], G[j], order), G, order):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    for g, lead in zip(G.generators, G.leads):
        if g.terms[lead] != 1:
            return False
        for e in g.terms:
            if any(divides(l2, e) for l2 in G.leads if l2 != lead):
                return False
            if e != lead and divides(lead, e):
                return False
    return True


def eliminate(G: GroebnerBasis, count: int) -> GroebnerBasis:
    """Drop the ``count`` dominant trailing variables of an elimination order."""
    if count == 0:
        return G
    order = G.order
    if order.kind != "elim" or order.block != count:
        raise ValueError(f"basis order {order.name} does not eliminate the last {count} variables")
    n = order.n
    keep = []
    for g in G.generators:
        if all(not any(e[n - count:]) for e in g.terms):
            keep.append(Polynomial._raw(n - count, {e[:n - count]: c for e, c in g.terms.items()}))
    return GroebnerBasis(order.inner, keep)


def intersect(I1: IdealLike, I2: IdealLike, order: TermOrder) -> GroebnerBasis:
    """Reduced basis of ``I1 ∩ I2`` via ``(T*I1 + (1-T)*I2) ∩ k[X]``."""
    n = order.n
    for I in (I1, I2):
        if _arity(I, n) != n:
            raise ValueError("arity mismatch in intersect")
    t = Polynomial.variable(n + 1, n)
    one_minus_t = Polynomial.constant(n + 1, 1) - t
    gens = [t * g.insert_variable(n) for g in _generators(I1)]
    gens += [one_minus_t * g.insert_variable(n) for g in _generators(I2)]
    big = buchberger(gens, eliminating(order, 1))
    return eliminate(big, 1)


def intersect_all(ideals: Sequence[IdealLike], order: TermOrder) -> GroebnerBasis:
    """Left fold of pairwise intersection; the empty intersection is the unit ideal."""
    if not ideals:
        return GroebnerBasis(order, [Polynomial.constant(order.n, 1)])
    acc = buchberger(ideals[0], order)
    for I in ideals[1:]:
        acc = intersect(acc, I, order)
    return acc


# -- homogenization ----------------------------------------------------------

def homogenize_polynomial(f: Polynomial) -> Polynomial:
    """Homogenize with a new least variable at index 0."""
    D = f.total_degree
    return Polynomial._raw(f.n + 1, {(D - sum(e),) + e: c for e, c in f.terms.items()})


def dehomogenize_polynomial(f: Polynomial) -> Polynomial:
    return f.substitute(0, 1)


def homogenize(I: IdealLike) -> Ideal:
    """Homogenization of the ideal, with the new variable at index 0.

    Homogenizing a Gröbner basis for a degree-compatible order generates
    the homogenized ideal, so no saturation is needed.
    """
    n = _arity(I)
    G = buchberger(I, grlex(n))
    return Ideal(n + 1, [homogenize_polynomial(g) for g in G])


def dehomogenize(I: IdealLike) -> Ideal:
    n = _arity(I)
    return Ideal(n - 1, [dehomogenize_polynomial(g) for g in _generators(I)])


def extend_order_prec(order: TermOrder) -> TermOrder:
    """Order on (x_new, X): compare the X-part by ``order``, ties by the new exponent."""
    return product(order)


# -- staircase data ----------------------------------------------------------

def corner_set(G: GroebnerBasis) -> Tuple[Exponent, ...]:
    """Minimal generators of the leading-exponent set of the ideal."""
    return tuple(sorted(G.leads))


def canonical_basis_element(G: GroebnerBasis, beta: Sequence[int]) -> Polynomial:
    """The unique monic element with leading exponent ``beta`` whose other
    exponents are all standard."""
    beta = tuple(beta)
    if not any(divides(lead, beta) for lead in G.leads):
        raise ValueError(f"{beta} is a standard exponent, not a leading exponent of the ideal")
    x = Polynomial.monomial(beta)
    return x - normal_form(x, G)
