"""Exact rationals, exponent vectors, term orders and sparse polynomials.

Variables are indexed from 0.  Every order in this module treats the
highest index as the most significant variable, so ``x0 < x1 < ... <
x{n-1}`` under lex.  Exponent vectors are plain tuples of ints.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple

from gmpy2 import mpq

Exponent = Tuple[int, ...]
Rational = type(mpq())


def Q(value) -> Rational:
    """Coerce ints, strings like ``"-3/4"``, Fractions and mpq to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    if isinstance(value, str):
        value = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", value):
            raise ValueError(f"not a rational literal: {value!r}")
    return mpq(value)


def format_rational(c: Rational) -> str:
    return str(c)


# -- exponent vectors -------------------------------------------------------

def unit(n: int, i: int) -> Exponent:
    return tuple(1 if k == i else 0 for k in range(n))


def zero_exponent(n: int) -> Exponent:
    return (0,) * n


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    """True if ``a <= b`` coordinatewise, i.e. X^a divides X^b."""
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def project(a: Exponent) -> Exponent:
    """Drop the first (least significant) coordinate."""
    return a[1:]


# -- term orders ------------------------------------------------------------

_KINDS = ("lex", "grlex", "product", "elim")


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on exponent vectors of length ``n``.

    ``product`` compares the tail ``a[1:]`` by ``inner`` and breaks ties
    by ``a[0]``.  ``elim`` makes the last ``block`` variables dominant
    (compared by total degree, then lex) and uses ``inner`` on the rest.
    """

    kind: str
    n: int
    inner: Optional["TermOrder"] = None
    block: int = 0
    _key: Callable = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "product" and (self.inner is None or self.inner.n != self.n - 1):
            raise ValueError("product order needs an inner order on n-1 variables")
        if self.kind == "elim":
            if self.inner is None or self.inner.n != self.n - self.block or self.block < 0:
                raise ValueError("elimination order needs an inner order on n-block variables")
        object.__setattr__(self, "_key", self._make_key())

    def _make_key(self):
        # keys are flat tuples of ints, compared lexicographically
        n = self.n
        if self.kind == "lex":
            f = lambda a: a[::-1]
        elif self.kind == "grlex":
            f = lambda a: (sum(a),) + a[::-1]
        elif self.kind == "product":
            ik = self.inner._key
            f = lambda a: ik(a[1:]) + (a[0],)
        else:
            cut = n - self.block
            ik = self.inner._key
            if cut:
                f = lambda a: (sum(a[cut:]),) + a[:cut - 1:-1] + ik(a[:cut])
            else:
                f = lambda a: (sum(a),) + a[::-1]
        cache = {}

        def key(a):
            k = cache.get(a)
            if k is None:
                if len(cache) > 1 << 18:
                    cache.clear()
                k = cache[a] = f(a)
            return k
        return key

    def key(self, a: Exponent):
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        return self._key(a)

    def heap_key(self, a: Exponent):
        """Negated key, so that ``heapq`` pops the largest exponent first."""
        return tuple(-x for x in self._key(a))

    def restrict_tail(self) -> "TermOrder":
        """The induced order on the variables x1..x{n-1}."""
        if self.kind == "lex":
            return lex(self.n - 1)
        if self.kind == "grlex":
            return grlex(self.n - 1)
        if self.kind == "product":
            return self.inner
        raise ValueError("tail restriction of an elimination order is not supported")

    @property
    def name(self) -> str:
        if self.kind in ("lex", "grlex"):
            return self.kind
        if self.kind == "product":
            return f"product({self.inner.name})"
        return f"elim({self.block},{self.inner.name})"


def lex(n: int) -> TermOrder:
    return TermOrder("lex", n)


def grlex(n: int) -> TermOrder:
    return TermOrder("grlex", n)


def product(inner: TermOrder) -> TermOrder:
    return TermOrder("product", inner.n + 1, inner)


def eliminating(base: TermOrder, count: int = 1) -> TermOrder:
    """Extend ``base`` by ``count`` new trailing variables that dominate every
    monomial of ``base`` (``T`` larger than any power of X)."""
    return TermOrder("elim", base.n + count, base, count)


def order_by_name(name: str, n: int) -> TermOrder:
    """Parse ``lex``, ``grlex`` or nested ``product(...)`` names."""
    name = name.strip()
    if name.startswith("product(") and name.endswith(")"):
        return product(order_by_name(name[8:-1], n - 1))
    if name == "lex":
        return lex(n)
    if name in ("grlex", "graded-lex", "deglex"):
        return grlex(n)
    raise ValueError(f"unknown term order {name!r}")


def compare(order: TermOrder, a: Exponent, b: Exponent) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != order.n or len(b) != order.n:
        raise ValueError(f"exponent length mismatch for order on {order.n} variables")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def is_product_order(order: TermOrder) -> bool:
    """Whether the order compares ``a[1:]`` first and ``a[0]`` only on ties."""
    return order.kind in ("lex", "product") or (order.kind == "grlex" and order.n <= 1)


# -- polynomials ------------------------------------------------------------

def default_names(n: int) -> Tuple[str, ...]:
    if n <= 3:
        return ("X", "Y", "Z")[:n]
    return tuple(f"x{i}" for i in range(n))


class Polynomial:
    """Sparse polynomial in ``n`` variables with exact rational coefficients.

    Treated as immutable: every operation returns a new polynomial.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Optional[Dict[Exponent, object]] = None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {n} variables")
                c = Q(c)
                if c:
                    clean[e] = c
        self.terms: Dict[Exponent, Rational] = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        return cls(n, {zero_exponent(n): c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Polynomial":
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        return cls._raw(n, {unit(n, i): mpq(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Polynomial":
        """``sum(coeffs[i] * x_i) + const``."""
        n = len(coeffs)
        terms = {unit(n, i): c for i, c in enumerate(coeffs)}
        terms[zero_exponent(n)] = const
        return cls(n, terms)

    @classmethod
    def parse(cls, text: str, names: Optional[Sequence[str]] = None, n: Optional[int] = None) -> "Polynomial":
        """Parse sums of products like ``"Y*X - X^2 + 3/2"`` or ``"YX-X^2"``.

        Factors may be juxtaposed; exponents use ``^`` or ``**``.
        """
        if names is None:
            names = default_names(n if n is not None else 3)
        names = list(names)
        n = len(names) if n is None else n
        index = {name: i for i, name in enumerate(names)}
        name_re = "|".join(re.escape(s) for s in sorted(names, key=len, reverse=True))
        token = re.compile(rf"\s*(?:(\d+(?:/\d+)?)|({name_re})|(\*\*|\^)|([*+-]))")
        pos, result = 0, cls.zero(n)
        sign, coef, exp, fresh = 1, mpq(1), [0] * n, True
        last_var = None
        text = text.strip()
        if not text:
            raise ValueError("empty polynomial")

        def flush():
            nonlocal result
            result = result + cls._raw(n, {tuple(exp): sign * coef})

        while pos < len(text):
            m = token.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
            pos = m.end()
            num, var, power, op = m.groups()
            if num is not None:
                coef *= mpq(num)
                fresh, last_var = False, None
            elif var is not None:
                exp[index[var]] += 1
                fresh, last_var = False, index[var]
            elif power is not None:
                m2 = re.compile(r"\s*(\d+)").match(text, pos)
                if not m2 or last_var is None:
                    raise ValueError("exponent must follow a variable")
                pos = m2.end()
                exp[last_var] += int(m2.group(1)) - 1
                last_var = None
            elif op == "*":
                last_var = None
            else:
                if not fresh:
                    flush()
                    sign, coef, exp = 1, mpq(1), [0] * n
                if op == "-":
                    sign = -sign
                fresh, last_var = True, None
        if fresh:
            raise ValueError("dangling operator")
        flush()
        return result

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"

    def __str__(self):
        return self.to_string()

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise ValueError(f"arity mismatch: {self.n} vs {other.n}")

    # ring operations
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Rational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        result = Polynomial.constant(self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> "Polynomial":
        c = Q(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, exp: Exponent, c=1) -> "Polynomial":
        """Multiply by the single term ``c * X^exp``."""
        c = Q(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {tuple(x + y for x, y in zip(e, exp)): c * v
                                        for e, v in self.terms.items()})

    # order-dependent data
    def leading_exponent(self, order: TermOrder) -> Exponent:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading exponent")
        if order.n != self.n:
            raise ValueError(f"order on {order.n} variables used for polynomial in {self.n}")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder) -> Rational:
        return self.terms[self.leading_exponent(order)]

    def monic(self, order: TermOrder) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient(order))

    def sorted_terms(self, order: TermOrder):
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # structure
    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def exponents(self) -> Iterator[Exponent]:
        return iter(self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def substitute(self, i: int, value) -> "Polynomial":
        """Set ``x_i := value``; the result lives in the remaining n-1 variables."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for {self.n} variables")
        value = Q(value)
        out: Dict[Exponent, Rational] = {}
        for e, c in self.terms.items():
            rest = e[:i] + e[i + 1:]
            s = out.get(rest, 0) + c * value ** e[i]
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
        return Polynomial._raw(self.n - 1, out)

    def evaluate(self, point: Sequence) -> Rational:
        if len(point) != self.n:
            raise ValueError("point has the wrong length")
        pt = [Q(v) for v in point]
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def insert_variable(self, pos: int) -> "Polynomial":
        """View the polynomial in n+1 variables with a new variable at ``pos``."""
        return Polynomial._raw(self.n + 1, {e[:pos] + (0,) + e[pos:]: c for e, c in self.terms.items()})

    def drop_variable(self, pos: int) -> "Polynomial":
        """Inverse of :meth:`insert_variable`; the variable must not occur."""
        if self.degree_in(pos) > 0:
            raise ValueError(f"variable {pos} occurs in the polynomial")
        return Polynomial._raw(self.n - 1, {e[:pos] + e[pos + 1:]: c for e, c in self.terms.items()})

    def to_string(self, names: Optional[Sequence[str]] = None, order: Optional[TermOrder] = None) -> str:
        if not self.terms:
            return "0"
        names = names or default_names(self.n)
        order = order or grlex(self.n)
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i in reversed(range(self.n)) if (k := e[i])
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text


def leading_exponent(f: Polynomial, order: TermOrder) -> Exponent:
    return f.leading_exponent(order)


def polys(texts: Iterable[str], names: Optional[Sequence[str]] = None, n: Optional[int] = None):
    """Parse several polynomials at once."""
    return [Polynomial.parse(t, names, n) for t in texts]
