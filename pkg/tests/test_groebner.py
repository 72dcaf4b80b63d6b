import pytest
import sympy
from hypothesis import given, settings, strategies as st

from escalier.algebra import Polynomial, eliminating, grlex, lex, polys, product
from escalier.groebner import (
    GroebnerBasis, Ideal, buchberger, canonical_basis_element, corner_set, dehomogenize,
    eliminate, extend_order_prec, homogenize, intersect, intersect_all, is_groebner, is_reduced,
    normal_form, s_polynomial,
)
from escalier.planes import ideal_of_variety
from escalier.staircase import StandardSet
from fixtures import FIXTURES, PARALLEL_PAIR_BASIS, SKEW_PAIR_BASIS, STACKED_TRIPLE_BASIS
from strategies import polynomials

P = Polynomial.parse


def basis_of(texts, order, n=3):
    return buchberger(polys(texts, n=n), order)


@pytest.fixture(scope="module")
def skew_basis():
    V, o = FIXTURES["skew_pair"]
    return ideal_of_variety(V, o)


def test_normal_form_examples(skew_basis):
    assert not normal_form(P("YX - X^2"), skew_basis)
    assert normal_form(Polynomial.constant(3, 1), skew_basis) == Polynomial.constant(3, 1)
    # one step by the generator led by Z^2 in the reference basis
    reference = polys(SKEW_PAIR_BASIS)
    one_step = P("Z^2") - reference[3]
    assert one_step == P("ZY - ZX + Z - Y + X")
    assert normal_form(P("Z^2"), skew_basis) == normal_form(one_step, skew_basis)


def test_normal_form_arity_mismatch(skew_basis):
    with pytest.raises(ValueError):
        normal_form(P("X", n=2), skew_basis)


def test_s_polynomial_examples():
    o = grlex(3)
    assert not s_polynomial(P("X^2", n=2), P("XY", n=2), grlex(2))
    f = P("YX - X^2 + 1")
    assert not s_polynomial(f, f, o)
    s = s_polynomial(P("YX - X^2"), P("ZX - YX + X^2 - X"), o)
    assert s == P("Z") * P("YX - X^2") - P("Y") * P("ZX - YX + X^2 - X")
    assert (1, 1, 1) not in s.terms
    with pytest.raises(ValueError):
        s_polynomial(Polynomial.zero(3), f, o)


def test_buchberger_examples():
    for o in (lex(3), grlex(3)):
        G = basis_of(["Y - X", "Z - 1"], o)
        assert set(G) == set(polys(["Y - X", "Z - 1"]))
    # with X < Y the lead of X + Y is Y, so XY reduces to -X^2
    G = buchberger(polys(["XY", "X + Y"], n=2), lex(2))
    assert set(G) == set(polys(["X + Y", "X^2"], n=2))
    assert len(buchberger([], lex(2))) == 0


def test_reference_bases_reduce_to_ours():
    for name, texts in [("skew_pair", SKEW_PAIR_BASIS), ("stacked_triple", STACKED_TRIPLE_BASIS),
                        ("parallel_pair", PARALLEL_PAIR_BASIS)]:
        V, o = FIXTURES[name]
        G = ideal_of_variety(V, o)
        reference = polys(texts)
        assert is_groebner(reference, o)
        assert buchberger(reference, o) == G
        assert sorted(g.leading_exponent(o) for g in reference) == sorted(G.leads)


def test_parallel_pair_basis_is_verbatim():
    V, o = FIXTURES["parallel_pair"]
    assert set(ideal_of_variety(V, o)) == set(polys(PARALLEL_PAIR_BASIS))


def test_eliminate_examples():
    o = eliminating(lex(1), 1)
    G = buchberger([P("T - X", names=("X", "T")), P("X^2", n=2)], o)
    assert list(eliminate(G, 1)) == [P("X^2", n=1)]
    assert eliminate(G, 0) is G
    with pytest.raises(ValueError):
        eliminate(buchberger(polys(["X"], n=2), lex(2)), 1)


def test_intersect_examples():
    o = lex(2)
    G = intersect(polys(["X"], n=2), polys(["Y"], n=2), o)
    assert list(G) == [P("XY", n=2)]
    with pytest.raises(ValueError):
        intersect(polys(["X"], n=2), polys(["Y"], n=3), o)
    assert intersect_all([], o).is_unit()


def test_intersect_of_stacked_triple():
    V, o = FIXTURES["stacked_triple"]
    G = intersect_all([P.ideal() for P in V], o)
    assert G.generators[0] == P("X^3 - 6X^2 + 11X - 6")


def test_intersect_of_skew_pair(skew_basis):
    G = intersect(polys(["Y - X", "Z - 1"]), polys(["X", "Z - Y"]), grlex(3))
    assert G == skew_basis
    assert G.generators[0] == P("YX - X^2")


def test_homogenize_examples():
    I = homogenize(polys(["Y - X", "Z - 1"]))
    assert set(I.generators) == set(polys(["Y - X", "Z - W"], names=("W", "X", "Y", "Z")))
    back = dehomogenize(I)
    assert set(back.generators) == set(polys(["Y - X", "Z - 1"]))


def test_homogenize_round_trip_on_fixtures():
    for V, o in FIXTURES.values():
        G = ideal_of_variety(V, o)
        H = buchberger(homogenize(G), extend_order_prec(o))
        assert all(g.is_homogeneous() for g in H)
        assert buchberger(dehomogenize(H), o) == G


def test_extend_order_prec():
    assert extend_order_prec(lex(2)) == product(lex(2))


def test_corner_sets():
    V, o = FIXTURES["skew_pair"]
    assert set(corner_set(ideal_of_variety(V, o))) == {(1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)}
    V, o = FIXTURES["parallel_pair"]
    assert set(corner_set(ideal_of_variety(V, o))) == {(0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)}
    assert corner_set(buchberger([], lex(3))) == ()


def test_canonical_basis_elements():
    V, o = FIXTURES["parallel_pair"]
    G = ideal_of_variety(V, o)
    for g, lead in zip(G, G.leads):
        assert canonical_basis_element(G, lead) == g
    assert canonical_basis_element(G, (0, 0, 2)) == P("Z^2 - 3Z + 2")
    D = StandardSet(3, G.leads)
    f = canonical_basis_element(G, (1, 1, 1))
    assert f.leading_exponent(o) == (1, 1, 1) and f.terms[(1, 1, 1)] == 1
    assert all(e in D for e in f.terms if e != (1, 1, 1))
    assert f in G
    with pytest.raises(ValueError):
        canonical_basis_element(G, (1, 0, 0))


def test_canonical_elements_are_independent():
    V, o = FIXTURES["mixed_five"]
    G = ideal_of_variety(V, o)
    betas = [(a, b, c) for a in range(4) for b in range(4) for c in range(4)
             if any(all(x <= y for x, y in zip(l, (a, b, c))) for l in G.leads)][:12]
    fs = [canonical_basis_element(G, b) for b in betas]
    for b, f in zip(betas, fs):
        # the leading monomial of each element appears in no other element
        assert all(b not in g.terms for g in fs if g is not f)


# -- properties --------------------------------------------------------------

ideals3 = st.lists(polynomials(3, max_terms=3, top=1, nonzero=True), min_size=1, max_size=3)
small_orders = st.sampled_from([lex(3), grlex(3), product(grlex(2))])


@settings(max_examples=60, deadline=None)
@given(ideals3, small_orders)
def test_buchberger_output_is_reduced_groebner(gens, o):
    G = buchberger(gens, o)
    assert is_groebner(list(G), o)
    assert is_reduced(G)
    assert all(not normal_form(g, G) for g in gens)
    assert buchberger(list(G), o) == G


def _sympy(f, gens):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) *
               sympy.Mul(*[v ** k for v, k in zip(gens, e)]) for e, c in f.terms.items())


@settings(max_examples=40, deadline=None)
@given(ideals3, st.sampled_from(["lex", "grlex"]))
def test_buchberger_matches_sympy(gens, name):
    x = sympy.symbols("x0:3")
    o = lex(3) if name == "lex" else grlex(3)
    ours = buchberger(gens, o)
    # sympy ranks its generators first-is-largest
    theirs = sympy.groebner([_sympy(g, x) for g in gens], *reversed(x), order=name)
    ours_sym = {sympy.expand(_sympy(g, x)) for g in ours}
    theirs_sym = {sympy.expand(g / sympy.Poly(g, *reversed(x)).LC(order=name)) for g in theirs.exprs}
    assert ours_sym == theirs_sym


@settings(max_examples=40, deadline=None)
@given(ideals3, ideals3, polynomials(3, 2, 2), polynomials(3, 2, 2), small_orders)
def test_intersection_contains_products(I1, I2, a, b, o):
    G = intersect(I1, I2, o)
    f = a * I1[0]
    g = b * I2[0]
    assert not normal_form(f * g, G)
    assert intersect(I2, I1, o) == G


@settings(max_examples=40, deadline=None)
@given(ideals3, small_orders, st.lists(polynomials(3, 2, 2), min_size=3, max_size=3))
def test_leading_exponents_dominate_corners(gens, o, mults):
    G = buchberger(gens, o)
    f = sum((m * g for m, g in zip(mults, G.generators)), Polynomial.zero(3))
    if f:
        lead = f.leading_exponent(o)
        assert any(all(x <= y for x, y in zip(c, lead)) for c in corner_set(G))
    leads = corner_set(G)
    assert not any(a != b and all(x <= y for x, y in zip(a, b)) for a in leads for b in leads)
