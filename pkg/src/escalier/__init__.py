"""Standard sets (Gröbner escaliers) of ideals of finite unions of affine planes."""
from .algebra import Polynomial, Q, TermOrder, compare, grlex, is_product_order, lex, product
from .groebner import GroebnerBasis, Ideal, buchberger, intersect, normal_form
from .planes import AffinePlane, Variety, from_general_equations, generic_fiber, standard_set_of_variety
from .staircase import StandardSet, add

__all__ = [
    "AffinePlane", "GroebnerBasis", "Ideal", "Polynomial", "Q", "StandardSet", "TermOrder", "Variety",
    "add", "buchberger", "compare", "from_general_equations", "generic_fiber", "grlex", "intersect",
    "is_product_order", "lex", "normal_form", "product", "standard_set_of_variety",
]
