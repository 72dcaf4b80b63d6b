"""Varieties used across the test suite, written as canonical equations.

Variables are X < Y < Z (indices 0, 1, 2).
"""
from escalier.algebra import grlex, lex, polys
from escalier.planes import Variety, from_general_equations


def plane(*rows):
    return from_general_equations([r[:-1] for r in rows], [r[-1] for r in rows])


def variety(*planes):
    return Variety(planes[0].n, planes)


# two skew lines, one free in X and one free in Y; graded lex
SKEW_PAIR = variety(plane([-1, 1, 0, 0], [0, 0, 1, -1]),     # Y - X, Z - 1
                    plane([1, 0, 0, 0], [0, -1, 1, 0]))      # X, Z - Y
SKEW_PAIR_ORDER = grlex(3)
SKEW_PAIR_BASIS = ["YX - X^2", "ZX - YX + X^2 - X", "ZY - Y^2 + YX - X", "Z^2 - ZY + ZX - Z + Y - X"]

# three lines in the hyperplanes X = 1, 2, 3; lex
STACKED_TRIPLE = variety(plane([1, 0, 0, -1], [0, 0, 1, -3]),   # X - 1, Z - 3
                         plane([1, 0, 0, -2], [0, -1, 1, 1]),   # X - 2, Z - Y + 1
                         plane([1, 0, 0, -3], [0, 1, 0, -4]))   # X - 3, Y - 4
STACKED_TRIPLE_ORDER = lex(3)
STACKED_TRIPLE_BASIS = [
    "X^3 - 6X^2 + 11X - 6",
    "YX^2 - 3YX + 2Y - 4X^2 + 12X - 8",
    "ZX - 3Z + YX - Y - 7X + 13",
    "2ZY - 4ZX^2 + 12ZX - 8Z - Y^2X^2 + Y^2X + 7YX^2 - 13YX",
]

# two lines, both free in X; lex
PARALLEL_PAIR = variety(plane([-1, 1, 0, 0], [0, 0, 1, -1]),    # Y - X, Z - 1
                        plane([-2, 1, 0, 0], [0, 0, 1, -2]))    # Y - 2X, Z - 2
PARALLEL_PAIR_ORDER = lex(3)
PARALLEL_PAIR_BASIS = ["Y^2 - 3YX + 2X^2", "ZX - Y", "ZY - 3Y + 2X", "Z^2 - 3Z + 2"]

# five lines covering every free variable; lex
MIXED_FIVE = variety(plane([-1, 1, 0, 0], [0, 0, 1, -1]),       # Y - X, Z - 1
                     plane([-1, 1, 0, 0], [0, 0, 1, -2]),       # Y - X, Z - 2
                     plane([1, 0, 0, -2], [0, -1, 1, 1]),       # X - 2, Z - Y + 1
                     plane([1, 0, 0, -1], [0, 0, 1, -3]),       # X - 1, Z - 3
                     plane([1, 0, 0, -3], [0, 1, 0, -4]))       # X - 3, Y - 4
MIXED_FIVE_ORDER = lex(3)
# reference generators; the term written X4 is taken to be X^4
MIXED_FIVE_BASIS = [
    "YX^3 - 6YX^2 + 11YX - 6Y - X^4 + 6X^3 - 11X^2 + 6X",
    "Y^2X^2 - 3Y^2X + 2Y^2 - YX^3 - YX^2 + 10YX - 8Y + 4X^3 - 12X^2 + 8X",
    "ZYX - 3ZY - ZX^2 + 3ZX + Y^2X - Y^2 - YX^2 - 6YX + 13Y + 7X^2 - 13X",
    "ZY^2 - ZYX - 4ZY + 4ZX - Y^3X + Y^3 + Y^2X^2 + 7Y^2X - 11Y^2 - 8YX^2 - 5YX + 28Y + 16X^2 - 28X",
    "Z^2X^2 - 4Z^2X + 3Z^2 + ZY^2X^3 - 4ZY^2X^2 + 5ZY^2X - 2ZY^2 - ZYX^4 - ZYX^3 + 18ZYX^2 - 33ZYX"
    " + 17ZY + 5ZX^4 - 23ZX^3 + 32ZX^2 - 5ZX - 9Z - 2Y^2X^3 + 10Y^2X^2 - 14Y^2X + 6Y^2 + 2YX^4"
    " - 42YX^2 + 88YX - 48Y - 10X^4 + 56X^3 - 92X^2 + 40X + 6",
    "2Z^2Y - 3Z^2X + Z^2 - ZY^2X^2 + ZY^2X + ZYX^3 + 4ZYX^2 - 8ZYX - 3ZY - 5ZX^3 + 8ZX^2 + 6ZX - 3Z"
    " + 2Y^2X^2 - 4Y^2X + 2Y^2 - 2YX^3 - 6YX^2 + 24YX - 16Y + 10X^3 - 26X^2 + 14X + 2",
    "Z^3X - 3Z^3 + Z^2Y^2X^2 - 3Z^2Y^2X + 2Z^2Y^2 - Z^2YX^3 - 2Z^2YX^2 + 16Z^2YX - 23Z^2Y + 5Z^2X^3"
    " - 18Z^2X^2 + 20Z^2X + 15Z^2 - 2ZY^2X^2 + 14ZY^2X - 12ZY^2 + 2ZYX^3 - 4ZYX^2 - 64ZYX + 108ZY"
    " - 10ZX^3 + 76ZX^2 - 106ZX - 24Z - 12Y^2X + 12Y^2 + 12YX^2 + 48YX - 96Y - 60X^2 + 96X + 12",
]

FIXTURES = {
    "skew_pair": (SKEW_PAIR, SKEW_PAIR_ORDER),
    "stacked_triple": (STACKED_TRIPLE, STACKED_TRIPLE_ORDER),
    "parallel_pair": (PARALLEL_PAIR, PARALLEL_PAIR_ORDER),
    "mixed_five": (MIXED_FIVE, MIXED_FIVE_ORDER),
}
