"""Random net terms for termination and round-trip tests."""

import random
from fractions import Fraction

from wedgelab.netcalc.terms import (Apply, Base, Complement, DirectSum, Tensor, Twist, Wedge, boost_symbol,
                                    rotation_symbol, term_size)

SYMBOLS = ["g", "h", "-1", "e"]


def random_symbol(rnd: random.Random) -> str:
    k = rnd.randrange(3)
    if k == 0:
        return rotation_symbol(Fraction(rnd.randrange(-8, 9), rnd.choice([1, 2, 4])))
    if k == 1:
        return boost_symbol(Fraction(rnd.randrange(-4, 5), rnd.choice([1, 2, 3])))
    return rnd.choice(SYMBOLS)


def random_word(rnd: random.Random, max_len: int = 3) -> tuple:
    return tuple(random_symbol(rnd) for _ in range(rnd.randrange(max_len + 1)))


def random_term(rnd: random.Random, nets, budget: int):
    """A term of size at most ``budget`` (budget >= 1)."""
    if budget <= 1 or rnd.random() < 0.25:
        return Base(rnd.choice(nets), Wedge(rnd.choice(["W", "W1", "W2"]), random_word(rnd)))
    k = rnd.randrange(5 if budget >= 3 else 3)
    if k == 0:
        return Apply(random_word(rnd, 2) or ("g",), random_term(rnd, nets, budget - 1))
    if k == 1:
        return Complement(random_term(rnd, nets, budget - 1))
    if k == 2:
        return Twist(random_term(rnd, nets, budget - 1))
    a = random_term(rnd, nets, rnd.randrange(1, budget - 1))
    b = random_term(rnd, nets, max(1, budget - 1 - term_size(a)))
    return (DirectSum if k == 3 else Tensor)(a, b)
