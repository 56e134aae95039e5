"""Random polynomial generators shared by the property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from lmv.polynomial import Polynomial, RingContext


def random_poly(rng: random.Random, ctx: RingContext, terms: int = 4, degree: int = 3,
                integral: bool = False) -> Polynomial:
    n = ctx.nvars
    out = {}
    for _ in range(rng.randint(0, terms)):
        m = [0] * n
        for _ in range(rng.randint(0, degree)):
            m[rng.randrange(n)] += 1
        if integral:
            c = Fraction(rng.randint(-9, 9))
        else:
            c = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 4, 8)))
        out[tuple(m)] = ctx.field.from_rational(c)
    return Polynomial(ctx, out)
