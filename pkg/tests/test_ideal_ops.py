import random
from itertools import combinations, product

import pytest
import sympy as sp

from oracles import to_sympy
from lmv.charts import blowup_chart, special_fiber_components, wedge_fiber_strata
from lmv.fields import QQ, PrimeField
from lmv.ideal import (
    Ideal,
    eliminate,
    ideal_equal,
    ideal_membership,
    intersect,
    krull_dimension,
    prune_generators,
    radical_membership,
    saturate,
    sum_with_pruning,
)
from lmv.orders import GREVLEX, LEX
from lmv.polynomial import evaluate, make_ring_context

XY = make_ring_context(["x", "y"])
XYZ = make_ring_context(["x", "y", "z"])


def test_membership_examples():
    x, y = XY.vars("x", "y")
    assert not ideal_membership(XY.one(), Ideal(XY, [x]))
    assert ideal_membership(x * y, Ideal(XY, [x]))
    assert (x * y) in Ideal(XY, [x])


def test_chart_witness_membership():
    pres = blowup_chart(4, "t1")
    ctx = pres.context
    f = ctx.parse("a*(t3 - t2^2)*(1 + y3^2 + y4^2) - 2*pi")
    assert ideal_membership(f, pres.ideal)
    assert not ideal_membership(f + 1, pres.ideal)


def test_equality_examples():
    x, y = XY.vars("x", "y")
    assert ideal_equal(Ideal(XY, [x, y]), Ideal(XY, [x + y, x - y]))
    assert not ideal_equal(Ideal(XY, [x]), Ideal(XY, [x ** 2]))
    assert ideal_equal(Ideal(XY, [XY.one()]), Ideal(XY, [x, 1 - x]))


def test_eliminate_twisted_cubic():
    x, y, z = XYZ.vars("x", "y", "z")
    E = eliminate(Ideal(XYZ, [y - x ** 2, z - x ** 3]), 1)
    assert E.ctx.variables == ("y", "z")
    yy, zz = E.ctx.vars("y", "z")
    target = Ideal(E.ctx, [yy ** 3 - zz ** 2])
    assert ideal_membership(yy ** 3 - zz ** 2, E)
    assert ideal_equal(E, target)


def test_eliminate_nothing():
    x, y, z = XYZ.vars("x", "y", "z")
    I = Ideal(XYZ, [x * y - z, y ** 2 - x])
    E = eliminate(I, 0)
    assert E.groebner_basis() == [g.to_context(E.ctx) for g in I.groebner_basis()]


def test_eliminate_to_zero():
    x, y = XY.vars("x", "y")
    assert eliminate(Ideal(XY, [x - 1]), 1).is_zero()


def test_eliminate_rejects_all():
    with pytest.raises(ValueError):
        eliminate(Ideal(XY, [XY.var("x")]), 2)


def test_elimination_substitution_oracle():
    # parametrized surfaces: every element of the elimination ideal vanishes on the image
    ctx = make_ring_context(["s", "t", "x", "y", "z"])
    s, t, x, y, z = ctx.vars("s", "t", "x", "y", "z")
    param = {"x": s * t, "y": s ** 2 - t, "z": t ** 2 + s}
    I = Ideal(ctx, [x - param["x"], y - param["y"], z - param["z"]])
    E = eliminate(I, 2)
    assert not E.is_zero()
    pts = list(product(range(-2, 3), repeat=2))
    for g in E.generators:
        for sv, tv in pts:
            env = {"s": sv, "t": tv}
            vals = {k: evaluate(v, {**{n: 0 for n in ctx.variables}, **env}) for k, v in param.items()}
            assert evaluate(g, vals) == 0


def test_elimination_matches_sympy_lex():
    ctx = make_ring_context(["u", "x", "y"])
    u, x, y = ctx.vars("u", "x", "y")
    gens = [x - u ** 2 - 1, y - u ** 3 + u]
    E = eliminate(Ideal(ctx, gens), 1)
    syms = sp.symbols("u x y")
    G = sp.groebner([to_sympy(g, syms) for g in gens], *syms, order="lex")
    kept = [e for e in G.exprs if not e.has(syms[0])]
    ours = [to_sympy(g.to_context(ctx), syms) for g in E.groebner_basis()]
    assert sp.groebner(kept, *syms[1:], order="grevlex").exprs == sp.groebner(ours, *syms[1:], order="grevlex").exprs


def test_intersection_examples():
    x, y = XY.vars("x", "y")
    assert ideal_equal(intersect(Ideal(XY, [x]), Ideal(XY, [y])), Ideal(XY, [x * y]))
    I = Ideal(XY, [x ** 2 - y, x * y])
    assert ideal_equal(intersect(I, Ideal(XY, [XY.one()])), I)
    assert intersect(I, Ideal(XY, [])).is_zero()


def _monomial(ctx, e):
    out = ctx.one()
    for v, k in zip(ctx.variables, e):
        out = out * ctx.var(v) ** k
    return out


def _lcm(a, b):
    return tuple(max(p, q) for p, q in zip(a, b))


def test_monomial_intersection_oracle():
    # (m_i) cap (n_j) = (lcm(m_i, n_j)) for monomial ideals
    rng = random.Random(2)
    for _ in range(30):
        A = [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        B = [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        I = Ideal(XYZ, [_monomial(XYZ, a) for a in A])
        J = Ideal(XYZ, [_monomial(XYZ, b) for b in B])
        oracle = Ideal(XYZ, [_monomial(XYZ, _lcm(a, b)) for a in A for b in B])
        assert ideal_equal(intersect(I, J), oracle)


def test_intersection_fiber_n4():
    from lmv.charts import branch_product_fiber
    I1, I2, I3 = special_fiber_components(4, "t1", 3)
    assert ideal_equal(intersect(intersect(I1, I2), I3), branch_product_fiber(4, "t1", 3))


def test_saturation_examples():
    x, y = XY.vars("x", "y")
    assert ideal_equal(saturate(Ideal(XY, [x * y]), x), Ideal(XY, [y]))
    assert saturate(Ideal(XY, [x ** 2, x * y]), x).is_unit()
    assert ideal_equal(saturate(Ideal(XY, [x ** 2 * y]), x), Ideal(XY, [y]))
    with pytest.raises(ValueError):
        saturate(Ideal(XY, [x]), XY.zero())


def test_monomial_saturation_oracle():
    # saturating a monomial ideal by x zeroes the x-exponents
    rng = random.Random(8)
    for _ in range(30):
        A = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        I = Ideal(XYZ, [_monomial(XYZ, a) for a in A])
        oracle = Ideal(XYZ, [_monomial(XYZ, (0,) + a[1:]) for a in A])
        assert ideal_equal(saturate(I, XYZ.var("x")), oracle)


def test_saturation_membership_characterization():
    # f in I : x^inf iff x^k f in I for some k; check both directions on a small ideal
    x, y, z = XYZ.vars("x", "y", "z")
    I = Ideal(XYZ, [x * y - x * z ** 2, x ** 2 * (y + z)])
    S = saturate(I, x)
    for g in S.groebner_basis():
        assert any(ideal_membership(x ** k * g, I) for k in range(6))
    assert ideal_membership(y - z ** 2, S)


def test_radical_examples():
    x, y = XY.vars("x", "y")
    assert radical_membership(x, Ideal(XY, [x ** 2]))
    assert not radical_membership(y, Ideal(XY, [x ** 2]))
    T1 = wedge_fiber_strata(4, 3)["T1-candidate"]
    a, b, c = T1.ctx.vars("a", "b", "c")
    assert radical_membership(a * c - b * b, T1)


def test_dimension_examples():
    assert krull_dimension(Ideal(XYZ, [])) == 3
    assert krull_dimension(Ideal(XYZ, [XYZ.one()])) == -1
    I1 = special_fiber_components(4, "t1", 3)[0]
    assert I1.ctx.nvars == 7
    assert krull_dimension(I1) == 4


def test_monomial_dimension_brute_force():
    # dim of a monomial ideal = largest variable set avoiding every generator support
    ctx = make_ring_context([f"v{i}" for i in range(5)])
    rng = random.Random(6)
    for _ in range(40):
        A = [tuple(rng.randint(0, 2) for _ in range(5)) for _ in range(rng.randint(1, 4))]
        A = [a for a in A if any(a)]
        if not A:
            continue
        I = Ideal(ctx, [_monomial(ctx, a) for a in A])
        best = 0
        for k in range(6):
            for S in combinations(range(5), k):
                if all(any(a[i] and i not in S for i in range(5)) for a in A):
                    best = max(best, k)
        assert krull_dimension(I) == best


def test_dimension_of_hypersurfaces():
    x, y, z = XYZ.vars("x", "y", "z")
    assert krull_dimension(Ideal(XYZ, [x ** 2 + y ** 2 - z])) == 2
    assert krull_dimension(Ideal(XYZ, [x - y, y - z])) == 1
    assert krull_dimension(Ideal(XYZ, [x - 1, y - 2, z])) == 0


def test_pruning_keeps_the_ideal():
    x, y, z = XYZ.vars("x", "y", "z")
    I = Ideal(XYZ, [x, y, x + y, x * z, y ** 2])
    P = prune_generators(I)
    assert len(P.generators) == 2 and ideal_equal(P, I)
    S = sum_with_pruning([Ideal(XYZ, [x, y]), Ideal(XYZ, [y, x * y, z])])
    assert ideal_equal(S, Ideal(XYZ, [x, y, z])) and len(S.generators) == 3


def test_prime_field_membership():
    ctx = make_ring_context(["x"], GREVLEX, PrimeField(3))
    x = ctx.var("x")
    assert ideal_membership(ctx.const(3), Ideal(ctx, [x]))
    assert ideal_membership(x ** 3 - x, Ideal(ctx, [x ** 3 + 2 * x]))
