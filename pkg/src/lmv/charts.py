"""Constructors for the local-model chart ideals.

Naming: ``x3..xn``, ``y3..yn`` for the coordinates of the two columns of
``Y2`` in signature (2, n-2); ``a, b, c`` for the symmetric matrix
``Z1 = [[a, b], [b, c]]``; ``t1, t2, t3`` for the exceptional coordinates
of the blow-up along ``(a, b, c)``; ``y_i_j``/``z_i_j`` for general matrix
entries; ``pi`` for the uniformizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .fields import QQ, Field, PrimeField, QuadraticField
from .ideal import Ideal
from .orders import GREVLEX, MonomialOrder
from .polynomial import Polynomial, RingContext, special_fiber_context, to_special_fiber

__all__ = [
    "ChartSpec",
    "ChartPresentation",
    "CHARTS",
    "ParameterError",
    "general_chart_raw",
    "general_chart_reduced",
    "signature2_chart",
    "kraemer_chart",
    "blowup_projective",
    "blowup_chart",
    "chart_special_fiber",
    "branch_product_fiber",
    "special_fiber_components",
    "branch_equations",
    "semistable_witness",
    "wedge_fiber_strata",
    "chart_relations",
    "symmetry_bindings",
]

CHARTS = ("t1", "t2", "t3")
_EXCEPTIONAL = {"t1": "a", "t2": "b", "t3": "c"}


class ParameterError(ValueError):
    """Chart parameters outside the supported range."""


@dataclass(frozen=True)
class ChartSpec:
    n: int
    r: int = 2
    p: int = 3
    u: int = 1
    chart: str = "base"

    def __post_init__(self):
        check_parameters(self.n, self.r, self.p, self.u)
        if self.chart not in ("base",) + CHARTS:
            raise ParameterError(f"unknown chart {self.chart!r}")

    def as_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "p": self.p, "u": self.u}


def check_parameters(n: int, r: int, p: int, u: int) -> None:
    from .fields import is_prime

    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise ParameterError("p must be an odd prime")
    if not isinstance(u, int) or not 1 <= u < p:
        raise ParameterError("u must satisfy 1 <= u < p")
    if not isinstance(n, int) or n < 3:
        raise ParameterError("n must be at least 3")
    if not isinstance(r, int) or r < 1 or r > n - r:
        raise ParameterError("signature must satisfy 1 <= r <= n - r")


@dataclass
class ChartPresentation:
    name: str
    context: RingContext
    ideal: Ideal
    role_tags: Mapping[str, Polynomial] = field(default_factory=dict)

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators


def _require_signature2(n: int):
    if not isinstance(n, int) or n < 4:
        raise ParameterError("signature (2, n-2) needs n >= 4 (r <= s)")


def _xy(n: int) -> tuple[list[str], list[str]]:
    return [f"x{i}" for i in range(3, n + 1)], [f"y{i}" for i in range(3, n + 1)]


def _context(names: list[str], fld: Field, order: MonomialOrder = GREVLEX) -> RingContext:
    """Context over ``fld``: pi a variable over QQ, the field generator over Q(s), absent over GF(p)."""
    if isinstance(fld, QuadraticField):
        return RingContext(tuple(names), order, fld, "field-element")
    if isinstance(fld, PrimeField):
        return RingContext(tuple(names), order, fld, "absent")
    return RingContext(tuple(names) + ("pi",), order, fld, "variable")


def _two_pi(ctx: RingContext) -> Polynomial:
    if ctx.pi_mode == "absent":
        return ctx.zero()
    return 2 * ctx.pi


def _quadrics(ctx: RingContext, n: int) -> dict[str, Polynomial]:
    xs, ys = _xy(n)
    X = [ctx.var(v) for v in xs]
    Y = [ctx.var(v) for v in ys]
    qx = 1 + sum((v * v for v in X), ctx.zero())
    qy = 1 + sum((v * v for v in Y), ctx.zero())
    p = sum((u * v for u, v in zip(X, Y)), ctx.zero())
    return {"Q(x)": qx, "Q(y)": qy, "P": p}


# -- general signature (r, n - r) --------------------------------------------

def _raw_names(n: int, r: int) -> tuple[list[str], list[str]]:
    ynames = [f"y_{i}_{j}" for i in range(r + 1, n + 1) for j in range(1, r + 1)]
    znames = [f"z_{i}_{j}" for i in range(1, n + 1) for j in range(1, r + 1)]
    return ynames, znames


def _matmul(A, B, zero):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), zero) for j in range(len(B[0]))]
            for i in range(len(A))]


def _transpose(A):
    return [list(row) for row in zip(*A)]


def _dedupe_up_to_sign(polys):
    out, seen = [], set()
    for f in polys:
        if f.is_zero():
            continue
        if f in seen or -f in seen:
            continue
        seen.add(f)
        out.append(f)
    return out


def _raw_matrices(ctx: RingContext, n: int, r: int):
    one, zero = ctx.one(), ctx.zero()
    Y = [[(one if i == j else zero) if i < r else ctx.var(f"y_{i + 1}_{j + 1}")
          for j in range(r)] for i in range(n)]
    Z = [[ctx.var(f"z_{i + 1}_{j + 1}") for j in range(r)] for i in range(n)]
    return Y, Z


def general_chart_raw(n: int, r: int) -> ChartPresentation:
    """Chart from ``Z Y^t = Y Z^t`` and ``Y Z^t Y = 2 pi Y`` with ``Y1 = I_r``."""
    check_parameters(n, r, 3, 1)
    ynames, znames = _raw_names(n, r)
    ctx = _context(ynames + znames, QQ)
    Y, Z = _raw_matrices(ctx, n, r)
    zero = ctx.zero()
    sym = _matmul(Z, _transpose(Y), zero)
    sym2 = _matmul(Y, _transpose(Z), zero)
    gens = [sym[i][j] - sym2[i][j] for i in range(n) for j in range(n)]
    YZtY = _matmul(_matmul(Y, _transpose(Z), zero), Y, zero)
    two_pi = _two_pi(ctx)
    gens += [YZtY[i][j] - two_pi * Y[i][j] for i in range(n) for j in range(r)]
    return ChartPresentation(f"raw({n},{r})", ctx, Ideal(ctx, _dedupe_up_to_sign(gens)))


def _sym_name(i: int, j: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"z_{i}_{j}"


def _reduced_relations(ctx: RingContext, n: int, r: int, zname) -> list[Polynomial]:
    """Entries of ``Z1 (I_r + Y2^t Y2) - 2 pi I_r``."""
    zero, one = ctx.zero(), ctx.one()
    Z1 = [[ctx.var(zname(i + 1, j + 1)) for j in range(r)] for i in range(r)]
    Y2 = [[ctx.var(f"y_{i}_{j + 1}") for j in range(r)] for i in range(r + 1, n + 1)]
    G = _matmul(_transpose(Y2), Y2, zero)
    M = [[G[i][j] + (one if i == j else zero) for j in range(r)] for i in range(r)]
    prod = _matmul(Z1, M, zero)
    two_pi = _two_pi(ctx)
    return [prod[i][j] - (two_pi if i == j else zero) for i in range(r) for j in range(r)]


def general_chart_reduced(n: int, r: int) -> ChartPresentation:
    """Chart in ``Y2`` and symmetric ``Z1``: entries of ``Z1 (I + Y2^t Y2) - 2 pi I``."""
    check_parameters(n, r, 3, 1)
    znames = [f"z_{i}_{j}" for i in range(1, r + 1) for j in range(i, r + 1)]
    ynames, _ = _raw_names(n, r)
    ctx = _context(ynames + znames, QQ)
    gens = _reduced_relations(ctx, n, r, _sym_name)
    return ChartPresentation(f"reduced({n},{r})", ctx, Ideal(ctx, gens))


def chart_reduction_target(raw: ChartPresentation, n: int, r: int) -> Ideal:
    """The ideal the raw chart should equal: Z2 = Y2 Z1^t, Z1 symmetric, reduced relations."""
    ctx = raw.context
    zero = ctx.zero()
    Y, Z = _raw_matrices(ctx, n, r)
    Y2, Z1, Z2 = Y[r:], Z[:r], Z[r:]
    Y2Z1t = _matmul(Y2, _transpose(Z1), zero)
    gens = [Z2[i][j] - Y2Z1t[i][j] for i in range(n - r) for j in range(r)]
    gens += [Z1[i][j] - Z1[j][i] for i in range(r) for j in range(i + 1, r)]
    gens += _reduced_relations(ctx, n, r, lambda i, j: f"z_{i}_{j}")
    return Ideal(ctx, gens)


# -- signature (1, n - 1) ---------------------------------------------------

def kraemer_chart(n: int, fld: Field = QQ) -> ChartPresentation:
    """``a (1 + sum y_c^2) - 2 pi`` in ``y2..yn, a`` after setting ``y1 = 1``."""
    if not isinstance(n, int) or n < 3:
        raise ParameterError("signature (1, n-1) needs n >= 3")
    ys = [f"y{i}" for i in range(2, n + 1)]
    ctx = _context(ys + ["a"], fld)
    q = 1 + sum((ctx.var(v) ** 2 for v in ys), ctx.zero())
    a = ctx.var("a")
    gen = a * q - _two_pi(ctx)
    return ChartPresentation(f"kraemer({n})", ctx, Ideal(ctx, [gen]), {"Q": q, "a": a})


# -- signature (2, n - 2) ---------------------------------------------------

def signature2_chart(n: int, fld: Field = QQ) -> ChartPresentation:
    """Entries of ``Z1 N - 2 pi I_2`` with ``Z1 = [[a, b], [b, c]]``, ``N = [[Q(x), P], [P, Q(y)]]``."""
    _require_signature2(n)
    xs, ys = _xy(n)
    ctx = _context(xs + ys + ["a", "b", "c"], fld)
    qp = _quadrics(ctx, n)
    qx, qy, p = qp["Q(x)"], qp["Q(y)"], qp["P"]
    a, b, c = ctx.vars("a", "b", "c")
    two_pi = _two_pi(ctx)
    gens = [a * qx + b * p - two_pi, a * p + b * qy, b * qx + c * p, b * p + c * qy - two_pi]
    tags = dict(qp, a=a, b=b, c=c)
    return ChartPresentation(f"base({n})", ctx, Ideal(ctx, gens), tags)


def blowup_projective(n: int, fld: Field = QQ) -> ChartPresentation:
    """The six bihomogeneous generators of the blow-up along ``(a, b, c)``."""
    _require_signature2(n)
    xs, ys = _xy(n)
    ctx = _context(xs + ys + ["a", "b", "c", "t1", "t2", "t3"], fld)
    qp = _quadrics(ctx, n)
    qx, qy, p = qp["Q(x)"], qp["Q(y)"], qp["P"]
    a, b, c, t1, t2, t3 = ctx.vars("a", "b", "c", "t1", "t2", "t3")
    gens = [t1 * qx - t3 * qy, t2 * qy + t1 * p, t2 * qx + t3 * p,
            a * t2 - b * t1, a * t3 - c * t1, b * t3 - c * t2]
    tags = dict(qp, t1=t1, t2=t2, t3=t3)
    return ChartPresentation(f"projective({n})", ctx, Ideal(ctx, gens), tags)


def _chart_context(n: int, chart: str, fld: Field) -> RingContext:
    xs, ys = _xy(n)
    extra = {"t1": ["a", "t2", "t3"], "t2": ["b", "t1", "t3"], "t3": ["c", "t1", "t2"]}
    if chart not in extra:
        raise ParameterError(f"unknown chart {chart!r}; expected one of t1, t2, t3")
    return _context(xs + ys + extra[chart], fld)


def blowup_chart(n: int, chart: str, fld: Field = QQ) -> ChartPresentation:
    """Affine chart ``t_i = 1`` of the blow-up."""
    _require_signature2(n)
    ctx = _chart_context(n, chart, fld)
    qp = _quadrics(ctx, n)
    qx, qy, p = qp["Q(x)"], qp["Q(y)"], qp["P"]
    two_pi = _two_pi(ctx)
    if chart == "t1":
        a, t2, t3 = ctx.vars("a", "t2", "t3")
        gens = [t2 * qy + p, qx - t3 * qy, a * (qx + t2 * p) - two_pi]
    elif chart == "t2":
        b, t1, t3 = ctx.vars("b", "t1", "t3")
        gens = [qy + t1 * p, qx + t3 * p, b * (1 - t1 * t3) * p - two_pi]
    else:
        c, t1, t2 = ctx.vars("c", "t1", "t2")
        gens = [t2 * qx + p, qy - t1 * qx, c * (qy + t2 * p) - two_pi]
    tags = dict(qp, exceptional=ctx.var(_EXCEPTIONAL[chart]))
    return ChartPresentation(f"{chart}({n})", ctx, Ideal(ctx, gens), tags)


def chart_relations(n: int, chart: str, ctx: RingContext) -> dict[str, Polynomial]:
    """Dehomogenization of the exceptional coordinates on chart ``t_i = 1``."""
    if chart == "t1":
        a = ctx.var("a")
        return {"b": a * ctx.var("t2"), "c": a * ctx.var("t3")}
    if chart == "t2":
        b = ctx.var("b")
        return {"a": b * ctx.var("t1"), "c": b * ctx.var("t3")}
    if chart == "t3":
        c = ctx.var("c")
        return {"a": c * ctx.var("t1"), "b": c * ctx.var("t2")}
    raise ParameterError(f"unknown chart {chart!r}")


def branch_equations(n: int, chart: str, ctx: RingContext) -> list[Polynomial]:
    """The three local equations whose product is pi up to the unit 2."""
    qp = _quadrics(ctx, n)
    if chart == "t1":
        t2, t3 = ctx.vars("t2", "t3")
        return [ctx.var("a"), t3 - t2 ** 2, qp["Q(y)"]]
    if chart == "t2":
        t1, t3 = ctx.vars("t1", "t3")
        return [ctx.var("b"), 1 - t1 * t3, qp["P"]]
    if chart == "t3":
        t1, t2 = ctx.vars("t1", "t2")
        return [ctx.var("c"), t1 - t2 ** 2, qp["Q(x)"]]
    raise ParameterError(f"unknown chart {chart!r}")


def semistable_witness(n: int, chart: str, ctx: RingContext) -> Polynomial:
    """Product of the branch equations minus ``2 pi``."""
    e1, e2, e3 = branch_equations(n, chart, ctx)
    return e1 * e2 * e3 - _two_pi(ctx)


def simplified_chart(n: int, chart: str, fld: Field = QQ) -> Ideal:
    """Chart ideal with its last generator replaced by the witness form."""
    pres = blowup_chart(n, chart, fld)
    ctx = pres.context
    g1, g2, _ = pres.generators
    return Ideal(ctx, [g1, g2, semistable_witness(n, chart, ctx)])


# -- special fibers ---------------------------------------------------------

def chart_special_fiber(pres: ChartPresentation, p: int) -> Ideal:
    """Reduce every generator mod ``(pi, p)``."""
    sctx = special_fiber_context(pres.context, p)
    return Ideal(sctx, [to_special_fiber(g, p, sctx) for g in pres.generators])


def branch_product_fiber(n: int, chart: str, p: int) -> Ideal:
    """Fiber ideal in its displayed form: first two chart generators and the branch product."""
    _require_signature2(n)
    ctx = _chart_context(n, chart, PrimeField(p))
    gens = list(blowup_chart(n, chart, PrimeField(p)).generators[:2])
    e1, e2, e3 = branch_equations(n, chart, ctx)
    return Ideal(ctx, gens + [e1 * e2 * e3])


def special_fiber_components(n: int, chart: str, p: int) -> list[Ideal]:
    """The three components of the special fiber on a chart, in displayed order."""
    _require_signature2(n)
    ctx = _chart_context(n, chart, PrimeField(p))
    qp = _quadrics(ctx, n)
    qx, qy, P = qp["Q(x)"], qp["Q(y)"], qp["P"]
    m1, m2 = blowup_chart(n, chart, PrimeField(p)).generators[:2]
    if chart == "t1":
        t2, t3 = ctx.vars("t2", "t3")
        comps = [[ctx.var("a"), m1, m2],
                 [t3 - t2 ** 2, m1, qx - t2 ** 2 * qy],
                 [qy, P, qx]]
    elif chart == "t2":
        t1, t3 = ctx.vars("t1", "t3")
        comps = [[ctx.var("b"), m1, m2],
                 [1 - t1 * t3, m1, m2],
                 [P, qy, qx]]
    else:
        t1, t2 = ctx.vars("t1", "t2")
        comps = [[ctx.var("c"), m1, m2],
                 [t1 - t2 ** 2, m1, qy - t2 ** 2 * qx],
                 [qx, P, qy]]
    return [Ideal(ctx, gens) for gens in comps]


def wedge_fiber_strata(n: int, p: int) -> dict[str, Ideal]:
    """Rank strata of the special fiber of the base chart: T0, T2 and the T1 candidate."""
    _require_signature2(n)
    pres = signature2_chart(n, PrimeField(p))
    ctx = pres.context
    a, b, c = ctx.vars("a", "b", "c")
    qx, qy, P = (pres.role_tags[k] for k in ("Q(x)", "Q(y)", "P"))
    T0 = Ideal(ctx, [a, b, c])
    T2 = Ideal(ctx, [qx, P, qy])
    T1 = Ideal(ctx, list(pres.generators) + [a * c - b * b, qx * qy - P * P])
    return {"T0": T0, "T2": T2, "T1-candidate": T1}


def base_special_fiber(n: int, p: int) -> Ideal:
    return signature2_chart(n, PrimeField(p)).ideal


# -- symmetry -------------------------------------------------------------

def symmetry_bindings(n: int, src: RingContext, dst: RingContext) -> dict[str, Polynomial]:
    """Involution x_i <-> y_i, a <-> c, t1 <-> t3 (b, t2 fixed), from ``src`` into ``dst``."""
    swap = {"a": "c", "c": "a", "t1": "t3", "t3": "t1"}
    xs, ys = _xy(n)
    swap.update(dict(zip(xs, ys)))
    swap.update(dict(zip(ys, xs)))
    return {v: dst.var(swap.get(v, v)) for v in src.variables if v != "pi" and swap.get(v, v) in dst}
