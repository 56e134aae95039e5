"""Ideals with a cached reduced Groebner basis, and the derived operations."""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from typing import Iterable, Sequence

from . import groebner as _gb
from .groebner import GBTrace, ResourceExhausted
from .orders import MonomialOrder, block_order
from .polynomial import ContextError, Polynomial, RingContext

__all__ = [
    "Ideal",
    "ResourceExhausted",
    "GBTrace",
    "normal_form",
    "reduced_groebner_basis",
    "ideal_membership",
    "ideal_equal",
    "eliminate",
    "intersect",
    "saturate",
    "radical_membership",
    "krull_dimension",
    "use_gb_cache",
    "max_pairs_limit",
]

_active_cache: contextvars.ContextVar = contextvars.ContextVar("lmv_gb_cache", default=None)
_max_pairs: contextvars.ContextVar = contextvars.ContextVar("lmv_max_pairs", default=_gb.DEFAULT_MAX_PAIRS)


@contextmanager
def use_gb_cache(cache):
    """Route Groebner basis computations through ``cache`` (see :mod:`lmv.cache`)."""
    token = _active_cache.set(cache)
    try:
        yield cache
    finally:
        _active_cache.reset(token)


@contextmanager
def max_pairs_limit(limit: int | None):
    token = _max_pairs.set(limit)
    try:
        yield
    finally:
        _max_pairs.reset(token)


class Ideal:
    """Finitely generated ideal of a polynomial ring.

    Generators are kept as given (zero generators dropped); the reduced
    Groebner basis is computed on demand and cached per monomial order.
    """

    def __init__(self, ctx: RingContext, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ctx.const(g)
            if g.ctx != ctx:
                raise ContextError("ideal generators must share the ring context")
            if not g.is_zero():
                gens.append(g)
        self.ctx = ctx
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict = {}
        self.last_trace: GBTrace | None = None

    @classmethod
    def parse(cls, ctx: RingContext, sources: Iterable[str]) -> "Ideal":
        return cls(ctx, [ctx.parse(s) for s in sources])

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({gens})"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ctx, self.generators + tuple(extra))

    def to_context(self, ctx: RingContext) -> "Ideal":
        return Ideal(ctx, [g.to_context(ctx) for g in self.generators])

    # -- Groebner machinery ----------------------------------------------
    def groebner_basis(self, order: MonomialOrder | None = None, *, seed: int | None = None,
                       trace: GBTrace | None = None) -> list[Polynomial]:
        order = order or self.ctx.order
        if seed is None and order in self._gb:
            return list(self._gb[order])
        ctx = self.ctx if order == self.ctx.order else self.ctx.with_order(order)
        cache = _active_cache.get()
        if cache is not None and seed is None:
            basis = cache.lookup_or_compute(self, order, lambda: self._compute(order, ctx, None, trace))
        else:
            basis = self._compute(order, ctx, seed, trace)
        basis = tuple(Polynomial(ctx, b.terms, _trusted=True) if b.ctx != ctx else b for b in basis)
        if seed is None:
            self._gb[order] = basis
        return list(basis)

    def _compute(self, order, ctx, seed, trace):
        trace = trace if trace is not None else GBTrace()
        raw = _gb.buchberger(
            [g.terms for g in self.generators],
            order.key_function(),
            self.ctx.field,
            max_pairs=_max_pairs.get(),
            trace=trace,
            seed=seed,
        )
        self.last_trace = trace
        return [Polynomial(ctx, g, _trusted=True) for g in raw]

    def _extend_basis(self, extra: Sequence[Polynomial]) -> list[Polynomial]:
        """Reduced basis of ``self + extra``, reusing this ideal's basis."""
        basis = self.groebner_basis()
        raw = _gb.buchberger(
            [e.terms for e in extra],
            self.ctx.order.key_function(),
            self.ctx.field,
            max_pairs=_max_pairs.get(),
            known_basis=[b.terms for b in basis],
        )
        return [Polynomial(self.ctx, g, _trusted=True) for g in raw]

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None  # type: ignore[assignment]

    def dimension(self) -> int:
        return krull_dimension(self)


def _check_same(I: Ideal, J: Ideal):
    if I.ctx != J.ctx:
        raise ContextError("ideals live in different ring contexts")


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``G`` (divisors tried in list order)."""
    if not G:
        raise ValueError("normal form needs a nonempty divisor list")
    ctx = f.ctx
    order = order or ctx.order
    keys = _gb._KeyCache(order.key_function())
    F = ctx.field
    basis = []
    for g in G:
        if g.ctx != ctx:
            raise ContextError("divisors must share the context of the dividend")
        if g.is_zero():
            continue
        lm = keys.lead(g.terms)
        basis.append((lm, F.inv(g.terms[lm]), g.terms))
    return Polynomial(ctx, _gb.reduce_poly(f.terms, basis, keys, F), _trusted=True)


def reduced_groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    return I.groebner_basis(order)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ctx != I.ctx:
        raise ContextError("polynomial and ideal live in different ring contexts")
    if f.is_zero():
        return True
    gb = I.groebner_basis()
    if not gb:
        return False
    return normal_form(f, gb).is_zero()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _check_same(I, J)
    return I.groebner_basis() == J.groebner_basis()


def _leading_block_context(ctx: RingContext, front: Sequence[str]) -> RingContext:
    rest = [v for v in ctx.variables if v not in front]
    return ctx.with_variables(list(front) + rest, block_order(len(front)))


def eliminate(I: Ideal, k: int) -> Ideal:
    """Intersection of ``I`` with the subring of all but the first ``k`` variables.

    The result lives in the context of the trailing variables (same order
    kind as ``I``'s context, or grevlex when that was a block order).
    """
    ctx = I.ctx
    if not 0 <= k < ctx.nvars:
        raise ValueError(f"cannot eliminate {k} of {ctx.nvars} variables")
    tail = ctx.variables[k:]
    tail_order = ctx.order if ctx.order.kind != "block" else MonomialOrder("grevlex")
    tail_ctx = ctx.with_variables(tail, tail_order)
    if k == 0:
        return Ideal(tail_ctx, [g.to_context(tail_ctx) for g in I.groebner_basis()])
    gb = I.groebner_basis(block_order(k))
    kept = [g for g in gb if all(not any(m[:k]) for m in g.terms)]
    return Ideal(tail_ctx, [g.to_context(tail_ctx) for g in kept])


def _with_aux(ctx: RingContext) -> tuple[RingContext, str]:
    w = ctx.fresh_name("w")
    return _leading_block_context(ctx.with_variables((w,) + ctx.variables), [w]), w


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` cap ``J`` by eliminating w from ``w*I + (1 - w)*J``."""
    _check_same(I, J)
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return Ideal(ctx, [])
    ext, w = _with_aux(ctx)
    wv = ext.var(w)
    gens = [wv * g.to_context(ext) for g in I.generators]
    gens += [(1 - wv) * g.to_context(ext) for g in J.generators]
    elim = eliminate(Ideal(ext, gens), 1)
    return Ideal(ctx, [g.to_context(ctx) for g in elim.generators])


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f^infinity`` by eliminating w from ``I + (1 - w*f)``."""
    if f.ctx != I.ctx:
        raise ContextError("polynomial and ideal live in different ring contexts")
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    ctx = I.ctx
    ext, w = _with_aux(ctx)
    gens = [g.to_context(ext) for g in I.generators]
    gens.append(1 - ext.var(w) * f.to_context(ext))
    elim = eliminate(Ideal(ext, gens), 1)
    return Ideal(ctx, [g.to_context(ctx) for g in elim.generators])


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch test: ``f`` in rad(I) iff ``1`` in ``I + (1 - w*f)``."""
    if f.ctx != I.ctx:
        raise ContextError("polynomial and ideal live in different ring contexts")
    if f.is_zero():
        return True
    ctx = I.ctx
    w = ctx.fresh_name("w")
    ext = ctx.with_variables((w,) + ctx.variables)
    gens = [g.to_context(ext) for g in I.generators]
    gens.append(1 - ext.var(w) * f.to_context(ext))
    return Ideal(ext, gens).is_unit()


def _max_independent(nvars: int, supports: list[int]) -> int:
    """Largest variable set containing no leading-monomial support (branch and bound)."""
    best = 0

    def blocked(chosen: int) -> bool:
        return any(s & ~chosen == 0 for s in supports)

    def search(i: int, chosen: int, size: int):
        nonlocal best
        if size + (nvars - i) <= best:
            return
        if i == nvars:
            best = size
            return
        with_i = chosen | (1 << i)
        if not blocked(with_i):
            search(i + 1, with_i, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best


def krull_dimension(I: Ideal) -> int:
    """Dimension of ``R/I`` read off the leading monomials; -1 for the unit ideal."""
    gb = I.groebner_basis()
    n = I.ctx.nvars
    if not gb:
        return n
    if len(gb) == 1 and gb[0].is_constant():
        return -1
    supports = []
    for g in gb:
        lm = g.leading_monomial()
        supports.append(sum(1 << i for i, e in enumerate(lm) if e))
    return _max_independent(n, supports)


def sum_with_pruning(ideals: Sequence[Ideal]) -> Ideal:
    """Sum of ideals with generators that lie in the span of the others dropped."""
    ctx = ideals[0].ctx
    gens: list[Polynomial] = []
    seen = set()
    for I in ideals:
        _check_same(ideals[0], I)
        for g in I.generators:
            mg = g.monic()
            if mg not in seen:
                seen.add(mg)
                gens.append(g)
    return prune_generators(Ideal(ctx, gens))


def prune_generators(I: Ideal) -> Ideal:
    """Drop generators (last first) that are members of the ideal of the rest."""
    gens = list(I.generators)
    k = len(gens) - 1
    while k >= 0 and len(gens) > 1:
        rest = gens[:k] + gens[k + 1:]
        if ideal_membership(gens[k], Ideal(I.ctx, rest)):
            gens = rest
        k -= 1
    out = Ideal(I.ctx, gens)
    if I._gb:
        out._gb.update(I._gb)
    return out
