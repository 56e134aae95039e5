"""Ring contexts and sparse multivariate polynomials.

A :class:`Polynomial` is a dict from exponent tuples to nonzero field
elements, tied to a :class:`RingContext` that fixes the variable list, the
monomial order and the coefficient field.  Values are immutable by
convention: no method mutates ``terms`` after construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .fields import QQ, Field, FieldError, PrimeField, QuadraticField, Rationals
from .orders import GREVLEX, MonomialOrder

__all__ = [
    "ContextError",
    "RingContext",
    "Polynomial",
    "make_ring_context",
    "poly_arith",
    "substitute",
    "differentiate",
    "evaluate",
    "to_special_fiber",
    "special_fiber_context",
    "change_field",
]

PI = "pi"
PI_MODES = ("variable", "field-element", "absent")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ContextError(ValueError):
    """Bad ring context, or operands living in incompatible contexts."""


@dataclass(frozen=True)
class RingContext:
    variables: tuple[str, ...]
    order: MonomialOrder = GREVLEX
    field: Field = QQ
    pi_mode: str = "absent"
    _key: Callable = dc_field(init=False, repr=False, compare=False, hash=False)
    _index: dict = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        for name in variables:
            if not isinstance(name, str) or not _IDENT.match(name):
                raise ContextError(f"invalid variable name {name!r}")
        if len(set(variables)) != len(variables):
            dupes = sorted({v for v in variables if variables.count(v) > 1})
            raise ContextError(f"duplicate variable names: {', '.join(dupes)}")
        if self.pi_mode not in PI_MODES:
            raise ContextError(f"unknown pi mode {self.pi_mode!r}")
        if PI in variables and self.pi_mode != "variable":
            raise ContextError("'pi' is reserved for the uniformizer (pi-mode=variable)")
        if self.pi_mode == "variable" and PI not in variables:
            raise ContextError("pi-mode=variable needs a variable named 'pi'")
        if self.pi_mode == "field-element" and not isinstance(self.field, QuadraticField):
            raise ContextError("pi-mode=field-element needs the quadratic extension")
        if self.order.kind == "block" and self.order.block > len(variables):
            raise ContextError("block size exceeds the number of variables")
        object.__setattr__(self, "_key", self.order.key_function())
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    # -- basic accessors -------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def monomial_key(self, m):
        return self._key(m)

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {m: self.field.one}, _trusted=True)

    def vars(self, *names: str) -> list["Polynomial"]:
        return [self.var(n) for n in names]

    @property
    def pi(self) -> "Polynomial":
        if self.pi_mode == "variable":
            return self.var(PI)
        if self.pi_mode == "field-element":
            return self.const(self.field.generator)
        raise ContextError("this context has no uniformizer")

    def const(self, c) -> "Polynomial":
        c = self.field.element(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c}, _trusted=True)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def parse(self, src: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(src, self)

    # -- derived contexts ------------------------------------------------
    def with_order(self, order: MonomialOrder) -> "RingContext":
        return RingContext(self.variables, order, self.field, self.pi_mode)

    def with_variables(self, variables: Iterable[str], order: MonomialOrder | None = None) -> "RingContext":
        variables = tuple(variables)
        pi_mode = self.pi_mode
        if pi_mode == "variable" and PI not in variables:
            pi_mode = "absent"
        elif pi_mode == "absent" and PI in variables:
            pi_mode = "variable"
        return RingContext(variables, order or self.order, self.field, pi_mode)

    def fresh_name(self, base: str = "w") -> str:
        name = base
        while name in self._index or name == PI:
            name += "_"
        return name

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.variables)}] ({self.order}, pi={self.pi_mode})"


def make_ring_context(variables, order: MonomialOrder = GREVLEX, field: Field = QQ,
                      pi_mode: str | None = None) -> RingContext:
    """Build a context; ``pi_mode`` defaults to "variable" iff a variable is named pi."""
    variables = tuple(variables)
    if not variables:
        raise ContextError("a ring context needs at least one variable")
    if pi_mode is None:
        pi_mode = "variable" if PI in variables else "absent"
    return RingContext(variables, order, field, pi_mode)


def _convert(src: Field, dst: Field, c):
    if src == dst:
        return c
    if isinstance(src, Rationals):
        return dst.from_rational(c)
    if isinstance(src, PrimeField) and isinstance(dst, PrimeField) and src.p == dst.p:
        return c
    raise ContextError(f"cannot map coefficients from {src} to {dst}")


class Polynomial:
    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping | None = None, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms if terms is not None else {}
        else:
            F = ctx.field
            n = ctx.nvars
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ContextError(f"bad exponent vector {m} for {n} variables")
                c = F.element(c)
                if not F.is_zero(c):
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # -- coercion --------------------------------------------------------
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextError("polynomials live in different ring contexts")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.const(other)
        if isinstance(self.ctx.field, QuadraticField) and isinstance(other, tuple):
            return self.ctx.const(other)
        raise TypeError(f"cannot combine a polynomial with {type(other).__name__}")

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        F = self.ctx.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = F.add(s, c)
                if F.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
        return Polynomial(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.ctx.field
        return Polynomial(self.ctx, {m: F.neg(c) for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        F = self.ctx.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = F.mul(c1, c2)
                s = out.get(m)
                out[m] = c if s is None else F.add(s, c)
        return Polynomial(self.ctx, {m: c for m, c in out.items() if not F.is_zero(c)}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ctx.field
        c = F.element(c)
        if F.is_zero(c):
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: F.mul(v, c) for m, v in self.terms.items()}, _trusted=True)

    # -- structure -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ctx.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, var: str) -> int:
        i = self.ctx.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def support(self) -> set[str]:
        names = self.ctx.variables
        return {names[i] for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[tuple, object]]:
        key = self.ctx.monomial_key if order is None else order.key_function()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        key = self.ctx.monomial_key if order is None else order.key_function()
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder | None = None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ctx.field.inv(self.leading_coefficient(order)))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ctx.nvars, self.ctx.field.zero)

    # -- calculus and evaluation ------------------------------------------
    def diff(self, var: str) -> "Polynomial":
        return differentiate(self, var)

    def subs(self, bindings: Mapping, target: RingContext | None = None) -> "Polynomial":
        return substitute(self, bindings, target)

    def __call__(self, **point):
        return evaluate(self, point)

    def to_context(self, ctx: RingContext) -> "Polynomial":
        """Re-express in ``ctx`` by variable name; absent variables must not occur."""
        if ctx == self.ctx:
            return self
        src = self.ctx.variables
        used = [i for i in range(len(src)) if any(m[i] for m in self.terms)]
        pos = {}
        for i in used:
            name = src[i]
            if name not in ctx:
                raise ContextError(f"variable {name!r} does not exist in the target context")
            pos[i] = ctx.index(name)
        n = ctx.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i in used:
                e[pos[i]] = m[i]
            out[tuple(e)] = _convert(self.ctx.field, ctx.field, c)
        return Polynomial(ctx, out, _trusted=False)

    # -- printing --------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# -- printing ---------------------------------------------------------------

def _monomial_text(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _signed_coefficient(F: Field, c) -> tuple[bool, str]:
    """Split ``c`` into (negative?, magnitude text) for term printing."""
    if isinstance(F, Rationals):
        return c < 0, F.format(abs(c))
    if isinstance(F, QuadraticField):
        alpha, beta = c
        if beta == 0:
            return alpha < 0, QQ.format(abs(alpha))
        if alpha == 0:
            mag = abs(beta)
            return beta < 0, "pi" if mag == 1 else f"{QQ.format(mag)}*pi"
        return False, f"({F.format(c)})"
    return False, F.format(c)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms in descending context order, parseable back."""
    if not f.terms:
        return "0"
    names = f.ctx.variables
    out = []
    for i, (m, c) in enumerate(f.sorted_terms()):
        neg, mag = _signed_coefficient(f.ctx.field, c)
        mono = _monomial_text(names, m)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


# -- operation-level API ----------------------------------------------------

def poly_arith(op: str, f: Polynomial, g=None) -> Polynomial:
    if op == "neg":
        return -f
    if g is None:
        raise ValueError(f"{op} needs a second operand")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def substitute(f: Polynomial, bindings: Mapping, target: RingContext | None = None) -> Polynomial:
    """Ring homomorphism sending bound variables to polynomials of ``target``.

    Unbound variables map to the variable of the same name in ``target``.
    """
    target = target or f.ctx
    images = []
    for name in f.ctx.variables:
        if name in bindings:
            img = bindings[name]
            if not isinstance(img, Polynomial):
                img = target.const(img)
            elif img.ctx != target:
                raise ContextError(f"image of {name!r} is not in the target context")
            images.append(img)
        else:
            images.append(None)
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            img = images[i]
            if img is None:
                name = f.ctx.variables[i]
                if name not in target:
                    raise ContextError(f"unbound variable {name!r} missing from target context")
                img = target.var(name)
            powers[key] = img ** e
        return powers[key]

    result = target.zero()
    for m, c in f.terms.items():
        term = target.const(_convert(f.ctx.field, target.field, c))
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def differentiate(f: Polynomial, var: str) -> Polynomial:
    i = f.ctx.index(var)
    F = f.ctx.field
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            d = F.mul(c, F.from_int(e))
            if not F.is_zero(d):
                out[m[:i] + (e - 1,) + m[i + 1:]] = d
    return Polynomial(f.ctx, out, _trusted=True)


def evaluate(f: Polynomial, point: Mapping):
    F = f.ctx.field
    values = []
    for name in f.ctx.variables:
        if name not in point:
            raise ContextError(f"no value assigned to {name!r}")
        values.append(F.element(point[name]))
    total = F.zero
    for m, c in f.terms.items():
        t = c
        for v, e in zip(values, m):
            for _ in range(e):
                t = F.mul(t, v)
        total = F.add(total, t)
    return total


def special_fiber_context(ctx: RingContext, p: int) -> RingContext:
    if ctx.pi_mode != "variable" or not isinstance(ctx.field, Rationals):
        raise ContextError("special fiber needs a rational context with pi as a variable")
    order = ctx.order
    if order.kind == "block" and ctx.index(PI) < order.block:
        order = MonomialOrder("block", order.block - 1)
    keep = tuple(v for v in ctx.variables if v != PI)
    return RingContext(keep, order, PrimeField(p), "absent")


def to_special_fiber(f: Polynomial, p: int, target: RingContext | None = None) -> Polynomial:
    """Set pi to 0 and reduce the coefficients modulo ``p``."""
    target = target or special_fiber_context(f.ctx, p)
    ipi = f.ctx.index(PI)
    F = target.field
    out = {}
    for m, c in f.terms.items():
        if m[ipi]:
            continue
        if c.denominator % p == 0:
            raise FieldError(f"coefficient {c} has a denominator divisible by {p}")
        r = F.from_rational(c)
        if r:
            mm = m[:ipi] + m[ipi + 1:]
            out[mm] = F.add(out.get(mm, 0), r)
    return Polynomial(target, {m: c for m, c in out.items() if c}, _trusted=True)


def change_field(f: Polynomial, field: Field) -> Polynomial:
    """Map coefficients into ``field`` (the rationals reduce into a prime field)."""
    ctx = RingContext(f.ctx.variables, f.ctx.order, field, f.ctx.pi_mode)
    return f.to_context(ctx)
