"""Jacobian-criterion smoothness, normal-crossings and reducedness certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .ideal import Ideal, ideal_equal, intersect, krull_dimension, sum_with_pruning
from .polynomial import ContextError, Polynomial, RingContext

__all__ = [
    "PolyMatrix",
    "SmoothnessVerdict",
    "CrossingRecord",
    "CrossingsReport",
    "DuplicateComponentError",
    "jacobian",
    "minors_ideal",
    "smoothness_check",
    "crossings_check",
    "reduced_union_check",
]


class DuplicateComponentError(ValueError):
    pass


class PolyMatrix:
    """Rectangular matrix of polynomials sharing one context."""

    def __init__(self, ctx: RingContext, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must have equal length")
        for r in rows:
            for e in r:
                if e.ctx != ctx:
                    raise ContextError("matrix entries must share the context")
        self.ctx = ctx
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [[self.rows[i][j] for j in col_perm] for i in row_perm])

    def determinant(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Polynomial:
        rows = tuple(range(self.shape[0])) if rows is None else tuple(rows)
        cols = tuple(range(self.shape[1])) if cols is None else tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("determinant needs a square selection")
        return _det(self, rows, cols, {})

    def __repr__(self):
        return "PolyMatrix(" + "; ".join(", ".join(str(e) for e in r) for r in self.rows) + ")"


def _det(M: PolyMatrix, rows: tuple, cols: tuple, memo: dict) -> Polynomial:
    """Cofactor expansion along the first selected row, memoized on (rows, cols)."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if not rows:
        result = M.ctx.one()
    elif len(rows) == 1:
        result = M.rows[rows[0]][cols[0]]
    else:
        result = M.ctx.zero()
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            entry = M.rows[r0][c]
            if entry.is_zero():
                continue
            sub = _det(M, rest, cols[:k] + cols[k + 1:], memo)
            if sub.is_zero():
                continue
            term = entry * sub
            result = result - term if k % 2 else result + term
    memo[key] = result
    return result


def jacobian(I: Ideal, variables: Sequence[str] | None = None) -> PolyMatrix:
    """Matrix of partials of the listed generators (not a Groebner basis)."""
    ctx = I.ctx
    variables = list(ctx.variables if variables is None else variables)
    for v in variables:
        ctx.index(v)
    return PolyMatrix(ctx, [[g.diff(v) for v in variables] for g in I.generators])


def minors_ideal(M: PolyMatrix, size: int) -> Ideal:
    """Ideal of all ``size`` x ``size`` minors; zero and repeated minors are dropped."""
    nrows, ncols = M.shape
    if not 0 <= size <= min(nrows, ncols):
        raise ValueError(f"minor size {size} out of range for a {nrows}x{ncols} matrix")
    memo: dict = {}
    gens, seen = [], set()
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            d = _det(M, rows, cols, memo)
            if not d.is_zero() and d not in seen:
                seen.add(d)
                gens.append(d)
    return Ideal(M.ctx, gens)


@dataclass
class SmoothnessVerdict:
    status: str  # smooth | singular | empty | inconclusive
    dimension: int
    singular_locus: Ideal
    notes: str = ""

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"


def smoothness_check(I: Ideal, variables: Sequence[str] | None = None,
                     expected_dim: int | None = None) -> SmoothnessVerdict:
    """Jacobian criterion over the algebraic closure of the coefficient field.

    Smooth means: ``dim I == expected_dim`` and ``I`` plus the
    codimension-sized minors of the Jacobian generate the unit ideal.
    """
    ctx = I.ctx
    nvars = ctx.nvars
    if expected_dim is None:
        raise ValueError("expected dimension is required")
    if not 0 <= expected_dim <= nvars:
        raise ValueError(f"expected dimension {expected_dim} out of range 0..{nvars}")
    unit = Ideal(ctx, [ctx.one()])
    d = krull_dimension(I)
    if d == -1:
        return SmoothnessVerdict("empty", -1, unit, "the ideal is the unit ideal")
    if d != expected_dim:
        return SmoothnessVerdict("inconclusive", d, I,
                                 f"dimension {d} differs from expected {expected_dim}")
    codim = nvars - expected_dim
    J = jacobian(I, variables)
    if codim > min(J.shape):
        return SmoothnessVerdict("singular", d, I,
                                 f"Jacobian of shape {J.shape} cannot reach rank {codim}")
    minors = minors_ideal(J, codim)
    gb = I._extend_basis(minors.generators)
    S = Ideal(ctx, list(I.generators) + list(minors.generators))
    S._gb[ctx.order] = tuple(gb)
    if S.is_unit():
        return SmoothnessVerdict("smooth", d, unit, f"codimension {codim}, {len(minors)} minors")
    return SmoothnessVerdict("singular", d, S,
                             "Jacobian-singular evidence: the minors do not generate the unit ideal")


@dataclass
class CrossingRecord:
    subset: tuple[int, ...]
    dimension: int
    verdict: SmoothnessVerdict
    expected_dimension: int
    passed: bool


@dataclass
class CrossingsReport:
    records: list[CrossingRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> str:
        parts = []
        for r in self.records:
            label = "+".join(str(i + 1) for i in r.subset)
            parts.append(f"{label}:{r.verdict.status}/dim {r.dimension} (want {r.expected_dimension})")
        return "; ".join(parts)


def crossings_check(components: Sequence[Ideal], expected_top_dim: int,
                    variables: Sequence[str] | None = None,
                    allow_empty: Sequence[tuple[int, ...]] = ()) -> CrossingsReport:
    """Check every partial sum of components is smooth of codimension-additive dimension."""
    if not components:
        raise ValueError("no components given")
    ctx = components[0].ctx
    for C in components:
        if C.ctx != ctx:
            raise ContextError("components must share the ring context")
    for i, j in combinations(range(len(components)), 2):
        if ideal_equal(components[i], components[j]):
            raise DuplicateComponentError(f"components {i + 1} and {j + 1} are equal")
    allowed = {tuple(s) for s in allow_empty}
    report = CrossingsReport()
    for k in range(1, len(components) + 1):
        for subset in combinations(range(len(components)), k):
            summed = sum_with_pruning([components[i] for i in subset])
            want = expected_top_dim - (k - 1)
            verdict = smoothness_check(summed, variables, max(want, 0))
            if verdict.status == "empty":
                ok = subset in allowed
            else:
                ok = verdict.status == "smooth" and verdict.dimension == want
            report.records.append(CrossingRecord(subset, verdict.dimension, verdict, want, ok))
    return report


def reduced_union_check(J: Ideal, components: Sequence[Ideal]) -> bool:
    """``J`` equals the intersection of the components (so ``V(J)`` is their reduced union)."""
    if not components:
        raise ValueError("no components given")
    acc = components[0]
    for C in components[1:]:
        acc = intersect(acc, C)
    return ideal_equal(J, acc)
