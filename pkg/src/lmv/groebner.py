"""Buchberger's algorithm on raw sparse polynomials.

Internally a polynomial is a ``dict`` from exponent tuples to coefficients.
Basis entries are ``(lm, poly)`` pairs with ``poly`` monic.  Pairs are
pruned with the Gebauer-Moeller installation of the coprime and chain
criteria and selected by the normal strategy (smallest lcm first).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Callable, Sequence

from .fields import Field, PrimeField

__all__ = [
    "ResourceExhausted",
    "GBTrace",
    "DEFAULT_MAX_PAIRS",
    "reduce_poly",
    "buchberger",
    "spoly",
    "is_groebner",
]

DEFAULT_MAX_PAIRS = 250_000


class ResourceExhausted(RuntimeError):
    """The pair-count ceiling was hit before the basis was complete."""

    def __init__(self, pairs_processed: int, limit: int):
        super().__init__(f"resource-exhausted: processed {pairs_processed} pairs (limit {limit})")
        self.pairs_processed = pairs_processed
        self.limit = limit


@dataclass
class GBTrace:
    pairs_processed: int = 0
    pairs_discarded: int = 0
    reductions: int = 0

    def as_dict(self) -> dict:
        return {
            "pairs_processed": self.pairs_processed,
            "pairs_discarded": self.pairs_discarded,
            "reductions": self.reductions,
        }


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _KeyCache:
    """Memoized negated order keys, so heapq (a min-heap) pops the largest monomial."""

    __slots__ = ("key", "cache")

    def __init__(self, key: Callable):
        self.key = key
        self.cache: dict = {}

    def neg(self, m):
        k = self.cache.get(m)
        if k is None:
            k = tuple(-x for x in self.key(m))
            self.cache[m] = k
        return k

    def lead(self, f):
        return max(f, key=self.key)


def reduce_poly(f: dict, basis: Sequence, keys: _KeyCache, F: Field, trace: GBTrace | None = None) -> dict:
    """Full reduction of ``f`` by ``basis`` (list of ``(lm, lc_inv, poly)``).

    The largest remaining term is treated first; the first divisor in list
    order is used.  Returns the remainder.
    """
    if not f:
        return {}
    f = dict(f)
    neg = keys.neg
    heap = [(neg(m), m) for m in f]
    heapify(heap)
    rem = {}
    steps = 0
    if isinstance(F, PrimeField):
        p = F.p
        while heap:
            m = heappop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            for lm, lcinv, g in basis:
                if all(x <= y for x, y in zip(lm, m)):
                    break
            else:
                rem[m] = c
                continue
            steps += 1
            q = c * lcinv % p
            shift = tuple(y - x for x, y in zip(lm, m))
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple(a + b for a, b in zip(gm, shift))
                old = f.get(nm)
                if old is None:
                    f[nm] = (-q * gc) % p
                    heappush(heap, (neg(nm), nm))
                else:
                    v = (old - q * gc) % p
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
    else:
        add, mul, neg_c, is_zero = F.add, F.mul, F.neg, F.is_zero
        while heap:
            m = heappop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            for lm, lcinv, g in basis:
                if all(x <= y for x, y in zip(lm, m)):
                    break
            else:
                rem[m] = c
                continue
            steps += 1
            q = neg_c(mul(c, lcinv))
            shift = tuple(y - x for x, y in zip(lm, m))
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple(a + b for a, b in zip(gm, shift))
                old = f.get(nm)
                if old is None:
                    f[nm] = mul(q, gc)
                    heappush(heap, (neg(nm), nm))
                else:
                    v = add(old, mul(q, gc))
                    if is_zero(v):
                        del f[nm]
                    else:
                        f[nm] = v
    if trace is not None:
        trace.reductions += steps
    return rem


def _monic(f: dict, lm, F: Field) -> dict:
    c = f[lm]
    if c == F.one:
        return f
    inv = F.inv(c)
    return {m: F.mul(v, inv) for m, v in f.items()}


def spoly(f: tuple, g: tuple, F: Field) -> dict:
    """S-polynomial of two monic basis entries ``(lm, poly)``."""
    (mf, pf), (mg, pg) = f, g
    L = _lcm(mf, mg)
    sf = tuple(a - b for a, b in zip(L, mf))
    sg = tuple(a - b for a, b in zip(L, mg))
    out = {}
    for m, c in pf.items():
        if m != mf:
            out[tuple(a + b for a, b in zip(m, sf))] = c
    for m, c in pg.items():
        if m == mg:
            continue
        nm = tuple(a + b for a, b in zip(m, sg))
        old = out.get(nm)
        if old is None:
            out[nm] = F.neg(c)
        else:
            v = F.sub(old, c)
            if F.is_zero(v):
                del out[nm]
            else:
                out[nm] = v
    return out


def _update(fs, G, B, ih, trace: GBTrace):
    """Gebauer-Moeller update after adding basis element ``ih``."""
    mh = fs[ih][0]
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = fs[ig][0]
        L = _lcm(mh, mg)
        if _coprime(mh, mg) or (
            not any(_divides(_lcm(mh, fs[ix][0]), L) for ix in C)
            and not any(_divides(_lcm(mh, fs[jx][0]), L) for _, jx in D)
        ):
            D.append((ih, ig))
        else:
            trace.pairs_discarded += 1
    E = []
    for _, ig in D:
        if _coprime(mh, fs[ig][0]):
            trace.pairs_discarded += 1
        else:
            E.append((ig, ih))
    B_new = []
    for i, j in B:
        mi, mj = fs[i][0], fs[j][0]
        L = _lcm(mi, mj)
        if not _divides(mh, L) or _lcm(mi, mh) == L or _lcm(mj, mh) == L:
            B_new.append((i, j))
        else:
            trace.pairs_discarded += 1
    B_new.extend(E)
    G_new = [ig for ig in G if not _divides(mh, fs[ig][0])]
    G_new.append(ih)
    return G_new, B_new


def buchberger(
    polys: Sequence[dict],
    key: Callable,
    F: Field,
    *,
    max_pairs: int | None = DEFAULT_MAX_PAIRS,
    trace: GBTrace | None = None,
    seed: int | None = None,
    known_basis: Sequence[dict] = (),
) -> list[dict]:
    """Reduced Groebner basis of ``known_basis + polys``, sorted by descending leading monomial.

    ``known_basis`` must already be a Groebner basis; pairs among its
    elements are skipped.  Returns ``[{0: 1}]``-style unit basis as soon as a
    nonzero constant appears.  ``seed`` randomizes pair selection.
    """
    trace = trace if trace is not None else GBTrace()
    keys = _KeyCache(key)
    rng = random.Random(seed) if seed is not None else None
    fs: list[tuple] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def active():
        return [(fs[k][0], F.one, fs[k][1]) for k in G]

    def unit(nvars):
        return [{(0,) * nvars: F.one}]

    nvars = None
    for f in list(known_basis) + list(polys):
        if f:
            nvars = len(next(iter(f)))
            break
    if nvars is None:
        return []

    for f in known_basis:
        if not f:
            continue
        lm = keys.lead(f)
        f = _monic(f, lm, F)
        if not any(lm):
            return unit(nvars)
        fs.append((lm, f))
        G, B = _update(fs, G, B, len(fs) - 1, trace)
    B = []

    for f in sorted((f for f in polys if f), key=lambda f: (keys.key(keys.lead(f)), len(f))):
        h = reduce_poly(f, active(), keys, F, trace)
        if not h:
            continue
        lm = keys.lead(h)
        if not any(lm):
            return unit(nvars)
        fs.append((lm, _monic(h, lm, F)))
        G, B = _update(fs, G, B, len(fs) - 1, trace)

    while B:
        if max_pairs is not None and trace.pairs_processed >= max_pairs:
            raise ResourceExhausted(trace.pairs_processed, max_pairs)
        if rng is not None:
            idx = rng.randrange(len(B))
        else:
            idx = min(
                range(len(B)),
                key=lambda t: (keys.key(_lcm(fs[B[t][0]][0], fs[B[t][1]][0])), B[t]),
            )
        i, j = B.pop(idx)
        trace.pairs_processed += 1
        s = spoly(fs[i], fs[j], F)
        h = reduce_poly(s, active(), keys, F, trace)
        if not h:
            continue
        lm = keys.lead(h)
        if not any(lm):
            return unit(nvars)
        fs.append((lm, _monic(h, lm, F)))
        G, B = _update(fs, G, B, len(fs) - 1, trace)

    # interreduce to the unique reduced basis
    basis = [fs[k] for k in G]
    basis = [b for b in basis if not any(o is not b and _divides(o[0], b[0]) for o in basis)]
    reduced = []
    for k, (lm, g) in enumerate(basis):
        others = [(o[0], F.one, o[1]) for t, o in enumerate(basis) if t != k]
        tail = dict(g)
        del tail[lm]
        r = reduce_poly(tail, others, keys, F, trace)
        r[lm] = F.one
        reduced.append((lm, r))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return [g for _, g in reduced]


def is_groebner(basis: Sequence[dict], key: Callable, F: Field) -> bool:
    """Check that every S-polynomial of ``basis`` reduces to zero against it."""
    keys = _KeyCache(key)
    entries = []
    for g in basis:
        if not g:
            continue
        lm = keys.lead(g)
        entries.append((lm, _monic(g, lm, F)))
    red = [(lm, F.one, g) for lm, g in entries]
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            if reduce_poly(spoly(entries[a], entries[b], F), red, keys, F):
                return False
    return True
