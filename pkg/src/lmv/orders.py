"""Monomial orders on exponent tuples.

Every order is exposed through a sort key: ``key(a) > key(b)`` iff the
monomial ``a`` is larger than ``b``.  Keys are injective, so they can stand
in for the monomial in heaps.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["MonomialOrder", "LEX", "GREVLEX", "block_order", "parse_order"]

Monomial = tuple


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "lex" | "grevlex" | "block"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 0:
            raise ValueError("block size must be non-negative")

    def key_function(self):
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.block

        def block_key(m):
            return _grevlex_key(m[:k]) + _grevlex_key(m[k:])

        return block_key

    def key(self, m: Monomial):
        return self.key_function()(m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    @property
    def name(self) -> str:
        return f"block:{self.block}" if self.kind == "block" else self.kind

    def __str__(self) -> str:
        return self.name


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(k: int) -> MonomialOrder:
    """Grevlex on the leading ``k`` variables, ties broken by grevlex on the rest."""
    return MonomialOrder("block", k)


def parse_order(name: str) -> MonomialOrder:
    if name in ("lex", "grevlex"):
        return MonomialOrder(name)
    if name.startswith("block:"):
        try:
            return block_order(int(name.split(":", 1)[1]))
        except ValueError:
            pass
    raise ValueError(f"unknown monomial order {name!r}")
