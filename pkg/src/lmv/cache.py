"""Content-addressed on-disk cache of reduced Groebner bases."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .ideal import Ideal, use_gb_cache
from .idealfile import IdealFile
from .orders import MonomialOrder
from .polynomial import Polynomial

__all__ = ["ENGINE_VERSION", "CACHE_ENV", "GBCache", "cache_lookup_or_compute", "cache_key"]

ENGINE_VERSION = "lmv-gb-1"
CACHE_ENV = "LMV_CACHE_DIR"

log = logging.getLogger(__name__)


def cache_key(I: Ideal, order: MonomialOrder) -> str:
    ctx = I.ctx
    material = {
        "engine": ENGINE_VERSION,
        "variables": list(ctx.variables),
        "order": order.name,
        "field": ctx.field.descriptor(),
        "pi": ctx.pi_mode,
        "generators": sorted(str(g.monic()) for g in I.generators),
    }
    blob = json.dumps(material, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class GBCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.evictions = 0

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _load(self, path: Path, key: str, I: Ideal, order: MonomialOrder) -> list[Polynomial] | None:
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            if payload.get("engine-version") != ENGINE_VERSION or payload.get("key") != key:
                raise ValueError("stale or mismatched entry")
            ctx = I.ctx.with_order(order)
            stored = IdealFile.from_dict(payload["basis"])
            if stored.context() != ctx:
                raise ValueError("ring mismatch")
            return [ctx.parse(g) for g in stored.generators]
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            log.warning("evicting corrupt cache entry %s: %s", path.name, exc)
            self.evictions += 1
            try:
                path.unlink()
            except FileNotFoundError:
                pass
            return None

    def _store(self, path: Path, key: str, I: Ideal, order: MonomialOrder, basis) -> None:
        payload = {
            "engine-version": ENGINE_VERSION,
            "key": key,
            "basis": IdealFile.from_ideal(I, order, basis).to_dict(),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        os.replace(tmp, path)

    def lookup_or_compute(self, I: Ideal, order: MonomialOrder,
                          compute: Callable[[], list[Polynomial]]) -> list[Polynomial]:
        key = cache_key(I, order)
        path = self.path_for(key)
        basis = self._load(path, key, I, order)
        if basis is not None:
            self.hits += 1
            return basis
        self.misses += 1
        basis = compute()
        self._store(path, key, I, order, basis)
        return basis

    def activate(self):
        """Context manager routing every basis computation through this cache."""
        return use_gb_cache(self)


def cache_lookup_or_compute(I: Ideal, order: MonomialOrder | None = None, cache_dir=None) -> list[Polynomial]:
    """Reduced basis of ``I``, served from ``cache_dir`` when possible."""
    order = order or I.ctx.order
    fresh = Ideal(I.ctx, I.generators)
    if cache_dir is None:
        return fresh.groebner_basis(order)
    with GBCache(cache_dir).activate():
        return fresh.groebner_basis(order)
