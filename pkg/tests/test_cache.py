import json

from lmv.cache import ENGINE_VERSION, GBCache, cache_key, cache_lookup_or_compute
from lmv.charts import blowup_chart, branch_product_fiber
from lmv.ideal import Ideal
from lmv.idealfile import IdealFile
from lmv.orders import GREVLEX, LEX
from lmv.pipelines import kraemer_pipeline


def _fresh(I):
    return Ideal(I.ctx, I.generators)


def _dump(I, basis):
    return IdealFile.from_ideal(I, None, basis).dumps()


def test_second_lookup_hits(tmp_path):
    I = blowup_chart(4, "t1").ideal
    first = cache_lookup_or_compute(_fresh(I), GREVLEX, tmp_path)
    cache = GBCache(tmp_path)
    with cache.activate():
        second = _fresh(I).groebner_basis()
    assert cache.hits == 1 and cache.misses == 0
    assert _dump(I, first) == _dump(I, second)
    assert second == I.groebner_basis()


def test_cache_disabled_same_basis(tmp_path):
    I = branch_product_fiber(4, "t2", 3)
    assert cache_lookup_or_compute(_fresh(I), GREVLEX, None) == cache_lookup_or_compute(_fresh(I), GREVLEX, tmp_path)


def test_truncated_entry_is_evicted(tmp_path):
    I = blowup_chart(4, "t2").ideal
    reference = cache_lookup_or_compute(_fresh(I), GREVLEX, tmp_path)
    path = tmp_path / f"{cache_key(I, GREVLEX)}.json"
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    cache = GBCache(tmp_path)
    with cache.activate():
        again = _fresh(I).groebner_basis()
    assert cache.evictions == 1 and cache.misses == 1
    assert again == reference
    assert json.loads(path.read_text())["engine-version"] == ENGINE_VERSION


def test_stale_engine_version_is_evicted(tmp_path):
    I = blowup_chart(4, "t3").ideal
    reference = cache_lookup_or_compute(_fresh(I), GREVLEX, tmp_path)
    path = tmp_path / f"{cache_key(I, GREVLEX)}.json"
    payload = json.loads(path.read_text())
    payload["engine-version"] = "something-else"
    path.write_text(json.dumps(payload))
    cache = GBCache(tmp_path)
    with cache.activate():
        assert _fresh(I).groebner_basis() == reference
    assert cache.evictions == 1


def test_key_is_canonical():
    I = blowup_chart(4, "t1").ideal
    scaled = Ideal(I.ctx, [g.scale(3) for g in reversed(I.generators)])
    assert cache_key(I, GREVLEX) == cache_key(scaled, GREVLEX)
    assert cache_key(I, GREVLEX) != cache_key(I, LEX)


def test_cache_never_changes_statuses(tmp_path):
    plain = kraemer_pipeline(4, 3, 1)
    with GBCache(tmp_path).activate():
        cold = kraemer_pipeline(4, 3, 1)
    with GBCache(tmp_path).activate():
        warm = kraemer_pipeline(4, 3, 1)
    statuses = lambda r: [(c.name, c.status) for c in r.checks]
    assert statuses(plain) == statuses(cold) == statuses(warm)
