import time
import tracemalloc

import numpy as np
import pytest

from rings import poly
from rings.errors import BudgetExhausted, InvalidParameter
from rings.poly import (
    AnnPairBudget,
    BoundedPoly,
    SweepMeter,
    annihilating_linear_pairs,
    annihilating_pairs_degree,
    conv_mul,
    degree_pair_blocks,
    linear_pair_blocks,
    naive_annihilating_pairs,
    ordered_map,
    pair_rows,
)
from rings.ring_core import opposite_ring


def _same(left: np.ndarray, right: np.ndarray) -> bool:
    return left.shape == right.shape and np.array_equal(np.unique(left, axis=0), np.unique(right, axis=0))


def test_convolution(ring):
    z4 = ring("Z(4)")
    one_plus_x = BoundedPoly.from_indices(z4, [1, 1])
    assert (one_plus_x * one_plus_x).indices == (1, 2, 1)
    assert conv_mul(BoundedPoly.from_indices(z4, [2, 2]), BoundedPoly.from_indices(z4, [2])).is_zero()
    assert BoundedPoly.from_indices(z4, [0, 3, 1]).degree_bound == 2


@pytest.mark.parametrize("text", ["Z(4)", "Z(6)", "Triv(Z(2))", "UT(Z(2), 2)", "PolyMod(Z(2), 2)"])
def test_linear_enumerators_agree_with_naive_loop(ring, text):
    r = ring(text)
    naive = naive_annihilating_pairs(r, 1)
    assert _same(naive, pair_rows(linear_pair_blocks(r)))
    assert _same(naive, pair_rows(degree_pair_blocks(r, 1)))


@pytest.mark.parametrize("text", ["Z(4)", "Triv(Z(2))", "Prod(Z(2), Z(2))"])
def test_degree_two_enumerator_agrees_with_naive_loop(ring, text):
    r = ring(text)
    assert _same(naive_annihilating_pairs(r, 2), pair_rows(degree_pair_blocks(r, 2)))


def test_pairs_are_annihilating_and_ordered(ring):
    z4 = ring("Z(4)")
    seen = []
    for a0, a1, b0, b1 in annihilating_linear_pairs(z4):
        f = BoundedPoly(z4, (a0, a1))
        g = BoundedPoly(z4, (b0, b1))
        assert (f * g).is_zero()
        seen.append((a0.index, a1.index, b0.index, b1.index))
    assert seen == sorted(seen)
    assert seen[0] == (0, 0, 0, 0)


def test_degree_stream_yields_elements(ring):
    z2 = ring("Z(2)")
    pairs = list(annihilating_pairs_degree(z2, 2))
    # over a field one side of every pair is zero: 8 + 8 - 1
    assert len(pairs) == 15


def test_budget_is_enforced(ring):
    with pytest.raises(BudgetExhausted) as info:
        list(annihilating_linear_pairs(ring("Z(6)"), AnnPairBudget(max_pairs_examined=1)))
    assert info.value.reason == "pairs"
    meter = SweepMeter(AnnPairBudget(max_pairs_examined=10))
    meter.charge(10)
    with pytest.raises(BudgetExhausted):
        meter.charge(1)


def test_budget_validation():
    with pytest.raises(InvalidParameter):
        AnnPairBudget(max_pairs_examined=0)
    with pytest.raises(InvalidParameter):
        AnnPairBudget(elapsed_cap_ms=-1)


def test_threaded_enumeration_matches_serial(ring):
    r = ring("Triv(Z(4))")
    serial = pair_rows(degree_pair_blocks(r, 1, threads=1))
    threaded = pair_rows(degree_pair_blocks(r, 1, threads=4))
    assert np.array_equal(serial, threaded)


def test_ordered_map_keeps_order():
    assert list(ordered_map(lambda x: x * x, range(50), 4)) == [x * x for x in range(50)]
    assert list(ordered_map(str, [], 3)) == []


def test_degree_bound_must_be_positive(ring):
    with pytest.raises(InvalidParameter):
        list(degree_pair_blocks(ring("Z(2)"), 0))


def test_chunked_blocks_match_whole_blocks(ring, monkeypatch):
    r = ring("Triv(Z(4))")
    whole_meter = SweepMeter()
    whole = pair_rows(degree_pair_blocks(r, 2, whole_meter))
    monkeypatch.setattr(poly, "_EAGER_BLOCK_ROWS", 2)
    monkeypatch.setattr(poly, "_CHUNK_ROWS", 3)
    chunked_meter = SweepMeter()
    chunked = pair_rows(degree_pair_blocks(r, 2, chunked_meter))
    assert np.array_equal(whole, chunked)
    assert chunked_meter.examined == whole_meter.examined


def test_small_budget_stops_a_large_block_before_it_is_built(ring):
    r = ring("Tnk(Z(4), 4, 2)")
    assert r.mul_table is not None and r.add_table is not None and r.neg_vector is not None
    meter = SweepMeter(AnnPairBudget(max_pairs_examined=3_000_000))
    tracemalloc.start()
    try:
        with pytest.raises(BudgetExhausted):
            for _ in degree_pair_blocks(r, 2, meter):
                pass
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert meter.examined <= 3_000_000
    # the whole first large block would be 16,777,216 rows of three int64
    assert peak < 96 * 2**20


def test_threaded_degree_two_matches_serial(ring):
    r = ring("UT(Z(2), 2)")
    serial_meter, threaded_meter = SweepMeter(), SweepMeter()
    serial = pair_rows(degree_pair_blocks(r, 2, serial_meter, threads=1))
    threaded = pair_rows(degree_pair_blocks(r, 2, threaded_meter, threads=4))
    assert np.array_equal(serial, threaded)
    assert serial_meter.examined == threaded_meter.examined


def test_time_cap_counts_from_the_meter_start():
    meter = SweepMeter(AnnPairBudget(elapsed_cap_ms=500), started=time.perf_counter() - 1.0)
    assert meter.elapsed_ms >= 1000.0
    with pytest.raises(BudgetExhausted) as info:
        meter.charge(1)
    assert info.value.reason == "time_ms"
    assert meter.examined == 0


@pytest.mark.parametrize("text", ["UT(Z(2), 2)", "Mat(Z(2), 2)", "Tnk(Z(2), 3, 1)"])
def test_opposite_ring_mirrors_annihilating_pairs(ring, text):
    r = ring(text)
    pairs = pair_rows(linear_pair_blocks(r))
    mirrored = pair_rows(linear_pair_blocks(opposite_ring(r)))
    # (f, g) annihilates in the opposite ring iff (g, f) does in r
    assert _same(mirrored[:, [2, 3, 0, 1]], pairs)
