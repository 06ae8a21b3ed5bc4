"""Leaf offsets over a shared root orbit and the shared block cache."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rootstream.lcg import MASK64, PAPER_PARAMS, STRICT_PARAMS, LcgParams, lcg_step
from rootstream.state_share import (
    MAX_STREAM_ID,
    RootBlockCache,
    RootGenerator,
    default_offset_for,
    effective_increment,
    leaf_params,
    leaf_transition,
    validate_leaf_offset,
)

u64 = st.integers(min_value=0, max_value=MASK64)
even_h = st.integers(min_value=0, max_value=MASK64 // 2).map(lambda v: 2 * v)


class TestEffectiveIncrement:
    def test_frozen_reference_value(self):
        assert effective_increment(PAPER_PARAMS, 2) == 5718471626015965662

    @given(u64, u64)
    @settings(max_examples=60)
    def test_leaf_recurrence_identity(self, x, h):
        # w = x + h follows the same multiplier with the shifted increment:
        # a*x + c + h == a*(x + h) + (c - (a - 1)*h)
        w = leaf_transition(x, h)
        stepped_leaf = lcg_step(leaf_params(PAPER_PARAMS, h), w)
        assert stepped_leaf == leaf_transition(lcg_step(PAPER_PARAMS, x), h)

    @given(u64)
    @settings(max_examples=60)
    def test_increment_parity_is_offset_independent(self, h):
        # a - 1 is even, so the shift (a - 1)*h never flips parity
        assert effective_increment(PAPER_PARAMS, h) % 2 == PAPER_PARAMS.c % 2
        assert effective_increment(STRICT_PARAMS, h) % 2 == STRICT_PARAMS.c % 2

    def test_desk_scale_walkthrough(self):
        # m=16, a=5, c=1, h=2: the offset orbit is an LCG with increment
        # (1 - 4*2) % 16 == 9, checked against a literal orbit
        m, a, c, h = 16, 5, 1, 2
        c_eff = (c - (a - 1) * h) % m
        assert c_eff == 9
        root = oracles.lcg_orbit(a, c, m, 0, 12)
        leaf = oracles.lcg_orbit(a, c_eff, m, (root[0] + h) % m, 12)
        assert leaf == [(x + h) % m for x in root]
        assert leaf[:4] == [2, 3, 8, 1]

    def test_long_orbit_equivalence(self):
        h = 54738
        params = leaf_params(PAPER_PARAMS, h)
        x, w = 12345, leaf_transition(12345, h)
        for _ in range(1000):
            x = lcg_step(PAPER_PARAMS, x)
            w = lcg_step(params, w)
            assert w == leaf_transition(x, h)


class TestOffsets:
    def test_accepts_even_offsets(self):
        assert validate_leaf_offset(0) == 0
        assert validate_leaf_offset(2**63) == 2**63
        assert validate_leaf_offset(MASK64 - 1) == MASK64 - 1

    @pytest.mark.parametrize("h", [1, 3, MASK64])
    def test_rejects_odd_offsets(self, h):
        with pytest.raises(ValueError):
            validate_leaf_offset(h)

    @pytest.mark.parametrize("h", [-2, 2**64])
    def test_rejects_out_of_range_offsets(self, h):
        with pytest.raises(ValueError):
            validate_leaf_offset(h)

    def test_default_offsets_are_doubled_ids(self):
        assert default_offset_for(0) == 0
        assert default_offset_for(7) == 14
        assert default_offset_for(MAX_STREAM_ID) == 2 * MAX_STREAM_ID

    def test_default_offset_range(self):
        with pytest.raises(ValueError):
            default_offset_for(-1)
        with pytest.raises(ValueError):
            default_offset_for(MAX_STREAM_ID + 1)


class TestRootGenerator:
    def test_emits_orbit_after_seed(self):
        gen = RootGenerator(PAPER_PARAMS, seed=99)
        orbit = oracles.lcg_orbit(PAPER_PARAMS.a, PAPER_PARAMS.c, 2**64, 99, 9)
        assert [gen.root_next() for _ in range(8)] == orbit[1:]

    @pytest.mark.parametrize("lanes", [2, 3, 8])
    def test_lane_count_does_not_change_the_sequence(self, lanes):
        flat = RootGenerator(STRICT_PARAMS, seed=5)
        wide = RootGenerator(STRICT_PARAMS, seed=5, lanes=lanes)
        want = [flat.root_next() for _ in range(64)]
        assert [wide.root_next() for _ in range(64)] == want


class TestRootBlockCache:
    def test_range_matches_reference_orbit(self):
        cache = RootBlockCache(PAPER_PARAMS, root_seed=7, block_size=16)
        orbit = oracles.lcg_orbit(PAPER_PARAMS.a, PAPER_PARAMS.c, 2**64, 7, 100)
        got = cache.range(0, 100)
        assert got.dtype == np.uint64
        assert [int(v) for v in got] == orbit

    def test_range_spanning_blocks_with_offset(self):
        cache = RootBlockCache(STRICT_PARAMS, root_seed=1, block_size=8)
        orbit = oracles.lcg_orbit(STRICT_PARAMS.a, STRICT_PARAMS.c, 2**64, 1, 60)
        assert [int(v) for v in cache.range(13, 40)] == orbit[13:53]

    def test_eviction_keeps_results_correct(self):
        cache = RootBlockCache(PAPER_PARAMS, root_seed=3, block_size=4, max_blocks=2)
        orbit = oracles.lcg_orbit(PAPER_PARAMS.a, PAPER_PARAMS.c, 2**64, 3, 40)
        for start in (0, 12, 24, 36, 0, 24):  # forces re-generation
            assert [int(v) for v in cache.range(start, 4)] == orbit[start : start + 4]

    def test_caller_writes_cannot_corrupt_the_cache(self):
        cache = RootBlockCache(PAPER_PARAMS, root_seed=0, block_size=8)
        first = cache.range(0, 8)
        expected = [int(v) for v in first]
        first[:] = 0
        assert [int(v) for v in cache.range(0, 8)] == expected
        # the shared storage itself is frozen
        assert cache._block(0).flags.writeable is False

    def test_state_at_matches_orbit(self):
        cache = RootBlockCache(STRICT_PARAMS, root_seed=11)
        orbit = oracles.lcg_orbit(STRICT_PARAMS.a, STRICT_PARAMS.c, 2**64, 11, 30)
        assert cache.state_at(0) == 11
        assert cache.state_at(29) == orbit[29]

    def test_validation(self):
        cache = RootBlockCache(PAPER_PARAMS, root_seed=0)
        with pytest.raises(ValueError):
            cache.range(-1, 4)
        with pytest.raises(ValueError):
            cache.range(0, -4)
        with pytest.raises(ValueError):
            RootBlockCache(PAPER_PARAMS, root_seed=0, block_size=0)
