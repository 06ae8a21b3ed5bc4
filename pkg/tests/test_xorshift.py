"""Decorrelator: xorshift128 stepping, GF(2) jumps, substream spacing."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rootstream.xorshift import (
    DEFAULT_SEED_STATE,
    SUBSTREAM_SPACING,
    Gf2Matrix128,
    Xorshift128State,
    _splitmix64,
    bits_to_state,
    gf2_identity,
    seed_state,
    state_to_bits,
    substream_for,
    xs_jump,
    xs_matrix_power,
    xs_step,
    xs_transition_matrix,
)

u32 = st.integers(min_value=0, max_value=2**32 - 1)
states = st.tuples(u32, u32, u32, u32).filter(lambda t: any(t)).map(
    lambda t: Xorshift128State(*t)
)

_LOOPED = 1 << 17
# frozen: state after 2**17 steps from the default seed
_STATE_AFTER_LOOPED = Xorshift128State(
    3059203979, 4040323282, 3474033062, 2550709337
)


class TestStep:
    def test_unit_state_reference(self):
        state, out = xs_step(Xorshift128State(1, 0, 0, 0))
        assert out == 2057
        assert state == Xorshift128State(0, 0, 0, 2057)

    def test_unit_state_first_outputs(self):
        state = Xorshift128State(1, 0, 0, 0)
        outs = []
        for _ in range(5):
            state, out = xs_step(state)
            outs.append(out)
        assert outs == [2057, 2057, 2057, 2057, 4196416]

    def test_default_seed_first_outputs(self):
        state = DEFAULT_SEED_STATE
        outs = []
        for _ in range(4):
            state, out = xs_step(state)
            outs.append(out)
        assert outs == [3701687786, 458299110, 2500872618, 3633119408]

    @given(states)
    @settings(max_examples=60)
    def test_matches_published_recurrence(self, state):
        new, out = xs_step(state)
        (_, _, _, w), ref_outs = oracles.xorshift_orbit(
            (state.x, state.y, state.z, state.w), 1
        )
        assert out == ref_outs[0] == w
        assert (new.x, new.y, new.z, new.w) == (state.y, state.z, state.w, w)

    def test_long_walk_stays_alive(self):
        start = (
            DEFAULT_SEED_STATE.x,
            DEFAULT_SEED_STATE.y,
            DEFAULT_SEED_STATE.z,
            DEFAULT_SEED_STATE.w,
        )
        cur = start
        seen_zero = False
        returned = False
        for _ in range(_LOOPED):
            cur, _ = oracles.xorshift_orbit(cur, 1)
            seen_zero |= cur == (0, 0, 0, 0)
            returned |= cur == start
        assert not seen_zero and not returned
        assert Xorshift128State(*cur) == _STATE_AFTER_LOOPED


class TestStateAndSeeding:
    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            Xorshift128State(0, 0, 0, 0)

    def test_rejects_oversized_words(self):
        with pytest.raises(ValueError):
            Xorshift128State(2**32, 0, 0, 1)

    def test_seed_expansion_frozen_points(self):
        assert _splitmix64(0) == 16294208416658607535
        assert _splitmix64(42) == 13679457532755275413
        s0 = seed_state(0)
        assert (s0.x, s0.y) == (16294208416658607535 & 0xFFFFFFFF, 16294208416658607535 >> 32)
        s41 = seed_state(41)  # its high half comes from the mix of 42
        assert (s41.z, s41.w) == (13679457532755275413 & 0xFFFFFFFF, 13679457532755275413 >> 32)

    def test_seed_expansion_is_deterministic_and_valid(self):
        for seed in (0, 1, 2**32, 2**64 - 1):
            a, b = seed_state(seed), seed_state(seed)
            assert a == b
            assert (a.x, a.y, a.z, a.w) != (0, 0, 0, 0)

    def test_seed_range_checked(self):
        with pytest.raises(ValueError):
            seed_state(-1)
        with pytest.raises(ValueError):
            seed_state(2**64)

    @given(states)
    @settings(max_examples=60)
    def test_bits_round_trip(self, state):
        assert bits_to_state(state_to_bits(state)) == state


class TestLinearAlgebra:
    def test_identity_applies_as_identity(self):
        ident = gf2_identity()
        for bits in (1, 2**64 + 5, (1 << 128) - 1):
            assert ident.apply(bits) == bits

    @given(states)
    @settings(max_examples=60)
    def test_transition_matrix_equals_one_step(self, state):
        mat = xs_transition_matrix()
        stepped, _ = xs_step(state)
        assert bits_to_state(mat.apply(state_to_bits(state))) == stepped

    def test_transition_matrix_is_invertible(self):
        assert xs_transition_matrix().is_invertible()
        assert not Gf2Matrix128(tuple([0] * 128)).is_invertible()

    def test_power_laws(self):
        t = xs_transition_matrix()
        assert xs_matrix_power(0) == gf2_identity()
        assert xs_matrix_power(1) == t
        assert xs_matrix_power(5) == xs_matrix_power(2).matmul(xs_matrix_power(3))
        assert xs_matrix_power((1 << 128) - 1) == gf2_identity()  # full cycle


class TestJump:
    def test_matches_sequential_walk(self):
        state = DEFAULT_SEED_STATE
        cur = state
        for k in range(64):
            assert xs_jump(state, k) == cur
            cur, _ = xs_step(cur)

    def test_large_jump_against_reference_walk(self):
        (x, y, z, w), _ = oracles.xorshift_orbit(
            (DEFAULT_SEED_STATE.x, DEFAULT_SEED_STATE.y, DEFAULT_SEED_STATE.z, DEFAULT_SEED_STATE.w),
            5000,
        )
        assert xs_jump(DEFAULT_SEED_STATE, 5000) == Xorshift128State(x, y, z, w)

    @given(states, st.integers(min_value=0, max_value=2**70), st.integers(min_value=0, max_value=2**70))
    @settings(max_examples=20)
    def test_jump_composition(self, state, j, k):
        assert xs_jump(xs_jump(state, j), k) == xs_jump(state, j + k)

    def test_jump_wraps_at_the_period(self):
        period = (1 << 128) - 1
        assert xs_jump(DEFAULT_SEED_STATE, period) == DEFAULT_SEED_STATE
        assert xs_jump(DEFAULT_SEED_STATE, period + 7) == xs_jump(DEFAULT_SEED_STATE, 7)

    def test_negative_jump_rejected(self):
        with pytest.raises(ValueError):
            xs_jump(DEFAULT_SEED_STATE, -1)


class TestSubstreams:
    def test_spacing_and_identity(self):
        master = seed_state(123)
        assert SUBSTREAM_SPACING == 1 << 64
        assert substream_for(master, 0) == master
        assert substream_for(master, 1) == xs_jump(master, SUBSTREAM_SPACING)

    def test_adjacent_substreams_differ_by_one_spacing(self):
        master = seed_state(9)
        for i in range(4):
            assert xs_jump(substream_for(master, i), SUBSTREAM_SPACING) == substream_for(
                master, i + 1
            )

    def test_first_substreams_are_distinct(self):
        master = seed_state(2024)
        subs = [substream_for(master, i) for i in range(8)]
        assert len(set(subs)) == 8
