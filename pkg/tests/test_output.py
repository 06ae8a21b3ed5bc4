"""Output stage: the 64->32 permutation and the four mode combinations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rootstream.output import (
    MODES,
    OutputMode,
    Scramble,
    emit,
    mode_name,
    scramble_word,
    xsh_rr,
)
from rootstream.xorshift import Xorshift128State, xs_step

u64 = st.integers(min_value=0, max_value=2**64 - 1)


class TestXshRr:
    @pytest.mark.parametrize(
        "w,expected",
        [
            (0, 0),
            (1 << 59, 0x2000),
            (2**64 - 1, 0xFFF00001),
            (0xABCD000012340000, 0x2AF353CD),
        ],
    )
    def test_reference_points(self, w, expected):
        assert xsh_rr(w) == expected

    @given(u64)
    @settings(max_examples=200)
    def test_matches_bit_level_reference(self, w):
        assert xsh_rr(w) == oracles.xsh_rr_bits(w)

    @given(u64)
    def test_output_fits_32_bits(self, w):
        assert 0 <= xsh_rr(w) < 2**32

    def test_low_bits_cannot_reach_the_output(self):
        # bits 0..26 of the input fall below the fold window
        assert xsh_rr(0x07FFFFFF) == xsh_rr(0)
        assert xsh_rr((1 << 40) | 0x3FF) == xsh_rr(1 << 40)


class TestModes:
    def test_table_covers_all_combinations(self):
        assert set(MODES) == {"baseline", "decorr", "perm", "full"}
        combos = {(m.scramble, m.decorrelate) for m in MODES.values()}
        assert len(combos) == 4

    def test_production_mode_shape(self):
        assert MODES["full"] == OutputMode(Scramble.PERMUTE_XSH_RR, True)
        assert MODES["baseline"] == OutputMode(Scramble.TRUNCATE_HIGH32, False)

    @pytest.mark.parametrize("name", sorted(MODES))
    def test_names_round_trip(self, name):
        assert mode_name(MODES[name]) == name

    def test_scramble_dispatch(self):
        w = 0xDEADBEEF_00C0FFEE
        assert scramble_word(MODES["baseline"], w) == 0xDEADBEEF
        assert scramble_word(MODES["full"], w) == xsh_rr(w)


class TestEmit:
    def test_plain_modes_do_not_touch_the_decorrelator(self):
        state = Xorshift128State(1, 2, 3, 4)
        for name in ("baseline", "perm"):
            out, new = emit(MODES[name], 0x123456789ABCDEF0, state)
            assert new == state
            assert out == scramble_word(MODES[name], 0x123456789ABCDEF0)

    @pytest.mark.parametrize("name", ["decorr", "full"])
    def test_decorrelating_modes_step_once_and_xor(self, name):
        state = Xorshift128State(1, 2, 3, 4)
        stepped, word = xs_step(state)
        out, new = emit(MODES[name], 0x123456789ABCDEF0, state)
        assert new == stepped
        assert out == scramble_word(MODES[name], 0x123456789ABCDEF0) ^ word

    def test_emission_count_determines_decorrelator_position(self):
        state = Xorshift128State(9, 9, 9, 9)
        for _ in range(10):
            _, state = emit(MODES["full"], 0, state)
        expected = Xorshift128State(9, 9, 9, 9)
        for _ in range(10):
            expected, _ = xs_step(expected)
        assert state == expected
