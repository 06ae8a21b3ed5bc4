"""Output stage: scramble a 64-bit leaf state into a 32-bit word.

Two scrambles (plain high-bit truncation, or a xorshift-fold with a
data-dependent rotation) cross two decorrelation settings (XOR with the
stream's xorshift word, or not) to give the four output modes used in the
ablation studies. ``full`` is the production mode.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .lcg import MASK32, truncate_high32
from .xorshift import Xorshift128State, xs_step


class Scramble(enum.Enum):
    TRUNCATE_HIGH32 = "truncate_high32"
    PERMUTE_XSH_RR = "permute_xsh_rr"


def xsh_rr(w: int) -> int:
    """Permute a 64-bit word down to 32 bits: xorshift-fold, then rotate.

    The top five bits select the rotation, bits that the fold mixes well
    supply the output: ``rotr32(uint32(((w >> 18) ^ w) >> 27), w >> 59)``.
    """
    rot = (w >> 59) & 31
    folded = (((w >> 18) ^ w) >> 27) & MASK32
    return ((folded >> rot) | (folded << ((32 - rot) & 31))) & MASK32


@dataclass(frozen=True)
class OutputMode:
    """Scramble choice plus whether the decorrelator word is XORed in."""

    scramble: Scramble
    decorrelate: bool


#: The four ablation columns, keyed by their interface names.
MODES: dict[str, OutputMode] = {
    "baseline": OutputMode(Scramble.TRUNCATE_HIGH32, False),
    "decorr": OutputMode(Scramble.TRUNCATE_HIGH32, True),
    "perm": OutputMode(Scramble.PERMUTE_XSH_RR, False),
    "full": OutputMode(Scramble.PERMUTE_XSH_RR, True),
}


def mode_name(mode: OutputMode) -> str:
    for name, m in MODES.items():
        if m == mode:
            return name
    raise ValueError(f"unnamed output mode: {mode!r}")


def scramble_word(mode: OutputMode, w: int) -> int:
    if mode.scramble is Scramble.PERMUTE_XSH_RR:
        return xsh_rr(w)
    return truncate_high32(w)


def emit(
    mode: OutputMode, w: int, decorrelator: Xorshift128State
) -> tuple[int, Xorshift128State]:
    """Emit one 32-bit output for leaf word ``w``.

    Returns the output and the (possibly advanced) decorrelator state. The
    decorrelator steps exactly once per emission when decorrelation is
    enabled and not at all otherwise, so mode changes aside, emission count
    alone determines the decorrelator position.
    """
    out = scramble_word(mode, w)
    if mode.decorrelate:
        decorrelator, word = xs_step(decorrelator)
        out ^= word
    return out, decorrelator
