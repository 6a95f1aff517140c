"""
Built-in games: the Magic Square game and the CHSH game, with quantum strategies.

Magic Square quantum strategy (two shared maximally entangled qubit pairs):

     I.Z  |  Z.I  |  Z.Z
     X.I  |  I.X  |  X.X
    -X.Z  | -Z.X  |  Y.Y

Every row multiplies to +I and every column to -I. Alice measures her row,
Bob his column; bit k is 0 for eigenvalue +1. All nine observables equal
their transposes, so on sum_k |kk>/2 both players see the same value at the
intersection.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Optional

import numpy as np

from nonlocality.processing.games.games import Game, QuantumStrategy
from nonlocality.quantum.kernel import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ProjectiveMeasurement,
    bloch_measurement,
    commuting_measurement,
    state_from_amplitudes,
)

TRITS = (0, 1, 2)
BIT_STRINGS = tuple("".join(bits) for bits in itertools.product("01", repeat=3))


def _parity(bits: str) -> int:
    return sum(int(c) for c in bits) % 2


def magic_square_relation(xa: int, xb: int, ya: str, yb: str) -> bool:
    return _parity(ya) == 0 and _parity(yb) == 1 and ya[xb] == yb[xa]


def magic_square() -> Game:
    """Alice gets a row, Bob a column; rows even, columns odd, agree at the intersection."""
    return Game("magic-square", TRITS, TRITS, BIT_STRINGS, BIT_STRINGS, magic_square_relation)


def mermin_peres_square() -> list[list[np.ndarray]]:
    k = np.kron
    return [
        [k(IDENTITY, SIGMA_Z), k(SIGMA_Z, IDENTITY), k(SIGMA_Z, SIGMA_Z)],
        [k(SIGMA_X, IDENTITY), k(IDENTITY, SIGMA_X), k(SIGMA_X, SIGMA_X)],
        [-k(SIGMA_X, SIGMA_Z), -k(SIGMA_Z, SIGMA_X), k(SIGMA_Y, SIGMA_Y)],
    ]


def magic_square_quantum() -> QuantumStrategy:
    square = mermin_peres_square()
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[[0, 5, 10, 15]] = 0.5
    state = state_from_amplitudes((4, 4), amplitudes)
    rows = tuple(commuting_measurement(square[r]) for r in TRITS)
    columns = tuple(commuting_measurement([square[r][c] for r in TRITS]) for c in TRITS)
    return QuantumStrategy(state, rows, columns)


def parity_table_search(row_parity: Optional[str] = "even", column_parity: Optional[str] = "odd") -> int:
    """Count 3x3 binary tables whose rows/columns have the requested parities (None = unconstrained)."""
    wanted = {"even": 0, "odd": 1, None: None}
    if row_parity not in wanted or column_parity not in wanted:
        raise ValueError("parity must be 'even', 'odd' or None")
    rp, cp = wanted[row_parity], wanted[column_parity]
    count = 0
    for cells in itertools.product((0, 1), repeat=9):
        table = np.array(cells).reshape(3, 3)
        if rp is not None and np.any(table.sum(axis=1) % 2 != rp):
            continue
        if cp is not None and np.any(table.sum(axis=0) % 2 != cp):
            continue
        count += 1
    return count


def chsh_relation(x: int, y: int, a: int, b: int) -> bool:
    return (a ^ b) == (x & y)


def chsh_game() -> Game:
    return Game("chsh-game", (0, 1), (0, 1), (0, 1), (0, 1), chsh_relation)


def _bit_measurement(theta: float) -> ProjectiveMeasurement:
    m = bloch_measurement(math.sin(theta), 0.0, math.cos(theta))
    return ProjectiveMeasurement(m.projectors, (0, 1))


def chsh_game_quantum() -> QuantumStrategy:
    """(|00> + |11>)/sqrt(2); Alice at 0, pi/2 and Bob at +/-pi/4 in the x-z plane: cos^2(pi/8)."""
    r = 1 / math.sqrt(2)
    state = state_from_amplitudes((2, 2), [r, 0, 0, r])
    return QuantumStrategy(
        state,
        (_bit_measurement(0.0), _bit_measurement(math.pi / 2)),
        (_bit_measurement(math.pi / 4), _bit_measurement(-math.pi / 4)),
    )


BUILTIN_GAMES: dict[str, Callable[[], Game]] = {
    "magic-square": magic_square,
    "chsh-game": chsh_game,
}

BUILTIN_STRATEGIES: dict[str, Callable[[], QuantumStrategy]] = {
    "magic-square": magic_square_quantum,
    "chsh-game": chsh_game_quantum,
}
