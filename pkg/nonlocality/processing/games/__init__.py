from nonlocality.processing.games.builtin import (
    BUILTIN_GAMES,
    BUILTIN_STRATEGIES,
    chsh_game,
    chsh_game_quantum,
    magic_square,
    magic_square_quantum,
    parity_table_search,
)
from nonlocality.processing.games.games import (
    ClassicalValue,
    Game,
    GameValueReport,
    QuantumStrategy,
    classical_survival_probability,
    classical_value,
    deterministic_quantum_strategy,
    game_behavior,
    game_to_bell_expression,
    game_value_report,
    input_weights,
    is_winning_strategy,
    quantum_win_probability,
)

__all__ = [
    "BUILTIN_GAMES",
    "BUILTIN_STRATEGIES",
    "ClassicalValue",
    "Game",
    "GameValueReport",
    "QuantumStrategy",
    "chsh_game",
    "chsh_game_quantum",
    "classical_survival_probability",
    "classical_value",
    "deterministic_quantum_strategy",
    "game_behavior",
    "game_to_bell_expression",
    "game_value_report",
    "input_weights",
    "is_winning_strategy",
    "magic_square",
    "magic_square_quantum",
    "parity_table_search",
    "quantum_win_probability",
]
