"""One-way and two-way finite automata: simulation, restricted models,
conversions, the I_n / L_n witness families, and unary GAP reductions."""

from .core import (
    LEFT_END,
    RIGHT_END,
    AcceptMode,
    AutomatonError,
    FormatError,
    Move,
    NonDeterministicMachine,
    OneWayMachine,
    TwoWayMachine,
    Verdict,
    accepts,
    accepts_nondeterministic,
    embed,
    parse,
    run_deterministic,
    run_oneway,
    serialize,
    validate,
    with_accept_mode,
)
from .families import FamilySpec, UnsupportedCombination, Variant, generate, membership_oracle

__version__ = "0.1.0"

__all__ = [
    "LEFT_END",
    "RIGHT_END",
    "AcceptMode",
    "AutomatonError",
    "FamilySpec",
    "FormatError",
    "Move",
    "NonDeterministicMachine",
    "OneWayMachine",
    "TwoWayMachine",
    "UnsupportedCombination",
    "Variant",
    "Verdict",
    "accepts",
    "accepts_nondeterministic",
    "embed",
    "generate",
    "membership_oracle",
    "parse",
    "run_deterministic",
    "run_oneway",
    "serialize",
    "validate",
    "with_accept_mode",
]
