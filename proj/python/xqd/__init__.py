"""Bures geometric discord of two-qubit states."""

from ._core import (
    XqdError,
    XStateParams,
    bures_distance_sq,
    candidate_discord,
    char_poly_coeffs,
    classical_correlation,
    closest_classical_state,
    degenerate_fidelity,
    discord_bruteforce,
    discord_upper_bound,
    entropic_discord,
    fidelity,
    fidelity_at_direction,
    symmetric_fidelity,
    werner,
    x_state,
)

__all__ = [
    "XqdError",
    "XStateParams",
    "bures_distance_sq",
    "candidate_discord",
    "char_poly_coeffs",
    "classical_correlation",
    "closest_classical_state",
    "degenerate_fidelity",
    "discord_bruteforce",
    "discord_upper_bound",
    "entropic_discord",
    "fidelity",
    "fidelity_at_direction",
    "symmetric_fidelity",
    "werner",
    "x_state",
]
