"""Spin-boson level shift, scattering kernel, survival dynamics and a
truncated-Fock-space oracle, backed by the C++ core."""

from ._core import (
    LevelShift,
    ModelParams,
    Resonance,
    SblabError,
    chi_cutoff,
    form_factor,
    gamma0_groundshift,
    gamma_boundary,
    gamma_eps,
    level_shift,
    mourre_alpha,
    omega,
    onshell_kernel_profile,
    oracle_ground_energy,
    oracle_survival,
    resonance,
    survival_quadrature,
    survival_residue,
    theta,
    transition_lorentzian,
    xi,
)

__all__ = [
    "LevelShift",
    "ModelParams",
    "Resonance",
    "SblabError",
    "chi_cutoff",
    "form_factor",
    "gamma0_groundshift",
    "gamma_boundary",
    "gamma_eps",
    "level_shift",
    "mourre_alpha",
    "omega",
    "onshell_kernel_profile",
    "oracle_ground_energy",
    "oracle_survival",
    "resonance",
    "survival_quadrature",
    "survival_residue",
    "theta",
    "transition_lorentzian",
    "xi",
]
