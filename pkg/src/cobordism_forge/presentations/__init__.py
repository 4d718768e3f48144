"""Presented rings: the geometric ring, the localization target and the pullback."""
from .generators import D, Q, basis_label, basis_text, enumerate_basis
from .omega import (OmegaRing, PresentationElement, coeff_str, gamma, kappa,
                    kernel_test, multiply, normal_form, omega_ring, res)
from .pullback import (MURing, PullbackElement, mu_ring, phi, pullback_equal,
                       pullback_make, rho, rho_series)
from .target import TargetElement, TargetRing

__all__ = [
    "D", "Q", "basis_label", "basis_text", "enumerate_basis",
    "OmegaRing", "PresentationElement", "coeff_str", "gamma", "kappa",
    "kernel_test", "multiply", "normal_form", "omega_ring", "res",
    "MURing", "PullbackElement", "mu_ring", "phi", "pullback_equal",
    "pullback_make", "rho", "rho_series", "TargetElement", "TargetRing",
]
