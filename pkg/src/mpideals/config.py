"""Tolerance configuration.

Every numerical decision in the package routes through one of these named
tolerances.  The four base values (eig_tol, herm_tol, sing_tol, solve_tol)
govern the dense linear algebra; the rest are derived dials for spectral
clustering, rank decisions, certificate residuals, and the grid model.

rank_tol is the central dial: singular values at or below
rank_tol * max(1, largest singular value) are treated as exactly zero, which
is how "0 is an isolated spectral point" becomes a relative gap test.
Tolerances marked relative are multiplied by max(1, scale) of the operand.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .errors import ConfigInvalid


@dataclass(frozen=True)
class Tolerances:
    eig_tol: float = 1e-11        # eigensolver off-diagonal mass, relative
    herm_tol: float = 1e-9        # self-adjointness check, relative
    sing_tol: float = 1e-10       # invertibility cutoff on singular values
    solve_tol: float = 1e-9       # linear solve residual, relative
    zero_tol: float = 1e-13       # canonical zero-block dropping, absolute
    eq_tol: float = 1e-9          # element equality, relative
    cluster_tol: float = 1e-8     # spectral cluster merge width, relative
    cluster_gap: float = 1e-6     # required isolation of a cluster, relative
    rank_tol: float = 1e-9        # singular value zero cutoff, relative
    mp_tol: float = 1e-8          # Penrose relation residuals, relative
    span_tol: float = 1e-7        # subalgebra membership distance
    decomp_tol: float = 1e-8      # minimal projection reconstruction
    membership_tol: float = 1e-9  # ideal membership certificate residual
    witness_tol: float = 1e-8     # invertibility witness residuals
    peel_margin: float = 1e-6     # knife-edge margin around 1/2
    lift_tol: float = 1e-6        # grid model lifting tolerance
    wind_tol: float = 1e-6        # minimum modulus for winding numbers


DEFAULT_TOLS = Tolerances()

_FIELD_NAMES = {f.name for f in fields(Tolerances)}


def with_overrides(base: Tolerances, overrides: dict[str, float]) -> Tolerances:
    """Apply named tolerance overrides, rejecting unknown names and bad values."""
    for name, value in overrides.items():
        if name not in _FIELD_NAMES:
            raise ConfigInvalid(f"unknown tolerance name: {name!r}")
        if not (isinstance(value, (int, float)) and value > 0.0):
            raise ConfigInvalid(f"tolerance {name} must be a positive number, got {value!r}")
    return replace(base, **overrides)
