"""Jacobi theta functions on the upper half tau-plane.

Series conventions used throughout the package::

    theta3(u; tau) = sum_n exp(i pi tau n^2 + 2 i n u)
    theta2(u; tau) = sum_n exp(i pi tau (n + 1/2)^2 + i (2n + 1) u)

with the sums over all integers n and Im(tau) > 0.  ``theta3`` is
pi-periodic in u and quasi-periodic under u -> u + pi*tau:

    theta3(u + pi*tau; tau) = exp(-i pi tau - 2 i u) theta3(u; tau)

Evaluation recenters each Gaussian lattice sum on its dominant index, so
arguments with sizeable |Im u| lose no relative accuracy as long as the
leading term itself is representable in double precision.
"""

from __future__ import annotations

import numpy as np

__all__ = ["theta2", "theta3", "theta3_derivative"]

_MAX_SHELLS = 4096
# number of consecutive negligible index shells required before truncating
_STOP_RUN = 3


def _check_args(u, tau, tol):
    tau = complex(tau)
    if not np.isfinite(tau.real) or not np.isfinite(tau.imag):
        raise ValueError("tau must be finite")
    if tau.imag <= 0.0:
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
    if not (tol > 0.0):
        raise ValueError(f"truncation tolerance must be positive, got {tol}")
    u = np.asarray(u, dtype=complex)
    if not np.all(np.isfinite(u)):
        raise ValueError("argument u must be finite")
    return u, tau


def _lattice_series(u, tau, tol, shift, derivative):
    """Evaluate sum_n w(n) exp(i pi tau (n+shift)^2 + 2 i (n+shift) u).

    ``w(n) = 1`` for the plain series and ``w(n) = 2 i (n+shift)`` for the
    u-derivative.  The sum is recentered on the index of largest modulus and
    extended symmetrically until _STOP_RUN consecutive shells fall below
    ``tol * (1 + |partial sum|)``.
    """
    u, tau = _check_args(u, tau, tol)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)

    # |term| peaks where d/dn [ -pi Im(tau) (n+shift)^2 - 2 (n+shift) Im(u) ] = 0
    center = np.rint(-np.imag(u) / (np.pi * tau.imag) - shift)

    def term(idx):
        nu = idx + shift
        t = np.exp(1j * np.pi * tau * nu * nu + 2j * nu * u)
        if derivative:
            t = 2j * nu * t
        return t

    total = term(center)
    run = 0
    for k in range(1, _MAX_SHELLS + 1):
        shell = term(center + k) + term(center - k)
        total += shell
        rel = np.max(np.abs(shell) / (1.0 + np.abs(total)))
        run = run + 1 if rel < tol else 0
        if run >= _STOP_RUN:
            break
    else:
        raise RuntimeError(
            f"theta series did not converge within {_MAX_SHELLS} shells "
            f"(tau={tau}, tol={tol})"
        )
    return complex(total[0]) if scalar else total


def theta3(u, tau, tol: float = 1e-14):
    """theta3(u; tau) = sum_n exp(i pi tau n^2 + 2 i n u).

    Parameters
    ----------
    u : complex or array_like of complex
        Argument(s); the function is entire in u.
    tau : complex
        Lattice parameter with Im(tau) > 0.
    tol : float
        Relative truncation tolerance of the lattice sum.

    Returns
    -------
    complex or ndarray
    """
    return _lattice_series(u, tau, tol, shift=0.0, derivative=False)


def theta2(u, tau, tol: float = 1e-14):
    """theta2(u; tau) = sum_n exp(i pi tau (n + 1/2)^2 + i (2n + 1) u).

    Same conventions and truncation policy as :func:`theta3`.  Satisfies
    theta2(u + pi; tau) = -theta2(u; tau) and vanishes at u = pi/2.
    """
    return _lattice_series(u, tau, tol, shift=0.5, derivative=False)


def theta3_derivative(u, tau, tol: float = 1e-14):
    """d/du theta3(u; tau), summed termwise: sum_n 2 i n exp(i pi tau n^2 + 2 i n u)."""
    return _lattice_series(u, tau, tol, shift=0.0, derivative=True)
