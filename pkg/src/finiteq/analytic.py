"""Entire-function representation of states on the fundamental cell.

A state with position amplitudes f_m is represented by

    f(z) = pi**-1/4 sum_m theta3[pi m / d - (z/lam) sqrt(pi/2d); i/(d lam^2)] f_m

which is entire, periodic with period sqrt(2 pi d) lam along the real axis
and quasi-periodic with period sqrt(2 pi d)/lam along the imaginary axis:

    f(z + i sqrt(2 pi d)/lam) = f(z) exp[pi d / lam^2 - i sqrt(2 pi d) z / lam].

The bilinear pairing sum_m f_m g_m is recovered from the cell integral

    (2 pi)**-1/2 d**-3/2 lam**-1 Int_S d2z exp(-Im(z)^2) f(z) g(z*)

and operators act either through their matrix, through a two-argument theta
kernel integrated over the cell, or through the displaced-state expansion of
their phase-space table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import FiniteState, half_power
from .theta import theta2, theta3, theta3_derivative
from .zak import (
    SystemParams,
    coherent_normalization,
    coherent_state_closed,
    coherent_unnormalized,
)

__all__ = [
    "AnalyticState",
    "OperatorKernel",
    "position_form",
    "momentum_form",
    "coherent_form",
    "scalar_product",
    "displaced_f",
    "kernel_eval",
    "kernel_apply",
    "apply_weyl_expansion",
    "coherent_identity_matrix",
    "gauss_legendre_cell",
    "QUAD_LEVELS",
]

QUAD_LEVELS = (32, 64, 128)


def _theta_arg(params: SystemParams, m, z):
    """pi m / d - (z / lam) sqrt(pi / 2d), broadcast over m and z."""
    scale = math.sqrt(np.pi / (2 * params.d)) / params.lam
    return np.pi * np.asarray(m) / params.d - scale * np.asarray(z, dtype=complex)


@dataclass
class AnalyticState:
    """A finite state paired with system parameters, evaluable as f(z)."""

    state: FiniteState
    params: SystemParams

    def __post_init__(self):
        if self.state.d != self.params.d:
            raise ValueError(
                f"state dimension {self.state.d} does not match params.d = {self.params.d}"
            )

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        zz = np.atleast_1d(z)
        acc = np.zeros(zz.shape, dtype=complex)
        for m, fm in enumerate(self.state.components):
            if fm == 0:
                continue
            acc += fm * theta3(_theta_arg(self.params, m, zz), self.params.tau0)
        acc *= np.pi ** -0.25
        return complex(acc[0]) if scalar else acc

    def derivative(self, z):
        """df/dz, from the termwise theta derivative."""
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        zz = np.atleast_1d(z)
        acc = np.zeros(zz.shape, dtype=complex)
        for m, fm in enumerate(self.state.components):
            if fm == 0:
                continue
            acc += fm * theta3_derivative(_theta_arg(self.params, m, zz), self.params.tau0)
        acc *= -np.pi ** -0.25 * math.sqrt(np.pi / (2 * self.params.d)) / self.params.lam
        return complex(acc[0]) if scalar else acc

    def inner_product_form(self, z: complex) -> complex:
        """The defining overlap expression N(z)^(1/2) sqrt(d) lam e^{-i Im(z) z / 2} <<z*|f>>.

        Slower than direct evaluation; kept as an independent consistency path.
        """
        z = complex(z)
        d, lam = self.params.d, self.params.lam
        coh = coherent_state_closed(np.conj(z), self.params)
        ov = coh.inner(self.state)
        norm = coherent_normalization(z, self.params)
        return complex(math.sqrt(norm * d) * lam * np.exp(-0.5j * z.imag * z) * ov)


def position_form(m: int, params: SystemParams, z):
    """Closed form of the representation of the m-th position state."""
    return np.pi ** -0.25 * theta3(_theta_arg(params, int(m) % params.d, z), params.tau0)


def momentum_form(m: int, params: SystemParams, z):
    """Closed form for the m-th momentum state:

    lam pi**-1/4 exp(-z^2/2) theta3[pi m/d - i lam z sqrt(pi/2d); i lam^2/d].
    """
    d, lam = params.d, params.lam
    z = np.asarray(z, dtype=complex)
    u = np.pi * (int(m) % d) / d - 1j * lam * z * math.sqrt(np.pi / (2 * d))
    return lam * np.pi ** -0.25 * np.exp(-0.5 * z * z) * theta3(u, 1j * lam**2 / d)


def coherent_form(label, params: SystemParams, z, form: str = "auto"):
    """Closed theta-product form of the representation of a coherent state.

    For odd d the sum of two theta products, for even d a single product;
    ``form='auto'`` dispatches on the parity of d.  Matches evaluating the
    state of :func:`finiteq.zak.coherent_state_closed` through AnalyticState.
    """
    d, lam = params.d, params.lam
    a = complex(label)
    z = np.asarray(z, dtype=complex)
    nc = coherent_normalization(a, params)
    pref = np.pi ** -0.5 / lam * math.sqrt(d / nc) * np.exp(0.5j * a.imag * a)
    minus = theta3((z - a) / lam * math.sqrt(np.pi / (2 * d)), 2j / (d * lam**2))
    if form == "auto":
        form = "even" if d % 2 == 0 else "general"
    if form == "even":
        plus = theta3((z + a) / lam * math.sqrt(np.pi * d / 8), 0.5j * d / lam**2)
        return pref * plus * minus
    if form == "general":
        u1 = (z + a) / lam * math.sqrt(np.pi * d / 2)
        tau1 = 2j * d / lam**2
        return pref * (
            theta3(u1, tau1) * minus
            + theta2(u1, tau1) * theta2((z - a) / lam * math.sqrt(np.pi / (2 * d)), 2j / (d * lam**2))
        )
    raise ValueError(f"form must be 'auto', 'general' or 'even', got {form!r}")


# ---------------------------------------------------------------------------
# cell quadrature


def gauss_legendre_cell(params: SystemParams, n: int):
    """Tensor Gauss-Legendre nodes and weights on the fundamental cell.

    Returns (z, w) with z complex nodes of shape (n*n,) and w the matching
    product weights.
    """
    x, wx = np.polynomial.legendre.leggauss(n)
    a, b = params.a, params.b
    width, height = params.cell_width, params.cell_height
    xr = a + 0.5 * width * (x + 1.0)
    yr = b + 0.5 * height * (x + 1.0)
    wr = 0.5 * width * wx
    wi = 0.5 * height * wx
    z = (xr[:, None] + 1j * yr[None, :]).ravel()
    w = (wr[:, None] * wi[None, :]).ravel()
    return z, w


def _refined_quadrature(evaluate, tol: float, label: str):
    """Run `evaluate(n)` over QUAD_LEVELS until two levels agree within tol."""
    prev = None
    for n in QUAD_LEVELS:
        cur = evaluate(n)
        if prev is not None and np.max(np.abs(cur - prev)) <= tol:
            return cur
        prev = cur
    raise RuntimeError(
        f"{label}: quadrature did not converge to {tol} at {QUAD_LEVELS[-1]} points per axis"
    )


def scalar_product(f: AnalyticState, g: AnalyticState, tol: float = 1e-6) -> complex:
    """Bilinear pairing sum_m f_m g_m evaluated as a cell integral.

    (2 pi)**-1/2 d**-3/2 lam**-1 Int_S d2z e^{-Im(z)^2} f(z) g(z*), with
    tensor Gauss-Legendre refinement 32 -> 64 -> 128 points per axis.
    """
    if f.params != g.params:
        raise ValueError("states must share the same system parameters")
    p = f.params
    pref = (2 * np.pi) ** -0.5 * p.d ** -1.5 / p.lam

    def evaluate(n):
        z, w = gauss_legendre_cell(p, n)
        vals = f(z) * g(np.conj(z)) * np.exp(-np.imag(z) ** 2)
        return pref * np.sum(w * vals)

    return complex(_refined_quadrature(evaluate, tol, "scalar_product"))


# ---------------------------------------------------------------------------
# displacements


def displaced_f(s: AnalyticState, alpha: int, beta: int, z):
    """Evaluate [D(alpha, beta) f](z) through the closed theta form.

    Agrees exactly with evaluating the matrix-displaced state; labels are
    arbitrary integers (the matrix path stays authoritative in tests).
    """
    p = s.params
    d, lam = p.d, p.lam
    alpha, beta = int(alpha), int(beta)
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z)
    pref = (
        np.pi ** -0.25
        * half_power(d, -alpha * beta)
        * np.exp(1j * alpha * zz / lam * math.sqrt(2 * np.pi / d) - alpha**2 * np.pi / (d * lam**2))
    )
    acc = np.zeros(zz.shape, dtype=complex)
    for m, fm in enumerate(s.state.components):
        if fm == 0:
            continue
        u = _theta_arg(p, m + beta, zz) - 1j * alpha * np.pi / (d * lam**2)
        acc += fm * theta3(u, p.tau0)
    out = pref * acc
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# operators


@dataclass
class OperatorKernel:
    """A d x d operator paired with parameters, as a two-argument theta kernel."""

    matrix: np.ndarray
    params: SystemParams

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        d = self.params.d
        if self.matrix.shape != (d, d):
            raise ValueError(f"operator must be {d}x{d}, got {self.matrix.shape}")

    def _theta_vec(self, z):
        """Stack of theta3 factors over the row index; shape (d,) + shape(z)."""
        p = self.params
        m = np.arange(p.d)
        u = np.pi * m.reshape((p.d,) + (1,) * np.ndim(z)) / p.d - np.asarray(
            z, dtype=complex
        ) * math.sqrt(np.pi / (2 * p.d)) / p.lam
        return theta3(u, p.tau0)


def kernel_eval(kernel: OperatorKernel, z, zeta_star):
    """Kernel value pi**-1/2 d**-1 sum_mn Omega_mn theta3[..z..] theta3[..zeta*..]."""
    tz = kernel._theta_vec(np.asarray(z, dtype=complex))
    tzs = kernel._theta_vec(np.asarray(zeta_star, dtype=complex))
    val = np.einsum("m...,mn,n...->...", tz, kernel.matrix, tzs)
    return np.pi ** -0.5 / kernel.params.d * val


def kernel_apply(kernel: OperatorKernel, f: AnalyticState, z, tol: float = 1e-6) -> complex:
    """(Omega f)(z) = (2 pi d)**-1/2 lam**-1 Int_S d2zeta e^{-Im(zeta)^2} K(z, zeta*) f(zeta).

    The Gaussian weight matches the scalar-product weight, which is what makes
    the identity operator act as the identity; cell-size periods apply.
    """
    if f.params != kernel.params:
        raise ValueError("state and kernel must share the same system parameters")
    p = kernel.params
    z = complex(z)
    pref = (2 * np.pi * p.d) ** -0.5 / p.lam
    tz = kernel._theta_vec(np.asarray(z, dtype=complex))
    row = np.pi ** -0.5 / p.d * (tz @ kernel.matrix)

    def evaluate(n):
        zeta, w = gauss_legendre_cell(p, n)
        kvals = row @ kernel._theta_vec(np.conj(zeta))
        return pref * np.sum(w * np.exp(-np.imag(zeta) ** 2) * kvals * f(zeta))

    return complex(_refined_quadrature(evaluate, tol, "kernel_apply"))


def apply_weyl_expansion(table: np.ndarray, f: AnalyticState, z) -> complex:
    """Apply an operator given by its phase-space table, as a displaced-f sum.

    Omega = d**-1 sum_ab table[a, b] D(a, b)^dagger with integer labels
    (-a, -b) fed straight to :func:`displaced_f`.
    """
    d = f.params.d
    table = np.asarray(table, dtype=complex)
    if table.shape != (d, d):
        raise ValueError(f"table must be {d}x{d}, got {table.shape}")
    acc = 0j
    for alpha in range(d):
        for beta in range(d):
            if table[alpha, beta] == 0:
                continue
            acc += table[alpha, beta] * displaced_f(f, -alpha, -beta, z)
    return complex(acc / d)


# ---------------------------------------------------------------------------
# resolution of the identity over the cell


def coherent_identity_matrix(params: SystemParams, tol: float = 1e-6) -> np.ndarray:
    """lam (2 pi d)**-1/2 Int_S N(A) |A>><<A| d2A, as a d x d matrix.

    Converges to the identity; evaluated with the same refined tensor
    Gauss-Legendre scheme as the scalar product.  The normalization factor
    cancels against the projector so the integrand is the outer product of
    the unnormalized theta-form amplitudes.
    """
    pref = params.lam * (2 * np.pi * params.d) ** -0.5

    def evaluate(n):
        z, w = gauss_legendre_cell(params, n)
        t = coherent_unnormalized(z, params)  # shape (n*n, d)
        return pref * np.einsum("k,km,kn->mn", w, t, np.conj(t))

    return _refined_quadrature(evaluate, tol, "coherent_identity_matrix")
