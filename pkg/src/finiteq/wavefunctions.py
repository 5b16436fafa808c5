"""Square-integrable reference wavefunctions on the real line.

Three families feed the line-to-cycle transform: harmonic-oscillator
eigenfunctions (``HermiteNumber``), displaced Gaussians
(``GaussianCoherent``), and tabulated data (``SampledGrid``).  Each exposes

* ``__call__(x)``         -- pointwise values, vectorized, and
* ``fourier_at(p)``       -- values of (2 pi)**-0.5 Integral psi(x) e^{+ipx} dx.

The plus-sign kernel is used so that the Hermite functions transform with
eigenvalue i**N and a displaced Gaussian with label A transforms into the
one with label iA, both without extra prefactors.
"""

from __future__ import annotations

import csv

import numpy as np
from scipy.interpolate import CubicSpline

__all__ = [
    "hermite_function",
    "HermiteNumber",
    "GaussianCoherent",
    "SampledGrid",
    "sampled_from_csv",
]


def hermite_function(n: int, x) -> np.ndarray:
    """Normalized harmonic-oscillator eigenfunction of index n.

    Evaluated through the stable two-term recurrence

        phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}

    starting from phi_0 = pi**-0.25 exp(-x^2/2), which avoids the factorial
    overflow of the monomial form well past n = 50.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"Hermite index must be nonnegative, got {n}")
    x = np.asarray(x, dtype=float)
    phi_prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return phi_prev
    phi = np.sqrt(2.0) * x * phi_prev
    for k in range(1, n):
        phi_prev, phi = phi, x * np.sqrt(2.0 / (k + 1)) * phi - np.sqrt(k / (k + 1.0)) * phi_prev
    return phi


class HermiteNumber:
    """The n-th oscillator eigenfunction; Fourier eigenvector with value i**n."""

    def __init__(self, n: int):
        self.n = int(n)
        if self.n < 0:
            raise ValueError(f"Hermite index must be nonnegative, got {n}")

    def __call__(self, x):
        return hermite_function(self.n, x).astype(complex)

    def fourier_at(self, p):
        return (1j) ** self.n * hermite_function(self.n, p)

    def __repr__(self):
        return f"HermiteNumber({self.n})"


class GaussianCoherent:
    """Displaced Gaussian pi**-0.25 exp(-x^2/2 + A x - Re(A) A / 2)."""

    def __init__(self, label: complex):
        self.label = complex(label)
        if not np.isfinite(self.label.real) or not np.isfinite(self.label.imag):
            raise ValueError("Gaussian label must be finite")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        a = self.label
        return np.pi ** -0.25 * np.exp(-0.5 * x * x + a * x - 0.5 * a.real * a)

    def fourier_at(self, p):
        # the plus-kernel transform maps label A to iA with no prefactor
        return GaussianCoherent(1j * self.label)(p)

    def __repr__(self):
        return f"GaussianCoherent({self.label})"


class SampledGrid:
    """Wavefunction tabulated on an ascending real grid.

    Off-grid queries interpolate with a cubic spline.  Queries outside the
    tabulated range return zero, which is only legitimate when the data has
    decayed at the grid edges; otherwise the call raises.
    """

    def __init__(self, x, values, support_tol: float = 1e-12):
        self.x = np.asarray(x, dtype=float).reshape(-1)
        self.values = np.asarray(values, dtype=complex).reshape(-1)
        if self.x.size != self.values.size:
            raise ValueError("grid and values must have the same length")
        if self.x.size < 4:
            raise ValueError("need at least 4 grid points")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("grid must be strictly increasing")
        peak = np.max(np.abs(self.values))
        if peak == 0.0:
            raise ValueError("sampled wavefunction is identically zero")
        self._edge_ratio = max(abs(self.values[0]), abs(self.values[-1])) / peak
        self._support_tol = float(support_tol)
        self._spline_re = CubicSpline(self.x, self.values.real)
        self._spline_im = CubicSpline(self.x, self.values.imag)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.x[0]) & (x <= self.x[-1])
        if not np.all(inside) and self._edge_ratio > self._support_tol:
            raise ValueError(
                "grid support too small: values at the grid edges have not "
                f"decayed (edge/peak = {self._edge_ratio:.2e}) but points outside "
                "the grid were requested"
            )
        out = np.zeros(np.shape(x), dtype=complex)
        xin = np.atleast_1d(x)[np.atleast_1d(inside)]
        vals = self._spline_re(xin) + 1j * self._spline_im(xin)
        if out.ndim == 0:
            return complex(vals[0]) if inside else 0j
        out[inside] = vals
        return out

    def fourier_at(self, p):
        """Trapezoid quadrature of the plus-kernel Fourier integral on the grid."""
        p = np.asarray(p, dtype=float)
        kernel = np.exp(1j * np.multiply.outer(p, self.x))
        return (2 * np.pi) ** -0.5 * np.trapezoid(kernel * self.values, self.x, axis=-1)

    def __repr__(self):
        return f"SampledGrid(n={self.x.size}, range=[{self.x[0]:g}, {self.x[-1]:g}])"


def sampled_from_csv(path) -> SampledGrid:
    """Load a SampledGrid from CSV rows ``x,re,im`` (a header row is allowed)."""
    xs, vals = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            try:
                x = float(row[0])
            except ValueError:
                continue  # header
            if len(row) < 3:
                raise ValueError(f"CSV row needs x,re,im fields, got {row!r}")
            xs.append(x)
            vals.append(complex(float(row[1]), float(row[2])))
    if not xs:
        raise ValueError(f"no data rows found in {path}")
    return SampledGrid(np.array(xs), np.array(vals))
