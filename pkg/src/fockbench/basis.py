"""Monomial basis, reproducing kernels, special functions and quadrature
rules for integration against the Gaussian measure
``dmu(z) = exp(-|z|^2) dz / pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_hermite, roots_laguerre, roots_legendre

from .errors import PreconditionError

RULE_KINDS = ("radial-laguerre", "angular-uniform", "line-hermite", "planar-polar")

DEFAULT_RADIAL_NODES = 200
DEFAULT_ANGULAR_NODES = 256
DEFAULT_LINE_NODES = 200


def as_point(z) -> complex:
    """Coerce to a finite complex scalar; ``[re, im]`` pairs are accepted."""
    if isinstance(z, (list, tuple)) and len(z) == 2:
        z = complex(float(z[0]), float(z[1]))
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise PreconditionError(f"complex point must be finite, got {z!r}")
    return z


def _log_abs_and_phase(z):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    with np.errstate(divide="ignore"):
        logr = np.log(r)
    return logr, np.angle(z), r == 0


def monomial_basis_eval(n: int, z):
    """e_n(z) = z^n / sqrt(n!), evaluated in log-magnitude/phase form."""
    if n < 0:
        raise PreconditionError("basis index must satisfy n >= 0")
    if n == 0:
        return np.ones_like(np.asarray(z, dtype=complex))[()]
    logr, phase, zero = _log_abs_and_phase(z)
    with np.errstate(invalid="ignore"):
        val = np.exp(n * logr - 0.5 * gammaln(n + 1) + 1j * n * phase)
    return np.where(zero, 0.0, val)[()]


def basis_matrix(N: int, z) -> np.ndarray:
    """Array ``E`` of shape ``(N, len(z))`` with ``E[n, j] = e_n(z_j)``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    logr, phase, zero = _log_abs_and_phase(z)
    n = np.arange(N)[:, None]
    with np.errstate(invalid="ignore"):
        out = np.exp(n * logr[None, :] - 0.5 * gammaln(n + 1) + 1j * n * phase[None, :])
    out[:, zero] = 0.0
    out[0, :] = 1.0
    return out


def kernel_eval(w, z):
    """Reproducing kernel K_z(w) = exp(w * conj(z))."""
    return np.exp(np.asarray(w, dtype=complex) * np.conj(np.asarray(z, dtype=complex)))[()]


def normalized_kernel_coeffs(z, N: int) -> np.ndarray:
    """Coefficients of k_z in the monomial basis, truncated to length N.

    c_n = exp(-|z|^2/2) conj(z)^n / sqrt(n!).
    """
    if N < 1:
        raise PreconditionError("truncation dimension must satisfy N >= 1")
    z = complex(z)
    if z == 0:
        c = np.zeros(N, dtype=complex)
        c[0] = 1.0
        return c
    n = np.arange(N)
    r = abs(z)
    return np.exp(-0.5 * r * r + n * math.log(r) - 0.5 * gammaln(n + 1) - 1j * n * math.atan2(z.imag, z.real))


def kernel_coeff_matrix(z, N: int) -> np.ndarray:
    """Columns are ``normalized_kernel_coeffs(z_j, N)``; shape ``(N, len(z))``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return np.exp(-0.5 * np.abs(z) ** 2)[None, :] * np.conj(basis_matrix(N, z))


def laguerre_poly(j: int, x):
    """Laguerre polynomial L_j(x) = sum_k C(j,k) (-1)^k x^k / k!."""
    if j < 0:
        raise PreconditionError("Laguerre degree must satisfy j >= 0")
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for k in range(j, -1, -1):
        total = total * x + math.comb(j, k) * (-1) ** k / math.factorial(k)
    return total[()]


def hermite_functions(N: int, x) -> np.ndarray:
    """Rows h_0..h_{N-1} evaluated at ``x``.

    h_n(x) = (2/pi)^(1/4) (2^n n!)^(-1/2) H_n(sqrt(2) x) exp(-x^2), the
    normalization under which the Bargmann transform maps h_n to e_n.
    Computed by the three-term recurrence for normalized functions.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((N, x.size))
    y = math.sqrt(2.0) * x
    out[0] = (2.0 / math.pi) ** 0.25 * np.exp(-x * x)
    if N > 1:
        out[1] = math.sqrt(2.0) * y * out[0]
    for k in range(1, N - 1):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * y * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_function(n: int, x):
    if n < 0:
        raise PreconditionError("Hermite index must satisfy n >= 0")
    return hermite_functions(n + 1, x)[n].reshape(np.shape(x))[()]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for one of the four rule kinds.

    radial-laguerre   int_0^inf F(s) e^{-s} ds
    angular-uniform   (1/2pi) int_0^{2pi} F(theta) dtheta
    line-hermite      int_R F(x) e^{-x^2} dx
    planar-polar      int_C F dmu; nodes sqrt(s) e^{i theta}
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    sizes: tuple

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise PreconditionError(f"unknown rule kind {self.kind!r}")
        if self.nodes.size < 1 or self.nodes.shape != self.weights.shape:
            raise PreconditionError("rule needs at least one node and matching weights")
        if self.kind == "planar-polar" and self.nodes.size != self.sizes[0] * self.sizes[1]:
            raise PreconditionError("planar-polar rule needs n_r * n_theta nodes")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return self.nodes.size

    def lebesgue_weights(self) -> np.ndarray:
        """Planar weights for ``(1/pi) int F dz`` (Gaussian density divided out).

        Nodes whose Gaussian weight underflowed to zero get weight zero.
        """
        if self.kind != "planar-polar":
            raise PreconditionError("Lebesgue weights need a planar-polar rule")
        w = np.asarray(self.weights)
        s = np.abs(np.asarray(self.nodes)) ** 2
        out = np.zeros_like(w)
        pos = w > 0
        out[pos] = np.exp(np.log(w[pos]) + s[pos])
        return out


@lru_cache(maxsize=32)
def _laguerre(n):
    s, w = roots_laguerre(n)
    return s, w


@lru_cache(maxsize=32)
def _hermite(n):
    return roots_hermite(n)


@lru_cache(maxsize=32)
def _legendre(n):
    return roots_legendre(n)


def make_rule(kind: str, sizes=None) -> QuadratureRule:
    """Build a rule. ``sizes`` is ``(n,)`` or ``(n_r, n_theta)`` for planar-polar."""
    if sizes is None:
        sizes = {
            "radial-laguerre": (DEFAULT_RADIAL_NODES,),
            "angular-uniform": (DEFAULT_ANGULAR_NODES,),
            "line-hermite": (DEFAULT_LINE_NODES,),
            "planar-polar": (DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES),
        }.get(kind, (1,))
    sizes = tuple(int(k) for k in np.atleast_1d(sizes))
    if any(k < 1 for k in sizes):
        raise PreconditionError(f"rule sizes must be positive, got {sizes}")
    if kind == "radial-laguerre":
        s, w = _laguerre(sizes[0])
        return QuadratureRule(kind, s.copy(), w.copy(), sizes)
    if kind == "angular-uniform":
        n = sizes[0]
        theta = 2.0 * np.pi * np.arange(n) / n
        return QuadratureRule(kind, theta, np.full(n, 1.0 / n), sizes)
    if kind == "line-hermite":
        x, w = _hermite(sizes[0])
        return QuadratureRule(kind, x.copy(), w.copy(), sizes)
    if kind == "planar-polar":
        if len(sizes) != 2:
            raise PreconditionError("planar-polar rule needs sizes (n_r, n_theta)")
        n_r, n_t = sizes
        s, w = _laguerre(n_r)
        theta = 2.0 * np.pi * np.arange(n_t) / n_t
        nodes = (np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = np.repeat(w / n_t, n_t)
        return QuadratureRule(kind, nodes, weights, sizes)
    raise PreconditionError(f"unknown rule kind {kind!r}")


def default_planar_rule() -> QuadratureRule:
    return _default_planar()


@lru_cache(maxsize=1)
def _default_planar():
    return make_rule("planar-polar")


def integrate_gaussian(F, rule: QuadratureRule | None = None) -> complex:
    """Approximate ``int_C F dmu`` with a planar-polar rule."""
    rule = rule or default_planar_rule()
    if rule.kind != "planar-polar":
        raise PreconditionError(f"integrate_gaussian needs a planar-polar rule, got {rule.kind}")
    vals = np.broadcast_to(np.asarray(F(rule.nodes), dtype=complex), rule.nodes.shape)
    return complex(np.sum(rule.weights * vals))


def piecewise_line_rule(breaks=(), center: float = 0.0, half_width: float = 12.0, n: int = 96):
    """Composite Gauss-Legendre nodes/weights on ``[center-hw, center+hw]``
    split at ``breaks``; for Gaussian-decaying integrands with jumps."""
    lo, hi = center - half_width, center + half_width
    cuts = [lo] + sorted(b for b in breaks if lo < b < hi) + [hi]
    t, w = _legendre(n)
    xs, ws = [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        xs.append(0.5 * (b - a) * t + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)
