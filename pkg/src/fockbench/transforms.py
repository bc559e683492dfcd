"""Berezin-type transforms, phase-space shifts, QHA convolutions, the
Fourier-Weyl transform and the Bargmann transform on truncated operators."""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import basis
from .basis import QuadratureRule, kernel_coeff_matrix, make_rule, piecewise_line_rule
from .errors import PreconditionError, ReliabilityWarning
from .operators import (
    TruncatedOperator,
    adjoint,
    compose,
    parity_matrix,
    weyl_matrix,
)


def reliable_radius(N: int) -> float:
    return math.sqrt(N) / 2.0


def _radius_guard(N, *pts, what="berezin"):
    R = reliable_radius(N)
    for p in pts:
        if np.any(np.abs(np.asarray(p)) > R + 1e-12):
            warnings.warn(f"{what}: point outside the reliable radius {R:.3g} for N = {N}", ReliabilityWarning, stacklevel=3)
            return False
    return True


def berezin(A: TruncatedOperator, z):
    """``<A k_z, k_z>``; ``z`` may be an array."""
    z = np.asarray(z, dtype=complex)
    _radius_guard(A.dim, z)
    C = kernel_coeff_matrix(z.ravel(), A.dim)
    vals = np.einsum("mk,mn,nk->k", C.conj(), A.entries, C)
    return vals.reshape(z.shape)[()]


def bivariate_berezin(A: TruncatedOperator, w, z):
    """``<A k_w, k_z>``; ``w`` and ``z`` broadcast against each other."""
    w, z = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex))
    _radius_guard(A.dim, w, z)
    Cw = kernel_coeff_matrix(w.ravel(), A.dim)
    Cz = kernel_coeff_matrix(z.ravel(), A.dim)
    vals = np.einsum("mk,mn,nk->k", Cz.conj(), A.entries, Cw)
    return vals.reshape(w.shape)[()]


def canonical_kernel(A: TruncatedOperator, w, z):
    """``<A K_w, K_z> = exp((|z|^2 + |w|^2)/2) <A k_w, k_z>``."""
    w, z = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex))
    if np.any(np.abs(w) > 6) or np.any(np.abs(z) > 6):
        raise PreconditionError("canonical kernel evaluation needs |z|, |w| <= 6 (overflow guard)")
    return (np.exp(0.5 * (np.abs(z) ** 2 + np.abs(w) ** 2)) * bivariate_berezin(A, w, z))[()]


def compose_berezin_check(A: TruncatedOperator, B: TruncatedOperator, w, z, rule: QuadratureRule | None = None):
    """Both sides of the kernel composition identity for ``AB``.

    ``lhs = <AB k_w, k_z>`` from the matrix product, ``rhs`` is
    ``(1/pi) int B~(w, xi) A~(xi, z) dxi`` by planar quadrature.
    """
    if A.dim != B.dim:
        raise PreconditionError("dimension mismatch")
    w, z = complex(w), complex(z)
    _radius_guard(A.dim, w, z)
    lhs = complex(bivariate_berezin(compose(A, B), w, z))
    rule = rule or make_rule("planar-polar", (max(40, A.dim + 8), max(64, 4 * A.dim)))
    xi = np.asarray(rule.nodes)
    # K_xi coefficients; the exp(-|xi|^2) of both normalizations is dmu's density
    X = kernel_coeff_matrix(xi, A.dim) * np.exp(0.5 * np.abs(xi) ** 2)[None, :]
    cw = basis.normalized_kernel_coeffs(w, A.dim)
    cz = basis.normalized_kernel_coeffs(z, A.dim)
    b_vals = X.conj().T @ (B.entries @ cw)      # B~(w, xi) up to the Gaussian
    a_vals = (cz.conj() @ A.entries) @ X         # A~(xi, z) up to the Gaussian
    rhs = complex(np.sum(np.asarray(rule.weights) * b_vals * a_vals))
    return lhs, rhs


def heat_transform(f, t: float, w, rule: QuadratureRule | None = None):
    """``(f * g_t)(w)`` with ``g_t(z) = exp(-|z|^2/t)/(pi t)``, i.e.
    ``int f(w + sqrt(t) xi) dmu(xi)``."""
    if not t > 0:
        raise PreconditionError("heat transform needs t > 0")
    rule = rule or basis.default_planar_rule()
    if rule.kind != "planar-polar":
        raise PreconditionError("heat transform needs a planar-polar rule")
    w = np.asarray(w, dtype=complex)
    xi = np.asarray(rule.nodes)
    wt = np.asarray(rule.weights)
    keep = wt > 0
    xi, wt = xi[keep], wt[keep]
    out = np.empty(w.shape, dtype=complex)
    for idx, wv in np.ndenumerate(w):
        out[idx] = np.sum(wt * np.asarray(f(wv + math.sqrt(t) * xi), dtype=complex))
    return out[()]


def parity_conjugate(A: TruncatedOperator) -> TruncatedOperator:
    """``R A R`` with ``R f(z) = f(-z)``."""
    s = (-1.0) ** np.arange(A.dim)
    return TruncatedOperator(A.entries * np.outer(s, s), expr=("parity", A.expr))


def shift_operator(A: TruncatedOperator, z, radius: float = 1.5) -> TruncatedOperator:
    """``alpha_z(A) = W_z A W_z^*``."""
    z = basis.as_point(z)
    if abs(z) > radius:
        warnings.warn(f"shift by |z| = {abs(z):.3g} beyond the reliability radius {radius}", ReliabilityWarning, stacklevel=2)
    W = weyl_matrix(z, A.dim)
    out = compose(W, compose(A, adjoint(W)))
    return TruncatedOperator(out.entries, expr=("shift", complex(z), A.expr))


def _polynomial_weyl(z: np.ndarray, N: int) -> np.ndarray:
    """``P_z = exp(|z|^2/2) W_z`` for an array of points, shape (k, N, N).
    Column 0 holds the coefficients of K_z, so all entries are polynomials."""
    z = np.asarray(z, dtype=complex)
    col0 = basis.basis_matrix(N, z).conj()
    out = np.zeros((N, N, z.size), dtype=complex)
    cur = col0
    out[:, 0] = cur
    shift = np.sqrt(np.arange(1, N))[:, None]
    for k in range(N - 1):
        nxt = np.zeros_like(cur)
        nxt[1:] = shift * cur[:-1]
        cur = (nxt - z[None, :] * cur) / math.sqrt(k + 1)
        out[:, k + 1] = cur
    return np.moveaxis(out, 2, 0)


def qha_convolve_function_operator(f, A: TruncatedOperator, rule: QuadratureRule | None = None, chunk: int = 2048) -> TruncatedOperator:
    """``f * A = int f(z) alpha_z(A) dz`` (Lebesgue measure).

    ``alpha_z(A) = exp(-|z|^2) P_z A P_z^*`` with polynomial ``P_z``, so the
    integral is ``pi int f(z) P_z A P_z^* dmu(z)`` on the Gaussian rule.
    """
    rule = rule or basis.default_planar_rule()
    if rule.kind != "planar-polar":
        raise PreconditionError("QHA convolution needs a planar-polar rule")
    z = np.asarray(rule.nodes)
    fw = np.asarray(f(z), dtype=complex) * np.asarray(rule.weights)
    keep = fw != 0
    z, fw = z[keep], fw[keep]
    N = A.dim
    out = np.zeros((N, N), dtype=complex)
    for a in range(0, z.size, chunk):
        P = _polynomial_weyl(z[a:a + chunk], N)
        PA = P @ A.entries
        out += np.einsum("k,kab,kcb->ac", fw[a:a + chunk], PA, P.conj(), optimize=True)
    return TruncatedOperator(math.pi * out, expr=("qha", getattr(f, "family", "f"), A.expr), meta={"rule": rule.sizes})


def qha_convolve_operator_operator(A: TruncatedOperator, B: TruncatedOperator, z):
    """``(A * B)(z) = tr(A alpha_z(R B R))``."""
    if A.dim != B.dim:
        raise PreconditionError("dimension mismatch")
    z = np.asarray(z, dtype=complex)
    _radius_guard(A.dim, z, what="operator convolution")
    RBR = parity_conjugate(B).entries
    out = np.empty(z.shape, dtype=complex)
    for idx, zv in np.ndenumerate(z):
        W = weyl_matrix(complex(zv), A.dim).entries
        out[idx] = np.trace(A.entries @ W @ RBR @ W.conj().T)
    return out[()]


def fourier_weyl(A: TruncatedOperator, xi, return_tail: bool = False):
    """``tr(A W_{-xi})``. With ``return_tail`` also the part of the trace
    carried by the last quarter of the diagonal, a truncation indicator."""
    xi = basis.as_point(xi)
    _radius_guard(A.dim, xi, what="fourier-weyl")
    prod = A.entries @ weyl_matrix(-xi, A.dim).entries
    d = np.diag(prod)
    val = complex(np.sum(d))
    if return_tail:
        q = max(1, A.dim // 4)
        return val, complex(np.sum(d[-q:]))
    return val


def bargmann_transform(f, z, rule: QuadratureRule | None = None):
    """``(2/pi)^(1/4) int f(x) exp(2 x z - x^2 - z^2/2) dx``.

    With no rule, composite Gauss-Legendre on [-12, 12] (split at the
    breakpoints of ``f`` if it has any). A line-hermite rule is applied
    after ``x = u / sqrt 2``.
    """
    z = np.asarray(z, dtype=complex)
    if rule is None:
        brk = tuple(getattr(f, "breaks", ()))
        x, w = piecewise_line_rule(tuple(sorted(set(brk) | {-6.0, 0.0, 6.0})), 0.0, 12.0, 64)
    elif rule.kind == "line-hermite":
        u = np.asarray(rule.nodes)
        x = u / math.sqrt(2.0)
        w = np.exp(np.log(np.asarray(rule.weights)) + u * u) / math.sqrt(2.0)
    else:
        raise PreconditionError("Bargmann transform needs a line-hermite rule or the default line rule")
    fx = np.asarray(f(x), dtype=complex)
    zz = z.ravel()[:, None]
    ker = np.exp(2 * x[None, :] * zz - x[None, :] ** 2 - 0.5 * zz * zz)
    out = (2.0 / math.pi) ** 0.25 * (ker @ (w * fx))
    return out.reshape(z.shape)[()]


def parity_operator(N: int) -> TruncatedOperator:
    return parity_matrix(N)
