"""Finite sections of the operator classes, in the monomial basis.

``entries[m, n] = <A e_n, e_m>``. Closed-form matrix elements are used where
they exist (Weyl, weighted composition, Volterra, shifts, Hausdorff, angular
and radial Toeplitz); everything else goes through quadrature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from . import basis
from .basis import QuadratureRule, basis_matrix, hermite_functions, make_rule, piecewise_line_rule
from .errors import PreconditionError, ReliabilityWarning
from .symbols import (
    AnalyticFunction,
    Angular,
    Constant,
    LineProfile,
    MeasureSpec,
    RadialStep,
    RadialSymbol,
    Symbol,
    SymbolSum,
    Vertical,
)

DEFAULT_N = 48
PHI_SAFE_RE = 6.0


# ----------------------------------------------------------------------------
# operator specs


@dataclass(frozen=True)
class Toeplitz:
    symbol: Symbol
    kind = "toeplitz"


@dataclass(frozen=True)
class Weyl:
    z: complex
    kind = "weyl"


@dataclass(frozen=True)
class WeightedComposition:
    psi: AnalyticFunction
    a: complex = 0j
    lam: complex = 1.0
    kind = "weighted-composition"


@dataclass(frozen=True)
class SingularIntegral:
    m: LineProfile
    method: str = "multiplier"
    kind = "singular-integral"


@dataclass(frozen=True)
class Volterra:
    gprime: AnalyticFunction
    a: complex = 0j
    lam: complex = 1.0
    kind = "volterra"


@dataclass(frozen=True)
class ToeplitzType:
    symbol: Symbol
    j: int = 0
    kind = "toeplitz-type"


@dataclass(frozen=True)
class Hausdorff:
    rho: MeasureSpec
    kind = "hausdorff"


@dataclass(frozen=True)
class Shift:
    k: int = 1
    kind = "shift"


@dataclass(frozen=True)
class Parity:
    kind = "parity"


OperatorSpec = Toeplitz | Weyl | WeightedComposition | SingularIntegral | Volterra | ToeplitzType | Hausdorff | Shift | Parity


def describe(spec) -> str:
    if spec is None:
        return "matrix"
    if isinstance(spec, Weyl):
        return f"W[{complex(spec.z)}]"
    if isinstance(spec, Shift):
        return f"A[{spec.k}]"
    if isinstance(spec, ToeplitzType):
        return f"T^({spec.j})[{spec.symbol.family}]"
    if isinstance(spec, Toeplitz):
        return f"T[{spec.symbol.family}]"
    return spec.kind


# ----------------------------------------------------------------------------
# the matrix container


@dataclass(frozen=True)
class TruncatedOperator:
    """N x N section with provenance. ``expr`` is a nested tuple naming how
    the matrix was produced; ``meta`` carries truncation diagnostics."""

    entries: np.ndarray
    spec: object = None
    expr: object = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise PreconditionError(f"operator entries must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise PreconditionError("operator entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        if self.expr is None:
            object.__setattr__(self, "expr", describe(self.spec))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def H(self):
        return adjoint(self)

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        return linear_combine([(1.0, self), (1.0, other)])

    def __sub__(self, other):
        return linear_combine([(1.0, self), (-1.0, other)])

    def __rmul__(self, c):
        return linear_combine([(c, self)])

    def leading(self, k: int) -> np.ndarray:
        return self.entries[:k, :k]


def _check_dims(*ops):
    dims = {op.dim for op in ops}
    if len(dims) != 1:
        raise PreconditionError(f"dimension mismatch: {sorted(dims)}")


def compose(A: TruncatedOperator, B: TruncatedOperator) -> TruncatedOperator:
    _check_dims(A, B)
    return TruncatedOperator(A.entries @ B.entries, expr=("compose", A.expr, B.expr))


def adjoint(A: TruncatedOperator) -> TruncatedOperator:
    return TruncatedOperator(A.entries.conj().T, expr=("adjoint", A.expr))


def linear_combine(terms) -> TruncatedOperator:
    """``sum c_i A_i`` from a list of ``(c_i, A_i)``."""
    terms = list(terms)
    if not terms:
        raise PreconditionError("linear_combine needs at least one term")
    _check_dims(*(A for _, A in terms))
    out = sum(complex(c) * A.entries for c, A in terms)
    return TruncatedOperator(out, expr=("sum", tuple((complex(c), A.expr) for c, A in terms)))


def identity(N: int) -> TruncatedOperator:
    return TruncatedOperator(np.eye(N), expr="I")


def rank_one(u, v) -> TruncatedOperator:
    """``u (x) v : f -> <f, v> u``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    return TruncatedOperator(np.outer(u, v.conj()), expr="rank-one")


def basis_projection(j: int, N: int) -> TruncatedOperator:
    """``e_j (x) e_j``."""
    if not 0 <= j < N:
        raise PreconditionError("projection index must satisfy 0 <= j < N")
    P = np.zeros((N, N))
    P[j, j] = 1.0
    return TruncatedOperator(P, expr=f"e{j}(x)e{j}")


# ----------------------------------------------------------------------------
# Toeplitz operators


def _radial_weights(rule):
    s = np.asarray(rule.nodes)
    return s, np.asarray(rule.weights)


def toeplitz_radial_eigenvalues(g, N: int, rule: QuadratureRule | None = None) -> np.ndarray:
    """``a_n = (1/n!) int_0^inf g(sqrt s) s^n e^{-s} ds`` by Gauss-Laguerre.

    ``g`` is a callable profile ``r -> value`` or a radial symbol. Radial
    step symbols use the regularized incomplete gamma function instead,
    since Gauss-Laguerre cannot resolve jumps.
    """
    if isinstance(g, RadialStep):
        return g.radial_moments(N)
    if isinstance(g, RadialSymbol):
        g = g.profile
    rule = rule or make_rule("radial-laguerre")
    if rule.kind != "radial-laguerre":
        raise PreconditionError(f"radial eigenvalues need a radial-laguerre rule, got {rule.kind}")
    s, w = _radial_weights(rule)
    vals = np.asarray(g(np.sqrt(s)), dtype=complex)
    n = np.arange(N)[:, None]
    pos = w > 0
    logw = np.log(w[pos])[None, :] + n * np.log(s[pos])[None, :] - gammaln(n + 1)
    out = np.exp(logw) @ vals[pos]
    return out.real if np.all(vals.imag == 0) else out


def _angular_entries(k: int, N: int) -> np.ndarray:
    T = np.zeros((N, N), dtype=complex)
    for n in range(N):
        m = n + k
        if 0 <= m < N:
            T[m, n] = math.exp(gammaln(0.5 * (n + m) + 1) - 0.5 * (gammaln(n + 1) + gammaln(m + 1)))
    return T


def _vertical_entries(f: Vertical, N: int, n_x: int = 120) -> np.ndarray:
    """Cartesian rule: Gauss-Hermite in x, piecewise Legendre in y."""
    x, wx = basis._hermite(n_x)
    brk = tuple(f.sign * b for b in f.m0.breaks)
    y, wy = piecewise_line_rule(brk, 0.0, 10.0, 96)
    wy = wy * np.exp(-y * y)
    fy = np.asarray(f.m0(f.sign * y), dtype=complex)
    z = (x[:, None] + 1j * y[None, :]).ravel()
    w = (wx[:, None] * (wy * fy)[None, :]).ravel() / math.pi
    E = basis_matrix(N, z)
    return (E.conj() * w[None, :]) @ E.T


def toeplitz_matrix(f: Symbol, N: int = DEFAULT_N, rule: QuadratureRule | None = None) -> TruncatedOperator:
    """Section of ``T_f``: ``entries[m, n] = int f e_n conj(e_m) dmu``."""
    sup = f.sup
    if not math.isfinite(sup):
        raise PreconditionError("Toeplitz symbol must be bounded on the quadrature support")
    spec = Toeplitz(f)
    meta = {}
    if isinstance(f, Constant):
        T = complex(f.c) * np.eye(N, dtype=complex)
    elif isinstance(f, RadialSymbol):
        T = np.diag(toeplitz_radial_eigenvalues(f, N)).astype(complex)
        meta["route"] = "radial"
    elif isinstance(f, Angular):
        T = _angular_entries(f.power, N)
        meta["route"] = "angular"
    elif isinstance(f, Vertical):
        T = _vertical_entries(f, N)
        meta["route"] = "cartesian"
    elif isinstance(f, SymbolSum):
        T = sum(c * toeplitz_matrix(t, N, rule).entries for c, t in zip(f.weights, f.terms))
        meta["route"] = "sum"
    else:
        rule = rule or basis.default_planar_rule()
        if rule.kind != "planar-polar":
            raise PreconditionError(f"Toeplitz quadrature needs a planar-polar rule, got {rule.kind}")
        z = np.asarray(rule.nodes)
        fw = np.asarray(f(z), dtype=complex) * np.asarray(rule.weights)
        keep = fw != 0
        E = basis_matrix(N, z[keep])
        T = (E.conj() * fw[keep][None, :]) @ E.T
        meta["route"] = "planar"
        meta["rule"] = rule.sizes
    return TruncatedOperator(T, spec, meta=meta)


# ----------------------------------------------------------------------------
# Weyl, weighted composition, Volterra


def _check_lambda(lam):
    if abs(complex(lam)) > 1 + 1e-12:
        raise PreconditionError(f"weighted composition needs |lambda| <= 1 (unbounded otherwise), got |lambda| = {abs(lam):.6g}")


def _shift_up(v: np.ndarray) -> np.ndarray:
    """Multiplication by w in e-coordinates along axis 0."""
    out = np.zeros_like(v)
    k = np.sqrt(np.arange(1, v.shape[0]))
    out[1:] = (k.reshape((-1,) + (1,) * (v.ndim - 1))) * v[:-1]
    return out


def _wco_columns(col0: np.ndarray, a: complex, lam: complex, N: int) -> np.ndarray:
    """Columns of ``psi (a + lam w)^n / sqrt(n!)``; ``col0`` is psi in
    e-coordinates (axis 0), extra trailing axes are carried along."""
    out = np.zeros((N, N) + col0.shape[1:], dtype=complex)
    cur = col0[:N].astype(complex)
    out[:, 0] = cur
    for n in range(N - 1):
        cur = (lam * _shift_up(cur) + a * cur) / math.sqrt(n + 1)
        out[:, n + 1] = cur
    return out


def _psi_coeffs(psi, N):
    if isinstance(psi, AnalyticFunction):
        return psi.ecoeffs(N)
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1 or v.size < N:
        raise PreconditionError("psi coefficient vector must have length >= N")
    return v[:N]


def weighted_composition_matrix(psi, a=0j, lam=1.0, N: int = DEFAULT_N) -> TruncatedOperator:
    """Section of ``f -> psi * (f o phi)`` with ``phi(w) = a + lam w``.

    ``psi`` is an AnalyticFunction or its e-coefficients. Each retained
    entry is exact: multiplication by w only moves coefficients down.
    """
    a, lam = complex(a), complex(lam)
    _check_lambda(lam)
    W = _wco_columns(_psi_coeffs(psi, N), a, lam, N)
    spec = WeightedComposition(psi, a, lam) if isinstance(psi, AnalyticFunction) else None
    return TruncatedOperator(W, spec, meta={"edge_row_max": float(np.max(np.abs(W[-1])))})


def weyl_matrix(z, N: int = DEFAULT_N) -> TruncatedOperator:
    """Section of ``W_z f(w) = k_z(w) f(w - z)``."""
    z = basis.as_point(z)
    W = _wco_columns(basis.normalized_kernel_coeffs(z, N), -z, 1.0, N)
    half = max(1, N // 2)
    defect = float(np.max(np.abs(1.0 - np.sum(np.abs(W[:, :half]) ** 2, axis=0))))
    return TruncatedOperator(W, Weyl(z), meta={"column_mass_defect": defect})


def volterra_matrix(gprime, a=0j, lam=1.0, N: int = DEFAULT_N) -> TruncatedOperator:
    """Section of ``f -> int_0^z (f o phi) g'``.

    ``V = A^[1] W_{g', phi}`` where ``A^[1] e_m = e_{m+1}/sqrt(m+1)`` is the
    normalized antiderivative, so every retained entry is exact.
    """
    a, lam = complex(a), complex(lam)
    _check_lambda(lam)
    W = _wco_columns(_psi_coeffs(gprime, N), a, lam, N)
    V = np.zeros_like(W)
    V[1:] = W[:-1] / np.sqrt(np.arange(1, N))[:, None]
    spec = Volterra(gprime, a, lam) if isinstance(gprime, AnalyticFunction) else None
    return TruncatedOperator(V, spec)


def shift_A_k_matrix(k: int, N: int = DEFAULT_N) -> TruncatedOperator:
    """``A^[k] e_n = e_{n+k} / sqrt((n+1)...(n+k))``."""
    if k < 0:
        raise PreconditionError("shift order must satisfy k >= 0")
    A = np.zeros((N, N))
    n = np.arange(max(N - k, 0))
    A[n + k, n] = np.exp(-0.5 * (gammaln(n + k + 1) - gammaln(n + 1)))
    return TruncatedOperator(A, Shift(k))


def parity_matrix(N: int = DEFAULT_N) -> TruncatedOperator:
    return TruncatedOperator(np.diag((-1.0) ** np.arange(N)), Parity())


def hausdorff_matrix(rho: MeasureSpec, N: int = DEFAULT_N) -> TruncatedOperator:
    """Diagonal with ``a_n = int t^(-(n+1)) d rho(t)``."""
    for x, _ in rho.atoms:
        if x < 1:
            raise PreconditionError("Hausdorff measure must satisfy rho((0, 1)) = 0")
    return TruncatedOperator(np.diag(rho.moments(N)), Hausdorff(rho), meta={"norm_formula": rho.norm()})


# ----------------------------------------------------------------------------
# singular integral operators


def phi_from_multiplier(m: LineProfile, z, method: str = "auto", safe_re: float = PHI_SAFE_RE, n: int = 200):
    """``phi(z) = sqrt(2/pi) int m(x) exp(-2 (x - i z / 2)^2) dx``.

    ``method='closed'`` uses the analytic Gaussian smoothing of ``m``
    (available for step, cosine, gaussian and constant profiles);
    ``'quadrature'`` integrates along the real line. The quadrature route
    loses about ``exp((Re z)^2 / 2)`` in relative accuracy, so it warns
    beyond ``|Re z| > safe_re``. ``'auto'`` prefers the closed form.
    """
    z = np.asarray(z, dtype=complex)
    s = 0.5j * z
    if method == "auto":
        method = "closed" if m.has_closed_smoothing else "quadrature"
    if method == "closed":
        return m.smoothed(0.25, s)
    if method != "quadrature":
        raise PreconditionError(f"unknown phi method {method!r}")
    if np.any(np.abs(z.real) > safe_re):
        warnings.warn(f"phi quadrature beyond |Re z| <= {safe_re}: cancellation error grows like exp((Re z)^2/2)", ReliabilityWarning, stacklevel=2)
    out = np.empty(z.shape, dtype=complex)
    for idx, sv in np.ndenumerate(s):
        # x = Re s + u / sqrt 2 turns the weight into exp(-u^2)
        sig, tau = sv.real, sv.imag
        brk = tuple(math.sqrt(2) * (b - sig) for b in m.breaks)
        u, w = piecewise_line_rule(brk, 0.0, 9.0, 64) if brk else piecewise_line_rule((), 0.0, 9.0, n)
        vals = m(sig + u / math.sqrt(2)) * np.exp(-u * u + 2j * math.sqrt(2) * tau * u)
        out[idx] = math.exp(2 * tau * tau) * np.sum(w * vals) / math.sqrt(math.pi)
    return out[()]


def _direct_rule_sizes(N):
    return (max(24, N + 12), max(96, 8 * N))


def singular_integral_matrix_direct(m: LineProfile, N: int = 12, rule: QuadratureRule | None = None,
                                    method: str = "auto", chunk: int = 1024) -> TruncatedOperator:
    """``entries[m', n] = int int conj(e_m'(z)) e^{z conj w} phi(z - conj w) e_n(w) dmu(w) dmu(z)``."""
    rule = rule or make_rule("planar-polar", _direct_rule_sizes(N))
    if rule.kind != "planar-polar":
        raise PreconditionError("direct singular-integral construction needs a planar-polar rule")
    z = np.asarray(rule.nodes)
    w = np.asarray(rule.weights)
    keep = w > 0
    z, w = z[keep], w[keep]
    E = basis_matrix(N, z)
    Ew = (E.T * w[:, None])  # (nodes, N)
    out = np.zeros((N, N), dtype=complex)
    for a in range(0, z.size, chunk):
        zz = z[a:a + chunk]
        u = zz[:, None] - np.conj(z)[None, :]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ReliabilityWarning)
            K = np.exp(zz[:, None] * np.conj(z)[None, :]) * phi_from_multiplier(m, u, method=method)
        out += (E[:, a:a + chunk].conj() * w[None, a:a + chunk]) @ (K @ Ew)
    return TruncatedOperator(out, SingularIntegral(m, "direct"), meta={"rule": rule.sizes})


def _fourier_hermite(N, x, L):
    """``F h_n(x) = pi^(-1/2) int exp(-2 i x y) h_n(y) dy`` by composite
    Gauss-Legendre in y."""
    y, wy = piecewise_line_rule(tuple(np.linspace(-L, L, 17)[1:-1]), 0.0, L, 48)
    H = hermite_functions(N, y) * wy[None, :]
    phase = np.exp(-2j * np.outer(y, x))
    return (H @ phase) / math.sqrt(math.pi)


def singular_integral_matrix_multiplier(m: LineProfile, N: int = 12, n_line: int = 96) -> TruncatedOperator:
    """``entries[m', n] = <M_m F h_n, F h_m'>`` in L^2(R), with ``h_n`` the
    Hermite functions mapped to ``e_n`` by the Bargmann transform and ``F``
    evaluated by quadrature."""
    L = math.sqrt(N + 0.5) + 6.0
    brk = tuple(sorted(set(m.breaks) | set(np.linspace(-L, L, 9)[1:-1])))
    x, wx = piecewise_line_rule(brk, 0.0, L, n_line)
    Fh = _fourier_hermite(N, x, L)
    mass = np.sum(np.abs(Fh) ** 2 * wx[None, :], axis=1)
    defect = float(np.max(np.abs(mass - 1.0)))
    if defect > 1e-8:
        warnings.warn(f"line grid under-resolves the Hermite functions (norm defect {defect:.2e})", ReliabilityWarning, stacklevel=2)
    mv = np.asarray(m(x), dtype=complex)
    S = (Fh.conj() * (wx * mv)[None, :]) @ Fh.T
    return TruncatedOperator(S, SingularIntegral(m, "multiplier"), meta={"line_norm_defect": defect})


def singular_integral_matrix(m: LineProfile, N: int = 12, method: str = "multiplier") -> TruncatedOperator:
    if method == "direct":
        return singular_integral_matrix_direct(m, N)
    return singular_integral_matrix_multiplier(m, N)


# ----------------------------------------------------------------------------
# Toeplitz-type operators


def weyl_column_closed(z, j: int, N: int, gaussian: bool = True) -> np.ndarray:
    """``<W_z e_j, e_m>`` for m < N from the displaced-number-state formula
    (generalized Laguerre polynomials). With ``gaussian=False`` the factor
    ``exp(-|z|^2/2)`` is dropped. ``z`` may be an array; output is (N, len z)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    al = np.conj(z)
    x = np.abs(z) ** 2
    out = np.zeros((N, z.size), dtype=complex)
    for m in range(N):
        if m >= j:
            c = math.exp(0.5 * (gammaln(j + 1) - gammaln(m + 1)))
            out[m] = c * al ** (m - j) * eval_genlaguerre(j, m - j, x)
        else:
            c = math.exp(0.5 * (gammaln(m + 1) - gammaln(j + 1)))
            out[m] = c * (-np.conj(al)) ** (j - m) * eval_genlaguerre(m, j - m, x)
    if gaussian:
        out *= np.exp(-0.5 * x)[None, :]
    return out


def toeplitz_type_matrix(f: Symbol, j: int, N: int = 12, rule: QuadratureRule | None = None) -> TruncatedOperator:
    """Section of ``T_f^(j)``:
    ``entries[m, n] = (1/pi) int f(z) <e_n, W_z e_j> <W_z e_j, e_m> dz``.

    The Gaussian factor of the two Weyl coefficients is exactly the density
    of dmu, so the planar Gaussian rule applies directly.
    """
    if j < 0 or j >= N:
        raise PreconditionError("Toeplitz-type index must satisfy 0 <= j < N")
    if not math.isfinite(f.sup):
        raise PreconditionError("Toeplitz-type symbol must be bounded")
    rule = rule or basis.default_planar_rule()
    z = np.asarray(rule.nodes)
    fw = np.asarray(f(z), dtype=complex) * np.asarray(rule.weights)
    keep = fw != 0
    Q = weyl_column_closed(z[keep], j, N, gaussian=False)
    T = (Q * fw[keep][None, :]) @ Q.conj().T
    return TruncatedOperator(T, ToeplitzType(f, j), meta={"rule": rule.sizes})


# ----------------------------------------------------------------------------
# dispatch


def build(spec, N: int = DEFAULT_N, rule: QuadratureRule | None = None) -> TruncatedOperator:
    if N < 1:
        raise PreconditionError("truncation dimension must satisfy N >= 1")
    if isinstance(spec, Toeplitz):
        return toeplitz_matrix(spec.symbol, N, rule)
    if isinstance(spec, Weyl):
        return weyl_matrix(spec.z, N)
    if isinstance(spec, WeightedComposition):
        if spec.psi.is_zero:
            raise PreconditionError("weighted composition needs psi != 0")
        return weighted_composition_matrix(spec.psi, spec.a, spec.lam, N)
    if isinstance(spec, SingularIntegral):
        return singular_integral_matrix(spec.m, N, spec.method)
    if isinstance(spec, Volterra):
        return volterra_matrix(spec.gprime, spec.a, spec.lam, N)
    if isinstance(spec, ToeplitzType):
        return toeplitz_type_matrix(spec.symbol, spec.j, N, rule)
    if isinstance(spec, Hausdorff):
        return hausdorff_matrix(spec.rho, N)
    if isinstance(spec, Shift):
        return shift_A_k_matrix(spec.k, N)
    if isinstance(spec, Parity):
        return parity_matrix(N)
    raise PreconditionError(f"unknown operator spec {type(spec).__name__}")
