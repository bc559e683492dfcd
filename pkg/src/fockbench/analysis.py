"""Sampled boundedness/compactness predicates, norm formulas, the distance
bound for weighted composition operators, symbol recovery maps, Fredholm
index estimates and localization checks.

Verdicts from sampling are evidence, not proofs: an unbounded quantity is
reported as ``fails`` with the sample point that exhibits growth.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .basis import piecewise_line_rule
from .errors import PreconditionError, ReliabilityWarning
from .operators import (
    TruncatedOperator,
    hausdorff_matrix,
    singular_integral_matrix,
    toeplitz_matrix,
    toeplitz_radial_eigenvalues,
    weighted_composition_matrix,
)
from .symbols import (
    AnalyticFunction,
    Constant,
    GaussianRadial,
    LineProfile,
    MeasureSpec,
    Smoothed,
    Symbol,
    SymbolSum,
    Vertical,
)
from .transforms import berezin, bivariate_berezin, reliable_radius

VERDICTS = ("holds", "fails", "inconclusive")
DEFAULT_LADDER = (2.0, 4.0, 6.0, 8.0)
DEFAULT_ANGLES = 64
STABILITY = 0.10
DECAY_TOL = 1e-6
# log-log slope over the outer rungs that counts as decay to zero
DECAY_SLOPE = -0.5
_EXP_MAX = 700.0


@dataclass(frozen=True)
class PredicateReport:
    name: str
    verdict: str
    witness: object = None
    data: tuple = ()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        if self.verdict == "fails" and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        object.__setattr__(self, "data", tuple(self.data))

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def value(self, key, default=None):
        for k, v in self.data:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Predicates:
    """Boundedness and compactness verdicts for one operator."""

    bounded: PredicateReport
    compact: PredicateReport


@dataclass(frozen=True)
class DecayProfile:
    radii: tuple
    sup_values: tuple
    truncated: bool = False

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.size != len(self.sup_values):
            raise ValueError("one sup value per radius")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ValueError("radii must be positive and strictly increasing")


@dataclass(frozen=True)
class IndexEstimate:
    index: int | None
    stable: bool
    per_dim: tuple  # (N, dim ker A, dim ker A*)

    @property
    def verdict(self) -> str:
        return "holds" if self.stable else "inconclusive"


def operator_norm(A) -> float:
    M = A.entries if isinstance(A, TruncatedOperator) else np.asarray(A)
    if not np.all(np.isfinite(M)):
        raise PreconditionError("operator norm needs a finite matrix")
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


# ----------------------------------------------------------------------------
# M_z and R


def _log_abs(v):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(v))


def M_z_quantity(psi: AnalyticFunction, a, lam, z):
    """``|psi(z)|^2 exp(|a + lam z|^2 - |z|^2)``, inf where it overflows."""
    z = np.asarray(z, dtype=complex)
    a, lam = complex(a), complex(lam)
    expo = 2 * _log_abs(psi(z)) + np.abs(a + lam * z) ** 2 - np.abs(z) ** 2
    with np.errstate(over="ignore"):
        return np.where(expo > _EXP_MAX, np.inf, np.exp(np.minimum(expo, _EXP_MAX)))[()]


def R_quantity(gprime: AnalyticFunction, a, lam, z):
    """``|g'(z)| / (1 + |z|) * exp((|a + lam z|^2 - |z|^2) / 2)``."""
    z = np.asarray(z, dtype=complex)
    a, lam = complex(a), complex(lam)
    expo = _log_abs(gprime(z)) - np.log1p(np.abs(z)) + 0.5 * (np.abs(a + lam * z) ** 2 - np.abs(z) ** 2)
    with np.errstate(over="ignore"):
        return np.where(expo > _EXP_MAX, np.inf, np.exp(np.minimum(expo, _EXP_MAX)))[()]


def _circle(r, n_angles):
    return r * np.exp(2j * np.pi * np.arange(n_angles) / n_angles)


def _ladder_scan(fn, ladder, n_angles):
    """Sup over each disc |z| <= rung (sampled on concentric circles) and
    max over each rung's circle, with the arg-max points."""
    ladder = tuple(float(r) for r in ladder)
    if not ladder or min(ladder) <= 0 or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise PreconditionError("radius ladder must be positive and strictly increasing")
    radii = np.union1d(np.linspace(0.0, ladder[-1], int(8 * ladder[-1]) + 1), ladder)
    circle_max, circle_arg = [], []
    for r in radii:
        pts = _circle(r, n_angles) if r > 0 else np.array([0j])
        v = np.asarray(fn(pts), dtype=float)
        k = int(np.argmax(v))
        circle_max.append(v[k])
        circle_arg.append(pts[k])
    circle_max = np.asarray(circle_max)
    disc_sup, disc_arg, rung_max, rung_arg = [], [], [], []
    for R in ladder:
        inside = radii <= R + 1e-12
        k = int(np.argmax(np.where(inside, circle_max, -np.inf)))
        disc_sup.append(circle_max[k])
        disc_arg.append(circle_arg[k])
        j = int(np.argmin(np.abs(radii - R)))
        rung_max.append(circle_max[j])
        rung_arg.append(circle_arg[j])
    return ladder, np.asarray(disc_sup), disc_arg, np.asarray(rung_max), rung_arg


def _ladder_predicates(name, fn, ladder, n_angles, force_noncompact=None):
    ladder, disc_sup, disc_arg, rung_max, rung_arg = _ladder_scan(fn, ladder, n_angles)
    data = [("ladder", ladder), ("disc_sup", tuple(disc_sup)), ("circle_max", tuple(rung_max))]
    s_in, s_out = disc_sup[-2] if len(ladder) > 1 else disc_sup[-1], disc_sup[-1]
    if not np.isfinite(s_out) or (np.isfinite(s_in) and s_out > (1 + STABILITY) * s_in):
        bounded = PredicateReport(f"{name}:bounded", "fails", (complex(disc_arg[-1]), float(s_out)), data)
    else:
        bounded = PredicateReport(f"{name}:bounded", "holds", None, data + [("sup", float(s_out))])
    if bounded.verdict == "fails":
        compact = PredicateReport(f"{name}:compact", "fails", bounded.witness, data)
        return Predicates(bounded, compact)
    if force_noncompact is not None:
        compact = PredicateReport(f"{name}:compact", "fails", (complex(rung_arg[-1]), float(rung_max[-1])),
                                  data + [("reason", force_noncompact)])
        return Predicates(bounded, compact)
    last = rung_max[-1]
    decreasing = bool(np.all(np.diff(rung_max) <= 1e-15 * max(1.0, rung_max[0])))
    slope = None
    if len(ladder) > 1 and rung_max[-2] > 0 and last > 0:
        slope = math.log(last / rung_max[-2]) / math.log(ladder[-1] / ladder[-2])
    data = data + [("slope", slope)]
    if last < DECAY_TOL or (decreasing and slope is not None and slope <= DECAY_SLOPE):
        compact = PredicateReport(f"{name}:compact", "holds", None, data)
    elif decreasing:
        compact = PredicateReport(f"{name}:compact", "inconclusive", (complex(rung_arg[-1]), float(last)), data)
    else:
        compact = PredicateReport(f"{name}:compact", "fails", (complex(rung_arg[-1]), float(last)), data)
    return Predicates(bounded, compact)


def wco_predicates(psi: AnalyticFunction, a=0j, lam=1.0, ladder=DEFAULT_LADDER, n_angles: int = DEFAULT_ANGLES) -> Predicates:
    """Bounded iff sup M_z is finite, compact iff M_z -> 0; both sampled on
    the ladder. ``|lam| = 1`` rules out compactness."""
    lam = complex(lam)
    force = "|lambda| = 1 keeps M_z from vanishing" if abs(abs(lam) - 1) < 1e-12 else None
    return _ladder_predicates("wco", lambda z: M_z_quantity(psi, a, lam, z), ladder, n_angles, force)


def volterra_predicates(gprime: AnalyticFunction, a=0j, lam=1.0, ladder=DEFAULT_LADDER, n_angles: int = DEFAULT_ANGLES) -> Predicates:
    return _ladder_predicates("volterra", lambda z: R_quantity(gprime, a, lam, z), ladder, n_angles)


def hausdorff_predicates(rho: MeasureSpec) -> Predicates:
    """Bounded: ``rho((0,1)) = 0`` (enforced by MeasureSpec) and finite
    ``int (1/t) d|rho|``; compact: no atom at 1."""
    norm = rho.norm()
    data = [("norm", norm), ("mass_at_one", rho.mass_at_one)]
    if math.isfinite(norm):
        bounded = PredicateReport("hausdorff:bounded", "holds", None, data)
    else:
        bounded = PredicateReport("hausdorff:bounded", "fails", ("int (1/t) d|rho|", norm), data)
    if rho.mass_at_one != 0:
        compact = PredicateReport("hausdorff:compact", "fails", (1.0, rho.mass_at_one), data)
    else:
        compact = PredicateReport("hausdorff:compact", "holds" if bounded.holds else "fails",
                                  bounded.witness, data)
    return Predicates(bounded, compact)


# ----------------------------------------------------------------------------
# distance to the Toeplitz algebra


@dataclass(frozen=True)
class DistanceBound:
    value: float
    limsup: float
    norm: float
    stable: bool

    def __float__(self):
        return self.value


def distance_lower_bound(psi: AnalyticFunction, a=0j, lam=-1.0, ladder=DEFAULT_LADDER,
                         n_angles: int = DEFAULT_ANGLES, N: int = 48) -> DistanceBound:
    """``limsup M_z / ||W_{psi,phi}||``.

    The limsup is the max of the circle maxima on the outer two rungs. The
    norm is estimated as ``max(||section||, sqrt(sup M_z))``; both are lower
    bounds for the true norm, so the ratio may overestimate the bound by the
    truncation gap of the section norm.
    """
    a, lam = complex(a), complex(lam)
    if abs(lam - 1) < 1e-14:
        raise PreconditionError("distance bound needs lambda != 1")
    if abs(lam) > 1 + 1e-12:
        raise PreconditionError("distance bound needs |lambda| <= 1")
    if psi.is_zero:
        raise PreconditionError("distance bound needs W_{psi,phi} != 0")
    pred = wco_predicates(psi, a, lam, ladder, n_angles)
    if not pred.bounded.holds:
        raise PreconditionError("distance bound needs a bounded weighted composition operator")
    ladder_t, disc_sup, _, rung_max, _ = _ladder_scan(lambda z: M_z_quantity(psi, a, lam, z), ladder, n_angles)
    outer = rung_max[-2:]
    limsup = float(np.max(outer))
    stable = bool(np.max(outer) < DECAY_TOL or np.max(outer) <= (1 + STABILITY) * np.min(outer))
    if not stable:
        warnings.warn("limsup of M_z unstable over the outer ladder rungs", ReliabilityWarning, stacklevel=2)
    W = weighted_composition_matrix(psi, a, lam, N)
    norm = max(operator_norm(W), math.sqrt(float(np.max(disc_sup))))
    return DistanceBound(limsup / norm, limsup, norm, stable)


# ----------------------------------------------------------------------------
# Toeplitz symbols


@dataclass(frozen=True)
class WcoSymbol(Symbol):
    """``(1/lam) exp(((lam-1)/lam)|w|^2 + a conj(w)/lam) psi((w - a)/lam)``."""

    psi: AnalyticFunction
    a: complex
    lam: complex
    bound: float = math.inf
    family = "wco-symbol"

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        a, lam = complex(self.a), complex(self.lam)
        expo = ((lam - 1) / lam) * np.abs(w) ** 2 + a * np.conj(w) / lam
        return (np.exp(expo) * self.psi((w - a) / lam) / lam)[()]

    @property
    def sup(self):
        return self.bound

    def to_dict(self):
        return {"family": "wco-symbol", "psi": self.psi.to_dict(), "a": [self.a.real, self.a.imag],
                "lam": [self.lam.real, self.lam.imag]}


def wco_toeplitz_symbol(psi: AnalyticFunction, a=0j, lam=0.5, ladder=DEFAULT_LADDER,
                        n_angles: int = DEFAULT_ANGLES):
    """Symbol ``f`` with ``W_{psi,phi} = T_f`` and a sampled boundedness report.

    ``lam = 1`` is accepted: it is the Weyl boundary case, where the same
    formula gives the plane-wave symbol.
    """
    a, lam = complex(a), complex(lam)
    if abs(lam) < 1e-14:
        raise PreconditionError("Toeplitz symbol needs lambda != 0")
    if abs(lam - 0.5) > 0.5 + 1e-12:
        raise PreconditionError("Toeplitz symbol needs |lambda - 1/2| <= 1/2")
    raw = WcoSymbol(psi, a, lam)
    _, disc_sup, disc_arg, _, _ = _ladder_scan(lambda z: np.abs(raw(z)), ladder, n_angles)
    s_in, s_out = disc_sup[-2], disc_sup[-1]
    data = [("disc_sup", tuple(disc_sup))]
    if not np.isfinite(s_out) or s_out > (1 + STABILITY) * s_in:
        warnings.warn("recovered Toeplitz symbol looks unbounded", ReliabilityWarning, stacklevel=2)
        report = PredicateReport("wco-symbol:bounded", "fails", (complex(disc_arg[-1]), float(s_out)), data)
        return raw, report
    report = PredicateReport("wco-symbol:bounded", "holds", None, data + [("sup", float(s_out))])
    return WcoSymbol(psi, a, lam, float(s_out)), report


def wco_heat_closed_form(psi: AnalyticFunction, a, lam, t, w):
    """Heat transform at time ``t`` of the Berezin transform of W_{psi,phi}:
    ``(1/d) exp(-(1-lam)|w|^2/d + a conj(w)/d) psi((t a + w)/d)``, ``d = t(1-lam) + 1``."""
    w = np.asarray(w, dtype=complex)
    a, lam = complex(a), complex(lam)
    d = t * (1 - lam) + 1
    if abs(d) < 1e-14:
        raise PreconditionError("closed form is singular at t(1 - lambda) = -1")
    return (np.exp(-(1 - lam) * np.abs(w) ** 2 / d + a * np.conj(w) / d) * psi((t * a + w) / d) / d)[()]


def wco_berezin_closed_form(psi: AnalyticFunction, a, lam, z):
    z = np.asarray(z, dtype=complex)
    return (np.exp((complex(lam) - 1) * np.abs(z) ** 2 + complex(a) * np.conj(z)) * psi(z))[()]


@dataclass(frozen=True)
class VerticalRecovery:
    symbol: Vertical
    m: LineProfile
    sign: int
    errors: tuple  # ((sign, max error), ...)
    decisive: bool


def vertical_toeplitz_from_m0(m0: LineProfile, N: int = 24, grid=None) -> VerticalRecovery:
    """Vertical symbol from ``m0`` and the multiplier ``m = g * m0``,
    ``g(x) = sqrt(2/pi) exp(-2x^2)``.

    Both orientations ``m0(+Im z)`` and ``m0(-Im z)`` are tried; the one
    whose Toeplitz Berezin transform matches that of ``S`` with multiplier
    ``m`` wins. ``decisive`` is False when the two are indistinguishable
    on the grid (even ``m0``).
    """
    if not math.isfinite(m0.sup):
        raise PreconditionError("m0 must be bounded")
    m = Smoothed(m0, 0.25)
    if grid is None:
        g = np.linspace(-1.0, 1.0, 5)
        grid = (g[:, None] + 1j * g[None, :]).ravel()
    grid = np.asarray(grid, dtype=complex)
    S = singular_integral_matrix(m, N)
    target = berezin(S, grid)
    errs = []
    for sign in (-1, 1):
        T = toeplitz_matrix(Vertical(m0, sign), N)
        errs.append((sign, float(np.max(np.abs(berezin(T, grid) - target)))))
    best = min(errs, key=lambda e: e[1])
    other = max(errs, key=lambda e: e[1])
    decisive = other[1] > 10 * best[1] + 1e-9
    return VerticalRecovery(Vertical(m0, best[0]), m, best[0], tuple(errs), decisive)


def singular_gamma_a(a: LineProfile, x, n: int = 64):
    """``pi^(-1/2) int a(y / sqrt 2) exp(-(x - y)^2) dy`` by composite
    Gauss-Legendre around ``x``, split at the jumps of ``a``."""
    if not math.isfinite(a.sup):
        raise PreconditionError("profile must be bounded")
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    for idx, xv in np.ndenumerate(x):
        brk = tuple(math.sqrt(2) * b for b in a.breaks)
        y, w = piecewise_line_rule(brk + (xv,), xv, 9.0, n)
        out[idx] = np.sum(w * np.asarray(a(y / math.sqrt(2)), dtype=complex) * np.exp(-(xv - y) ** 2)) / math.sqrt(math.pi)
    if np.all(out.imag == 0):
        out = out.real
    return out[()]


def hausdorff_toeplitz_symbol(rho: MeasureSpec) -> Symbol:
    """``sum c_i exp(-(x_i - 1)|z|^2)`` for ``rho = sum c_i delta_{x_i}``."""
    if not rho.atomic:
        raise PreconditionError("Toeplitz symbol is only available for purely atomic measures")
    if not rho.atoms:
        return Constant(0.0)
    terms = tuple(GaussianRadial(x - 1.0, c) if x > 1 else Constant(c) for x, c in rho.atoms)
    return terms[0] if len(terms) == 1 else SymbolSum(terms)


def hausdorff_symbol_check(rho: MeasureSpec, N: int = 48) -> float:
    """Max gap between the Hausdorff moments and the Laguerre-quadrature
    eigenvalues of the recovered symbol."""
    f = hausdorff_toeplitz_symbol(rho)
    ev = toeplitz_radial_eigenvalues(f if not isinstance(f, SymbolSum) else (lambda r: f(r)), N)
    return float(np.max(np.abs(np.diag(hausdorff_matrix(rho, N).entries) - ev)))


# ----------------------------------------------------------------------------
# Volterra Berezin series


def volterra_berezin_series(gprime: AnalyticFunction, a, lam, z, K: int = 20, n_taylor: int = 96):
    """``exp(-|z|^2 + a conj z + lam |z|^2) sum_k (-lam conj z)^k (A^[k] g)(z)``
    with ``g(0) = 0``, ``(A^[k] g)(z) = sum_n g_n n! z^(n+k) / (n+k)!``."""
    z = np.asarray(z, dtype=complex)
    a, lam = complex(a), complex(lam)
    gp = gprime.taylor(n_taylor)
    g = np.zeros(n_taylor + 1, dtype=complex)
    g[1:] = gp / np.arange(1, n_taylor + 1)
    n = np.arange(n_taylor + 1)
    total = np.zeros(z.shape, dtype=complex)
    for k in range(K + 1):
        # n! / (n+k)! in log form
        ratio = np.exp(-np.array([math.lgamma(j + k + 1) - math.lgamma(j + 1) for j in n]))
        Akg = np.polynomial.polynomial.polyval(z, g * ratio) * z ** k
        total += (-lam * np.conj(z)) ** k * Akg
    return (np.exp(-np.abs(z) ** 2 + a * np.conj(z) + lam * np.abs(z) ** 2) * total)[()]


# ----------------------------------------------------------------------------
# Fredholm index


def _near_kernel(M, threshold, edge_frac=0.25):
    """Right singular vectors with singular value below ``threshold * s_max``,
    ignoring those concentrated in the last ``edge_frac`` of the indices
    (artefacts of cutting the section)."""
    _, s, Vh = np.linalg.svd(M)
    if s.size == 0 or s[0] == 0:
        return M.shape[1]
    N = M.shape[1]
    q = max(1, int(round(edge_frac * N)))
    count = 0
    for sv, v in zip(s, Vh):
        if sv <= threshold * s[0]:
            if np.sum(np.abs(v[-q:]) ** 2) <= 0.5:
                count += 1
    return count


def fredholm_index_estimate(A, dims=(24, 36, 48), threshold: float = 1e-6) -> IndexEstimate:
    """``dim ker A - dim ker A*`` from near-kernel counts of sections.

    ``A`` is a callable ``N -> TruncatedOperator`` or a section at least
    ``max(dims)`` wide (leading blocks are used). The integer is reported
    only when it is the same for every dimension.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 3 or any(b <= a for a, b in zip(dims, dims[1:])):
        raise PreconditionError("index estimate needs at least three increasing dimensions")
    rows = []
    for N in dims:
        if callable(A) and not isinstance(A, TruncatedOperator):
            M = A(N).entries
        else:
            if A.dim < N:
                raise PreconditionError(f"section of size {A.dim} is smaller than {N}")
            M = A.leading(N)
        rows.append((N, _near_kernel(M, threshold), _near_kernel(M.conj().T, threshold)))
    est = {ka - kb for _, ka, kb in rows}
    stable = len(est) == 1
    return IndexEstimate(est.pop() if stable else None, stable, tuple(rows))


# ----------------------------------------------------------------------------
# localization


def hausdorff_domination_profile(rho: MeasureSpec):
    """``r -> M_rho exp(-r^2 / (2c))`` for ``rho`` supported in ``[1, c]``."""
    c = rho.support_max()
    if not math.isfinite(c):
        raise PreconditionError("domination profile needs compact support")
    M = rho.norm()
    c = max(c, 1.0 + 1e-12)
    return lambda r: M * np.exp(-np.asarray(r) ** 2 / (2 * c))


def weyl_domination_profile(z0):
    """``r -> exp(|z0|^2/2) exp(-r^2/4)``, from
    ``|<W_z0 k_w, k_z>| = exp(-|z - w - z0|^2 / 2)``."""
    z0 = complex(z0)
    return lambda r: math.exp(0.5 * abs(z0) ** 2) * np.exp(-np.asarray(r) ** 2 / 4)


def localization_check(A: TruncatedOperator, H, grid, tol: float = 1e-10) -> PredicateReport:
    """Check ``|<A k_w, k_z>| <= H(|z - w|)`` on all pairs of grid points."""
    mass, _ = quad(lambda r: abs(H(r)) * r, 0, np.inf, limit=200)
    if not math.isfinite(mass):
        raise PreconditionError("domination profile must be integrable on the plane")
    grid = np.asarray(grid, dtype=complex).ravel()
    w, z = np.meshgrid(grid, grid, indexing="ij")
    lhs = np.abs(bivariate_berezin(A, w, z))
    rhs = np.asarray(H(np.abs(z - w)), dtype=float)
    gap = lhs - rhs
    k = np.unravel_index(int(np.argmax(gap)), gap.shape)
    data = [("max_excess", float(gap[k])), ("profile_mass", 2 * math.pi * mass), ("pairs", int(gap.size))]
    if gap[k] > tol:
        return PredicateReport("localization", "fails", (complex(w[k]), complex(z[k]), float(lhs[k]), float(rhs[k])), data)
    return PredicateReport("localization", "holds", None, data)


# ----------------------------------------------------------------------------
# Berezin decay and slow oscillation


def berezin_decay_profile(A: TruncatedOperator, radii, n_angles: int = DEFAULT_ANGLES) -> DecayProfile:
    """Sup of |berezin(A)| on each circle. Radii beyond the reliable radius
    are dropped and the profile is marked truncated."""
    radii = [float(r) for r in radii]
    R = reliable_radius(A.dim)
    keep = [r for r in radii if r <= R + 1e-12]
    truncated = len(keep) < len(radii)
    if truncated:
        warnings.warn(f"decay profile truncated at the reliable radius {R:.3g}", ReliabilityWarning, stacklevel=2)
    sups = []
    for r in keep:
        sups.append(float(np.max(np.abs(berezin(A, _circle(r, n_angles))))))
    return DecayProfile(tuple(keep), tuple(sups), truncated)


def slow_oscillation_check(seq, epsilon: float, delta: float, start: int = 0) -> PredicateReport:
    """Max ``|a_m - a_n|`` over ``m, n >= start`` with ``|sqrt m - sqrt n| <= delta``."""
    a = np.asarray(seq, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise PreconditionError("need a finite nonempty sequence")
    if not np.all(np.isfinite(a)):
        raise PreconditionError("sequence must be bounded")
    idx = np.arange(start, a.size)
    if idx.size < 2:
        return PredicateReport("slow-oscillation", "inconclusive", None, [("oscillation", 0.0)])
    sq = np.sqrt(idx)
    close = np.abs(sq[:, None] - sq[None, :]) <= delta
    diff = np.where(close, np.abs(a[idx][:, None] - a[idx][None, :]), 0.0)
    k = np.unravel_index(int(np.argmax(diff)), diff.shape)
    osc = float(diff[k])
    data = [("oscillation", osc), ("delta", delta), ("start", start)]
    if osc > epsilon:
        return PredicateReport("slow-oscillation", "fails", (int(idx[k[0]]), int(idx[k[1]]), osc), data)
    return PredicateReport("slow-oscillation", "holds", None, data)
