"""Named verification suites and their run configuration.

Every check records ``measured``, ``expected`` and ``tolerance``; it passes
when ``|measured - expected| <= tolerance`` elementwise. Inequalities are
recorded as a violation amount (``max(0, lhs - rhs)``) against 0. A check
that passes while a ReliabilityWarning was raised since the previous check
is reported as ``flagged``.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
import warnings
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import analysis as an
from . import operators as op
from . import symbols as sy
from . import transforms as tr
from .basis import hermite_function, laguerre_poly, make_rule, monomial_basis_eval
from .errors import ReliabilityWarning, SpecError

AF = sy.AnalyticFunction

DEFAULT_TOLERANCES = {
    "weyl-toeplitz": 1e-6,
    "berezin-heat": 1e-6,
    "composition-kernel": 1e-6,
    "wco-symbol": 1e-5,
    "wco-berezin": 1e-7,
    "distance-bound": {"floor": 0.1, "search": 1e-9},
    "volterra-matrix": {"formula": 1e-10, "angular": 1e-8},
    "volterra-berezin": 1e-6,
    "volterra-decomposition": 1e-6,
    "index-volterra": {"index": 0.5, "threshold": 1e-6},
    "singular-multiplier": {"agreement": 1e-5, "norm": 2e-3, "monotone": 1e-10},
    "singular-berezin": 1e-5,
    "singular-shift": 1e-5,
    "singular-vertical-toeplitz": 1e-5,
    "toeplitztype-convolution": {"operator": 1e-6, "function": 1e-8},
    "laguerre-fourier-weyl": 1e-7,
    "hausdorff-eigen": 1e-10,
    "hausdorff-norm": 1e-10,
    "hausdorff-decay": 1e-10,
    "localization-wiener": 1e-10,
    "bargmann-basis": 1e-8,
}

SUITES = tuple(DEFAULT_TOLERANCES)
STATUS_ORDER = {"pass": 0, "flagged": 1, "fail": 2}


@dataclass(frozen=True)
class RunConfig:
    N: int = 48
    N_small: int = 12
    N_mid: int = 24
    N_composition: int = 32
    radial_nodes: int = 200
    angular_nodes: int = 256
    line_nodes: int = 200
    ladder: tuple = an.DEFAULT_LADDER
    n_angles: int = an.DEFAULT_ANGLES
    tolerances: dict = field(default_factory=lambda: json.loads(json.dumps(DEFAULT_TOLERANCES)))
    out: str = "results"
    seed: int = 0
    jitter: float = 1e-3

    def __post_init__(self):
        for k in ("N", "N_small", "N_mid", "N_composition", "radial_nodes", "angular_nodes", "line_nodes", "n_angles"):
            v = getattr(self, k)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise SpecError(f"config field {k!r} must be a positive integer")
        lad = tuple(float(r) for r in self.ladder)
        if not lad or min(lad) <= 0 or any(b <= a for a, b in zip(lad, lad[1:])):
            raise SpecError("config ladder must be positive and strictly increasing")
        object.__setattr__(self, "ladder", lad)
        if self.seed < 0 or not self.jitter >= 0:
            raise SpecError("config seed and jitter must be nonnegative")
        merged = json.loads(json.dumps(DEFAULT_TOLERANCES))
        for key, val in (self.tolerances or {}).items():
            if key not in merged:
                raise SpecError(f"unknown suite {key!r} in tolerances")
            if isinstance(merged[key], dict):
                if not isinstance(val, dict):
                    raise SpecError(f"tolerances for {key!r} must be a mapping")
                for sub in val:
                    if sub not in merged[key]:
                        raise SpecError(f"unknown tolerance {key}.{sub}")
                merged[key].update(val)
            else:
                merged[key] = val
        for key, val in merged.items():
            for v in (val.values() if isinstance(val, dict) else (val,)):
                if not isinstance(v, (int, float)) or isinstance(v, bool) or not v >= 100 * np.finfo(float).eps:
                    raise SpecError(f"tolerance for {key!r} must be a real >= 100 * machine epsilon")
        object.__setattr__(self, "tolerances", merged)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if not isinstance(d, dict):
            raise SpecError("config document must be a mapping")
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise SpecError(f"unknown config keys {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise SpecError(f"bad config: {exc}") from exc

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except OSError as exc:
            raise SpecError(f"cannot read config {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ladder"] = list(self.ladder)
        return d

    def config_hash(self) -> str:
        d = self.to_dict()
        d.pop("out")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]

    def tol(self, suite, key=None) -> float:
        t = self.tolerances[suite]
        return float(t[key] if isinstance(t, dict) else t)

    def planar_rule(self):
        return make_rule("planar-polar", (self.radial_nodes, self.angular_nodes))

    def rng(self, suite):
        # one stream per suite so suites stay independent of run order
        h = int(hashlib.sha256(suite.encode()).hexdigest()[:8], 16)
        return np.random.default_rng([self.seed, h])


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


class _Recorder:
    def __init__(self, suite, cfg, caught):
        self.suite = suite
        self.cfg = cfg
        self.checks = []
        self._caught = caught
        self._seen = 0

    def tol(self, key=None):
        return self.cfg.tol(self.suite, key)

    def check(self, name, measured, expected=0.0, tolerance=None, detail=None):
        tolerance = self.tol() if tolerance is None else float(tolerance)
        rel = [w for w in self._caught[self._seen:] if issubclass(w.category, ReliabilityWarning)]
        self._seen = len(self._caught)
        if measured is None:
            ok = False
        else:
            m = np.asarray(measured, dtype=complex)
            e = np.asarray(expected, dtype=complex)
            ok = bool(np.all(np.isfinite(m)) and np.all(np.abs(m - e) <= tolerance))
        status = "fail" if not ok else ("flagged" if rel else "pass")
        row = {"name": name, "status": status, "measured": _jsonable(measured),
               "expected": _jsonable(expected), "tolerance": tolerance}
        if detail is not None:
            row["detail"] = _jsonable(detail)
        if rel:
            row["warnings"] = sorted({str(w.message) for w in rel})
        self.checks.append(row)


def _grid(half, n, rng, jitter):
    g = np.linspace(-half, half, n)
    G = (g[:, None] + 1j * g[None, :]).ravel()
    if jitter:
        G = G + jitter * (rng.uniform(-1, 1, G.size) + 1j * rng.uniform(-1, 1, G.size))
    return G


def _maxerr(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


# ----------------------------------------------------------------------------
# built-in families


def wco_family():
    """(label, psi, a, lambda) with |lambda - 1/2| <= 1/2."""
    b = 0.5 + 0.2j
    return [
        ("psi=1,lam=1/2", AF.polynomial([1.0]), 0j, 0.5),
        ("psi=1+w/2,lam=0.7", AF.polynomial([1.0, 0.5]), 0.3 - 0.2j, 0.7),
        ("psi=linear,lam=0.4+0.3i", AF.polynomial([0.5, -0.3j]), 0.2 + 0j, 0.4 + 0.3j),
        ("weyl-boundary,lam=1", AF.kernel_multiple(1.0, -b), b, 1.0),
    ]


def _cos_symbol():
    return sy.CallableSymbol(lambda z: np.cos(np.real(z)) * np.exp(-0.2 * np.abs(z) ** 2) + 0.3 * np.sin(np.imag(z)),
                             1.3, "cos-gauss")


def singular_profiles():
    return [
        ("step", sy.sign_step(0.3)),
        ("cosine", sy.LineCosine(1.0, 1.3, 0.4, 0.2)),
        ("gaussian", sy.LineGaussian(1.0, 0.2, 0.5)),
    ]


# ----------------------------------------------------------------------------
# suites


def s_weyl_toeplitz(r, cfg):
    rng = cfg.rng(r.suite)
    w = _grid(0.7, 5, rng, cfg.jitter)
    z0s = [0.0, 0.6 + 0.2j, -0.3 + 0.9j, 0.8 - 0.5j, -0.5 - 0.4j]
    rule = cfg.planar_rule()
    errs = []
    for z0 in z0s:
        T = op.toeplitz_matrix(sy.PlaneWave(z0), cfg.N, rule)
        errs.append(_maxerr(tr.berezin(T, w), tr.berezin(op.weyl_matrix(z0, cfg.N), w)))
    r.check("berezin(T_g) = berezin(W)", max(errs), detail={"per_z0": errs})
    closed = max(_maxerr(tr.berezin(op.weyl_matrix(z0, cfg.N), w),
                         np.exp(-0.5 * abs(z0) ** 2 + 2j * np.imag(w * np.conj(z0)))) for z0 in z0s)
    r.check("berezin(W) closed form", closed)


def s_berezin_heat(r, cfg):
    rng = cfg.rng(r.suite)
    w = _grid(0.8, 4, rng, cfg.jitter)
    rule = cfg.planar_rule()
    for label, f in [("gaussian-radial", sy.GaussianRadial(0.7, 1.0)), ("plane-wave", sy.PlaneWave(0.4 - 0.3j)),
                     ("cos-gauss", _cos_symbol())]:
        T = op.toeplitz_matrix(f, cfg.N, rule)
        r.check(f"berezin(T_f) = f * g_1 [{label}]", _maxerr(tr.berezin(T, w), tr.heat_transform(f, 1.0, w, rule)))


def s_composition_kernel(r, cfg):
    N = cfg.N_composition
    rng = cfg.rng(r.suite)
    pts = _grid(0.6, 3, rng, cfg.jitter)
    T1 = op.toeplitz_matrix(sy.Angular(1), N)
    T2 = op.toeplitz_matrix(sy.GaussianRadial(0.5, 1.0), N)
    W = op.weyl_matrix(0.4 - 0.2j, N)
    V = op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1, N)
    for label, A, B in [("T_phi T_phi*", T1, T1.H), ("T_phi* T_phi", T1.H, T1), ("W T_g", W, T2), ("V W", V, W)]:
        err = 0.0
        for w in pts[::2]:
            for z in pts[1::2]:
                lhs, rhs = tr.compose_berezin_check(A, B, w, z)
                err = max(err, abs(lhs - rhs))
        r.check(f"kernel composition [{label}]", err)


def s_wco_symbol(r, cfg):
    N = cfg.N_mid
    rule = cfg.planar_rule()
    for label, psi, a, lam in wco_family():
        f, rep = an.wco_toeplitz_symbol(psi, a, lam, cfg.ladder, cfg.n_angles)
        W = op.weighted_composition_matrix(psi, a, lam, N)
        T = op.toeplitz_matrix(f, N, rule)
        r.check(f"||W - T_f|| [{label}]", an.operator_norm(W - T), detail={"symbol_bounded": rep.verdict})
    psi = AF.polynomial([1.0, 0.5])
    f, _ = an.wco_toeplitz_symbol(psi, 0.2, 0.25, cfg.ladder, cfg.n_angles)
    w = np.array([0.3 + 0.1j, -0.5 + 0.7j, 0.9 - 0.2j])
    err = max(_maxerr(tr.heat_transform(f, t, w, rule), an.wco_heat_closed_form(psi, 0.2, 0.25, t - 1, w)) for t in (0.5, 1.0, 2.0))
    r.check("heat transform of f vs closed form", err)


def s_wco_berezin(r, cfg):
    rng = cfg.rng(r.suite)
    z = _grid(1.2, 5, rng, cfg.jitter)
    fam = wco_family() + [("lam=-1", AF.kernel_multiple(1.0, 0.6 + 0.3j), 0.6 + 0.3j, -1.0)]
    for label, psi, a, lam in fam:
        W = op.weighted_composition_matrix(psi, a, lam, cfg.N)
        r.check(f"berezin(W) closed form [{label}]", _maxerr(tr.berezin(W, z), an.wco_berezin_closed_form(psi, a, lam, z)))


def distance_candidates():
    c = []
    for cc in (0.1, 0.5, 1.0):
        for amp in (0.5, -0.5):
            c.append(sy.GaussianRadial(cc, amp))
    c += [sy.Constant(v) for v in (0.25, -0.5, 0.5j, 1.0)]
    c += [sy.Angular(k) for k in (1, 2, -1, 3)]
    c += [sy.PlaneWave(z0) for z0 in (0.3, -0.2j, 0.5 + 0.5j, -0.4 + 0.1j)]
    c += [sy.RadialStep((1.0,), (1.0, -1.0)), sy.RadialStep((0.5, 2.0), (0.5j, 1.0, 0.0))]
    return c


def s_distance_bound(r, cfg):
    a = 0.6 + 0.3j
    psi = AF.kernel_multiple(1.0, a)  # psi(w) = exp(conj(a) w), so M_z is constant
    d = an.distance_lower_bound(psi, a, -1.0, cfg.ladder, cfg.n_angles, cfg.N)
    floor = r.tol("floor")
    r.check("bound >= floor", max(0.0, floor - d.value), 0.0, 1e-12,
            detail={"bound": d.value, "floor": floor, "limsup": d.limsup, "norm": d.norm, "stable": d.stable})
    W = op.weighted_composition_matrix(psi, a, -1.0, cfg.N)
    rule = cfg.planar_rule()
    dists = [an.operator_norm(W - op.toeplitz_matrix(f, cfg.N, rule)) for f in distance_candidates()]
    r.check("no Toeplitz candidate beats the bound", max(0.0, d.value - min(dists)), 0.0, r.tol("search"),
            detail={"min_distance": min(dists), "bound": d.value, "candidates": len(dists)})


def s_volterra_matrix(r, cfg):
    N = cfg.N
    V = op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1, N)
    E = np.zeros((N, N))
    n = np.arange(N - 2)
    E[n + 2, n] = np.sqrt((n + 1) / (n + 2))
    r.check("entries = delta_{m,n+2} sqrt((n+1)/(n+2))", _maxerr(V.entries, E), tolerance=r.tol("formula"))
    T = op.toeplitz_matrix(sy.Angular(2), N)
    r.check("V = T_{(z/|z|)^2}", _maxerr(V.entries, T.entries), tolerance=r.tol("angular"))


def s_volterra_berezin(r, cfg):
    N = cfg.N_mid
    rng = cfg.rng(r.suite)
    z = _grid(1.05, 5, rng, cfg.jitter)  # |z| <= 1.5
    cases = [("g'=1/2+z+0.3z^2", AF.polynomial([0.5, 1.0, 0.3]), 0j, 1.0),
             ("a=0.3+0.1i,lam=0.6", AF.polynomial([0.5, 1.0, 0.3]), 0.3 + 0.1j, 0.6),
             ("g'=exp,lam=-i/2", AF.kernel_multiple(1.0, 0.3 + 0.2j), 0.2 + 0j, -0.5j)]
    for label, gp, a, lam in cases:
        V = op.volterra_matrix(gp, a, lam, N)
        r.check(f"berezin series [{label}]", _maxerr(tr.berezin(V, z), an.volterra_berezin_series(gp, a, lam, z, K=20)))


def s_volterra_decomposition(r, cfg):
    N = cfg.N_mid
    for a, b, c in [(0.7, 0.5, 0.4 - 0.3j), (-0.2 + 0.1j, 1.0, 0.25j)]:
        gp = AF((((a,), 0j), ((0.0, b), c)))
        V = op.volterra_matrix(gp, -c, 1.0, N)
        Vz = op.volterra_matrix(AF.polynomial([1.0]), 0, 1, N)
        Vz2 = op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1, N)
        W1 = op.weighted_composition_matrix(AF.polynomial([1.0]), -c, 1.0, N)
        rhs = op.linear_combine([(a, Vz @ W1), (b * math.exp(0.5 * abs(c) ** 2), Vz2 @ op.weyl_matrix(c, N))])
        r.check(f"V = a V_z W_(1,phi) + b e^(|c|^2/2) V_(z^2/2) W_c [c={c}]", _maxerr(V.entries, rhs.entries))
        # h-form: V = g'(0) V_z W_(1,phi) + V_(z^2/2) W_(h,phi)
        e = gp.ecoeffs(N + 1)
        h = e[1:] / np.sqrt(np.arange(1, N + 1))
        rhs2 = op.linear_combine([(gp(0), Vz @ W1), (1.0, Vz2 @ op.weighted_composition_matrix(h, -c, 1.0, N))])
        r.check(f"V = g'(0) V_z W_(1,phi) + V_(z^2/2) W_(h,phi) [c={c}]", _maxerr(V.entries, rhs2.entries))


def s_index_volterra(r, cfg):
    dims = tuple(sorted({max(6, cfg.N // 2), max(7, 3 * cfg.N // 4), max(8, cfg.N)}))
    est = an.fredholm_index_estimate(lambda n: op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1, n), dims, r.tol("threshold"))
    r.check("ind V_(z^2/2)", est.index if est.stable else None, -2, r.tol("index"),
            detail={"stable": est.stable, "per_dim": [list(x) for x in est.per_dim]})
    est_w = an.fredholm_index_estimate(lambda n: op.weyl_matrix(0.7 + 0.2j, n), dims, r.tol("threshold"))
    r.check("ind W_c", est_w.index if est_w.stable else None, 0, r.tol("index"),
            detail={"stable": est_w.stable, "per_dim": [list(x) for x in est_w.per_dim]})


def s_singular_multiplier(r, cfg):
    N = cfg.N_small
    sizes = sorted({max(4, N // 2), max(5, 2 * N // 3), N, max(N + 1, 3 * N // 2), max(N + 2, 2 * N)})
    for label, m in singular_profiles():
        D = op.singular_integral_matrix_direct(m, N)
        M = op.singular_integral_matrix_multiplier(m, N)
        r.check(f"direct = multiplier [{label}]", _maxerr(D.entries, M.entries), tolerance=r.tol("agreement"))
        norms = [an.operator_norm(op.singular_integral_matrix_multiplier(m, n)) for n in sizes]
        sup = m.sup
        r.check(f"||S_N|| <= sup|m| [{label}]", max(0.0, max(norms) - sup), 0.0, r.tol("norm"),
                detail={"sizes": sizes, "norms": norms, "sup": sup})
        drops = max(0.0, max(a - b for a, b in zip(norms, norms[1:])))
        r.check(f"||S_N|| nondecreasing in N [{label}]", drops, 0.0, r.tol("monotone"),
                detail={"gap_at_largest": sup - norms[-1]})


def s_singular_berezin(r, cfg):
    rng = cfg.rng(r.suite)
    z = _grid(1.2, 5, rng, cfg.jitter)
    for label, m in singular_profiles():
        S = op.singular_integral_matrix(m, cfg.N_mid)
        r.check(f"berezin(S) = phi(2i Im z) [{label}]", _maxerr(tr.berezin(S, z), op.phi_from_multiplier(m, 2j * np.imag(z))))


def s_singular_shift(r, cfg):
    rng = cfg.rng(r.suite)
    pts = _grid(0.6, 3, rng, cfg.jitter)
    w, z = pts[:, None], pts[None, :]
    for label, m in singular_profiles():
        S = op.singular_integral_matrix(m, cfg.N_composition)
        err = 0.0
        for v in (0.4 + 0.3j, -0.2 - 0.5j, 0.5):
            lhs = tr.bivariate_berezin(tr.shift_operator(S, v), w, z)
            u = z - np.conj(w) - 2j * np.imag(v)
            rhs = np.exp(-0.5 * (np.abs(z) ** 2 + np.abs(w) ** 2) + z * np.conj(w)) * op.phi_from_multiplier(m, u)
            err = max(err, _maxerr(lhs, rhs))
        r.check(f"alpha_v(S_phi) = S_phi(. - 2i Im v) [{label}]", err)


def s_singular_vertical_toeplitz(r, cfg):
    rng = cfg.rng(r.suite)
    grid = _grid(1.0, 5, rng, cfg.jitter)
    for label, m0 in singular_profiles():
        rec = an.vertical_toeplitz_from_m0(m0, cfg.N_mid, grid)
        errs = dict(rec.errors)
        r.check(f"berezin(S_(g*m0)) = berezin(T_f) [{label}]", errs[rec.sign],
                detail={"resolved_sign": rec.sign, "errors_by_sign": {str(k): v for k, v in errs.items()},
                        "decisive": rec.decisive})


def s_toeplitztype_convolution(r, cfg):
    N = cfg.N_small
    rule = make_rule("planar-polar", (max(96, 4 * N), max(128, 8 * N)))
    for label, f in [("gaussian-radial", sy.GaussianRadial(0.3, 1.0)), ("cos-gauss", _cos_symbol())]:
        for j in range(4):
            T = op.toeplitz_type_matrix(f, j, N, rule)
            Q = tr.qha_convolve_function_operator(f, op.basis_projection(j, N), rule)
            r.check(f"T^(j) = f * (e_j x e_j) / pi [{label}, j={j}]", an.operator_norm(T - (1 / math.pi) * Q),
                    tolerance=r.tol("operator"))
    rng = cfg.rng(r.suite)
    z = _grid(1.2, 3, rng, cfg.jitter)
    P0 = op.basis_projection(0, cfg.N)
    for j in range(4):
        g = tr.qha_convolve_operator_operator(op.basis_projection(j, cfg.N), P0, z)
        gj = np.exp(-np.abs(z) ** 2) * np.abs(z) ** (2 * j) / math.factorial(j)
        r.check(f"(e_j x e_j) * (e_0 x e_0) = g_j [j={j}]", _maxerr(g, gj), tolerance=r.tol("function"))


def s_laguerre_fourier_weyl(r, cfg):
    rng = cfg.rng(r.suite)
    xi = np.concatenate([rad * np.exp(1j * (np.arange(3) * 2.1 + 0.3)) for rad in (0.3, 0.8, 1.5)])
    xi = xi * (1 - cfg.jitter * rng.uniform(0, 1, xi.size))
    for j in range(7):
        P = op.basis_projection(j, cfg.N)
        got = np.array([tr.fourier_weyl(P, x) for x in xi])
        want = np.exp(-np.abs(xi) ** 2 / 2) * laguerre_poly(j, np.abs(xi) ** 2)
        r.check(f"tr((e_j x e_j) W_-xi) = e^(-|xi|^2/2) L_j [j={j}]", _maxerr(got, want))


def hausdorff_family():
    return [
        ("delta_2", sy.MeasureSpec(((2.0, 1.0),)), 0.5),
        ("delta_2+2delta_3", sy.MeasureSpec(((2.0, 1.0), (3.0, 2.0))), 0.5 + 2.0 / 3.0),
        ("t^-2 on [1,10]", sy.MeasureSpec((), sy.Density("power", 1.0, 10.0, 1.0, 2.0)), (1 - 10.0 ** -2) / 2),
    ]


def s_hausdorff_eigen(r, cfg):
    for label, rho, _ in hausdorff_family():
        if not rho.atomic:
            continue
        r.check(f"diag H = radial eigenvalues of recovered symbol [{label}]", an.hausdorff_symbol_check(rho, cfg.N))
    # density case: moments against the closed form (1 - 10^-(n+2)) / (n+2)
    rho = hausdorff_family()[2][1]
    n = np.arange(cfg.N)
    r.check("diag H = closed-form moments [t^-2 on [1,10]]",
            _maxerr(np.diag(op.hausdorff_matrix(rho, cfg.N).entries), (1 - 10.0 ** -(n + 2)) / (n + 2)))


def s_hausdorff_norm(r, cfg):
    for label, rho, expected in hausdorff_family():
        r.check(f"||H|| = int (1/t) d rho [{label}]", an.operator_norm(op.hausdorff_matrix(rho, cfg.N)), expected)


def s_hausdorff_decay(r, cfg):
    R = tr.reliable_radius(cfg.N)
    radii = [x for x in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0) if x <= R]
    rad = np.asarray(radii)
    for x in (2.0, 3.0):
        prof = an.berezin_decay_profile(op.hausdorff_matrix(sy.MeasureSpec(((x, 1.0),)), cfg.N), radii, cfg.n_angles)
        want = np.exp(-rad ** 2 * (1 - 1 / x)) / x
        r.check(f"berezin(H_delta_x) profile closed form [x={x}]", _maxerr(prof.sup_values, want))
        r.check(f"profile decreasing [x={x}]", max(0.0, float(np.max(np.diff(prof.sup_values)))), 0.0, r.tol())
    prof = an.berezin_decay_profile(op.hausdorff_matrix(sy.MeasureSpec(((1.0, 1.0),)), cfg.N), radii, cfg.n_angles)
    r.check("berezin(H_delta_1) = 1", _maxerr(prof.sup_values, 1.0))
    z0 = 0.7 - 0.4j
    prof = an.berezin_decay_profile(op.weyl_matrix(z0, cfg.N), radii, cfg.n_angles)
    r.check("|berezin(W_z0)| = e^(-|z0|^2/2)", _maxerr(prof.sup_values, math.exp(-0.5 * abs(z0) ** 2)), tolerance=1e-8)


def s_localization_wiener(r, cfg):
    rng = cfg.rng(r.suite)
    G = _grid(1.2, 7, rng, cfg.jitter)
    for label, rho in [("delta_1.5+delta_3/2", sy.MeasureSpec(((1.5, 1.0), (3.0, 0.5)))),
                       ("delta_2+2delta_3", sy.MeasureSpec(((2.0, 1.0), (3.0, 2.0)))),
                       ("t^-2 on [1,10]", sy.MeasureSpec((), sy.Density("power", 1.0, 10.0, 1.0, 2.0)))]:
        rep = an.localization_check(op.hausdorff_matrix(rho, cfg.N), an.hausdorff_domination_profile(rho), G)
        r.check(f"Hausdorff domination [{label}]", max(0.0, rep.value("max_excess")), detail={"verdict": rep.verdict})
    for z0 in (0.5 - 0.3j, 1.0 + 0.2j):
        rep = an.localization_check(op.weyl_matrix(z0, cfg.N), an.weyl_domination_profile(z0), G)
        r.check(f"Weyl domination [z0={z0}]", max(0.0, rep.value("max_excess")), detail={"verdict": rep.verdict})


def s_bargmann_basis(r, cfg):
    rng = cfg.rng(r.suite)
    z = _grid(1.5, 4, rng, cfg.jitter)
    line = make_rule("line-hermite", (cfg.line_nodes,))
    for n in range(9):
        got = tr.bargmann_transform(lambda x, n=n: hermite_function(n, x), z)
        got2 = tr.bargmann_transform(lambda x, n=n: hermite_function(n, x), z, line)
        want = monomial_basis_eval(n, z)
        r.check(f"B h_n = e_n [n={n}]", max(_maxerr(got, want), _maxerr(got2, want)))


SUITE_FUNCS = {
    "weyl-toeplitz": s_weyl_toeplitz,
    "berezin-heat": s_berezin_heat,
    "composition-kernel": s_composition_kernel,
    "wco-symbol": s_wco_symbol,
    "wco-berezin": s_wco_berezin,
    "distance-bound": s_distance_bound,
    "volterra-matrix": s_volterra_matrix,
    "volterra-berezin": s_volterra_berezin,
    "volterra-decomposition": s_volterra_decomposition,
    "index-volterra": s_index_volterra,
    "singular-multiplier": s_singular_multiplier,
    "singular-berezin": s_singular_berezin,
    "singular-shift": s_singular_shift,
    "singular-vertical-toeplitz": s_singular_vertical_toeplitz,
    "toeplitztype-convolution": s_toeplitztype_convolution,
    "laguerre-fourier-weyl": s_laguerre_fourier_weyl,
    "hausdorff-eigen": s_hausdorff_eigen,
    "hausdorff-norm": s_hausdorff_norm,
    "hausdorff-decay": s_hausdorff_decay,
    "localization-wiener": s_localization_wiener,
    "bargmann-basis": s_bargmann_basis,
}
assert tuple(SUITE_FUNCS) == SUITES


def run_suite(name: str, cfg: RunConfig | None = None) -> dict:
    """Run one suite and return its SuiteResult document."""
    cfg = cfg or RunConfig()
    if name not in SUITE_FUNCS:
        raise KeyError(name)
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ReliabilityWarning)
        rec = _Recorder(name, cfg, caught)
        try:
            SUITE_FUNCS[name](rec, cfg)
        except Exception as exc:  # a crashing suite is a failed check, not a crash of the run
            rec.check("suite completed", None, 0.0, 1.0, detail={"error": f"{type(exc).__name__}: {exc}"})
    return {"suite": name, "checks": rec.checks, "wall_time": time.perf_counter() - t0, "config_hash": cfg.config_hash()}


def suite_status(result: dict) -> str:
    worst = "pass"
    for c in result["checks"]:
        if STATUS_ORDER[c["status"]] > STATUS_ORDER[worst]:
            worst = c["status"]
    if not result["checks"]:
        worst = "fail"
    return worst


def exit_code(statuses) -> int:
    worst = max((STATUS_ORDER[s] for s in statuses), default=0)
    return {0: 0, 1: 2, 2: 1}[worst]


def payload(result: dict) -> str:
    """Serialized result; ``wall_time`` is the only nondeterministic field."""
    return json.dumps(result, indent=2)


def with_truncation(cfg: RunConfig, N: int) -> RunConfig:
    """Scale all truncation sizes from a single ``N``."""
    return replace(cfg, N=N, N_mid=max(4, N // 2), N_small=max(4, N // 4), N_composition=max(4, 2 * N // 3))
