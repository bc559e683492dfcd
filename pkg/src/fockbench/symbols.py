"""Symbols on C, line profiles on R, entire functions and measures on [1, inf).

Every object here is an immutable parametric description that can be
evaluated on numpy arrays and serialized to a plain dict (``to_dict``) for
the JSON spec format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import LinearNDInterpolator
from scipy.special import erf, gammainc, gammaln, roots_legendre

from .errors import PreconditionError, SpecError


def _c(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _pair(z: complex):
    z = complex(z)
    return [z.real, z.imag]


# ----------------------------------------------------------------------------
# line profiles m : R -> C


class LineProfile:
    """Bounded function on the real line."""

    family = "line"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def sup(self) -> float:
        raise NotImplementedError

    @property
    def breaks(self) -> tuple:
        return ()

    def smoothed(self, var: float, s):
        """Gaussian smoothing ``(m * G_var)(s)`` where ``G_var`` is the centred
        normal density of variance ``var``. ``s`` may be complex; that is the
        analytic continuation of the real smoothing."""
        return _smoothed_quadrature(self, var, s)

    has_closed_smoothing = False

    def reflected(self) -> "LineProfile":
        """x -> m(-x)."""
        return Reflected(self)

    def to_dict(self) -> dict:
        raise NotImplementedError


def _smoothed_quadrature(m, var, s, n=96, half_width=None):
    s = np.asarray(s, dtype=complex)
    sd = math.sqrt(var)
    hw = half_width or 12.0 * sd
    out = np.empty(s.shape, dtype=complex)
    t, w = roots_legendre(n)
    for idx, sv in np.ndenumerate(s):
        c = sv.real
        cuts = [c - hw] + sorted(b for b in m.breaks if c - hw < b < c + hw) + [c + hw]
        tot = 0j
        for a, b in zip(cuts[:-1], cuts[1:]):
            x = 0.5 * (b - a) * t + 0.5 * (a + b)
            g = np.exp(-((x - sv) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)
            tot += 0.5 * (b - a) * np.sum(w * m(x) * g)
        out[idx] = tot
    return out[()]


@dataclass(frozen=True)
class LineConstant(LineProfile):
    c: complex = 1.0
    family = "constant"
    has_closed_smoothing = True

    def __call__(self, x):
        c = complex(self.c)
        return np.full(np.shape(x), c.real if c.imag == 0 else c)[()]

    @property
    def sup(self):
        return abs(self.c)

    def smoothed(self, var, s):
        return np.full(np.shape(s), complex(self.c))[()]

    def to_dict(self):
        return {"family": "constant", "c": _pair(self.c)}


@dataclass(frozen=True)
class StepProfile(LineProfile):
    """Piecewise constant: ``values[k]`` on ``[cuts[k-1], cuts[k])``, with
    ``len(values) == len(cuts) + 1``."""

    cuts: tuple
    values: tuple
    family = "step"
    has_closed_smoothing = True

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(float(c) for c in self.cuts))
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if len(self.values) != len(self.cuts) + 1:
            raise PreconditionError("step profile needs len(values) == len(cuts) + 1")
        if list(self.cuts) != sorted(self.cuts):
            raise PreconditionError("step cuts must be increasing")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = np.searchsorted(np.asarray(self.cuts), x, side="right")
        vals = np.asarray(self.values)
        out = vals[k]
        return (out.real if np.all(vals.imag == 0) else out)[()]

    @property
    def sup(self):
        return max(abs(v) for v in self.values)

    @property
    def breaks(self):
        return self.cuts

    def smoothed(self, var, s):
        s = np.asarray(s, dtype=complex)
        scale = 1.0 / math.sqrt(2.0 * var)
        lo = -np.ones_like(s)
        out = np.zeros_like(s)
        for k, v in enumerate(self.values):
            hi = erf(scale * (self.cuts[k] - s)) if k < len(self.cuts) else np.ones_like(s)
            out += v * 0.5 * (hi - lo)
            lo = hi
        return out[()]

    def to_dict(self):
        return {"family": "step", "cuts": list(self.cuts), "values": [_pair(v) for v in self.values]}


def sign_step(at: float = 0.0) -> StepProfile:
    return StepProfile((at,), (-1.0, 1.0))


@dataclass(frozen=True)
class LineGaussian(LineProfile):
    """``amp * exp(-(x - center)^2 / (2 var))``."""

    amp: complex = 1.0
    center: float = 0.0
    var: float = 1.0
    family = "gaussian"
    has_closed_smoothing = True

    def __post_init__(self):
        if self.var <= 0:
            raise PreconditionError("gaussian profile needs var > 0")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = self.amp * np.exp(-((x - self.center) ** 2) / (2 * self.var))
        return (out.real if complex(self.amp).imag == 0 else out)[()]

    @property
    def sup(self):
        return abs(self.amp)

    def smoothed(self, var, s):
        s = np.asarray(s, dtype=complex)
        v = self.var + var
        return (self.amp * math.sqrt(self.var / v) * np.exp(-((s - self.center) ** 2) / (2 * v)))[()]

    def to_dict(self):
        return {"family": "gaussian", "amp": _pair(self.amp), "center": self.center, "var": self.var}


@dataclass(frozen=True)
class LineCosine(LineProfile):
    """``offset + amp * cos(k x + phase)``."""

    amp: float = 1.0
    k: float = 1.0
    phase: float = 0.0
    offset: float = 0.0
    family = "cosine"
    has_closed_smoothing = True

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (self.offset + self.amp * np.cos(self.k * x + self.phase))[()]

    @property
    def sup(self):
        return abs(self.offset) + abs(self.amp)

    def smoothed(self, var, s):
        s = np.asarray(s, dtype=complex)
        damp = math.exp(-0.5 * self.k**2 * var)
        return (self.offset + self.amp * damp * np.cos(self.k * s + self.phase))[()]

    def to_dict(self):
        return {"family": "cosine", "amp": self.amp, "k": self.k, "phase": self.phase, "offset": self.offset}


@dataclass(frozen=True)
class LineGrid(LineProfile):
    """Linear interpolation of samples, held constant outside the grid."""

    x: tuple
    values: tuple
    family = "grid"

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape or x.size < 2:
            raise PreconditionError("line grid needs matching x/values with at least two samples")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise PreconditionError("line grid samples must be finite")
        if np.any(np.diff(x) <= 0):
            raise PreconditionError("line grid abscissae must be strictly increasing")
        object.__setattr__(self, "x", tuple(x))
        object.__setattr__(self, "values", tuple(v))

    def __call__(self, x):
        return np.interp(np.asarray(x, dtype=float), self.x, self.values)[()]

    @property
    def sup(self):
        return float(np.max(np.abs(self.values)))

    @property
    def breaks(self):
        return self.x

    def to_dict(self):
        return {"family": "grid", "x": list(self.x), "values": list(self.values)}


@dataclass(frozen=True)
class LineSum(LineProfile):
    terms: tuple
    weights: tuple = ()
    family = "sum"

    def __post_init__(self):
        w = self.weights or (1.0,) * len(self.terms)
        if len(w) != len(self.terms):
            raise PreconditionError("line sum needs one weight per term")
        object.__setattr__(self, "weights", tuple(complex(c) for c in w))

    @property
    def has_closed_smoothing(self):
        return all(t.has_closed_smoothing for t in self.terms)

    def __call__(self, x):
        out = sum(c * np.asarray(t(x), dtype=complex) for c, t in zip(self.weights, self.terms))
        out = np.asarray(out)
        return (out.real if np.all(out.imag == 0) else out)[()]

    @property
    def sup(self):
        return sum(abs(c) * t.sup for c, t in zip(self.weights, self.terms))

    @property
    def breaks(self):
        return tuple(sorted({b for t in self.terms for b in t.breaks}))

    def smoothed(self, var, s):
        if not self.has_closed_smoothing:
            return _smoothed_quadrature(self, var, s)
        return sum(c * np.asarray(t.smoothed(var, s)) for c, t in zip(self.weights, self.terms))[()]

    def to_dict(self):
        return {"family": "sum", "terms": [t.to_dict() for t in self.terms], "weights": [_pair(c) for c in self.weights]}


@dataclass(frozen=True)
class Reflected(LineProfile):
    base: LineProfile
    family = "reflected"

    @property
    def has_closed_smoothing(self):
        return self.base.has_closed_smoothing

    def __call__(self, x):
        return self.base(-np.asarray(x, dtype=float))

    @property
    def sup(self):
        return self.base.sup

    @property
    def breaks(self):
        return tuple(sorted(-b for b in self.base.breaks))

    def smoothed(self, var, s):
        return self.base.smoothed(var, -np.asarray(s, dtype=complex))

    def to_dict(self):
        return {"family": "reflected", "base": self.base.to_dict()}


@dataclass(frozen=True)
class Smoothed(LineProfile):
    """``m0 * G_var`` as a profile in its own right (e.g. ``m = g * m0``)."""

    base: LineProfile
    var: float
    family = "smoothed"

    @property
    def has_closed_smoothing(self):
        return self.base.has_closed_smoothing

    def __call__(self, x):
        out = np.asarray(self.base.smoothed(self.var, np.asarray(x, dtype=float)))
        return (out.real if np.allclose(out.imag, 0, atol=1e-15) else out)[()]

    @property
    def sup(self):
        return self.base.sup

    def smoothed(self, var, s):
        return self.base.smoothed(self.var + var, s)

    def to_dict(self):
        return {"family": "smoothed", "base": self.base.to_dict(), "var": self.var}


def line_profile_from_dict(d: dict) -> LineProfile:
    fam = d.get("family")
    if fam == "constant":
        return LineConstant(_c(d.get("c", 1.0)))
    if fam == "step":
        return StepProfile(tuple(d["cuts"]), tuple(_c(v) for v in d["values"]))
    if fam == "sign":
        return sign_step(float(d.get("at", 0.0)))
    if fam == "gaussian":
        return LineGaussian(_c(d.get("amp", 1.0)), float(d.get("center", 0.0)), float(d.get("var", 1.0)))
    if fam == "cosine":
        return LineCosine(float(d.get("amp", 1.0)), float(d.get("k", 1.0)), float(d.get("phase", 0.0)), float(d.get("offset", 0.0)))
    if fam == "grid":
        return LineGrid(tuple(d["x"]), tuple(d["values"]))
    if fam == "sum":
        terms = tuple(line_profile_from_dict(t) for t in d["terms"])
        return LineSum(terms, tuple(_c(w) for w in d.get("weights", [1.0] * len(terms))))
    if fam == "reflected":
        return Reflected(line_profile_from_dict(d["base"]))
    if fam == "smoothed":
        return Smoothed(line_profile_from_dict(d["base"]), float(d["var"]))
    raise SpecError(f"unknown line profile family {fam!r}")


# ----------------------------------------------------------------------------
# symbols f : C -> C


class Symbol:
    """Bounded function on the plane."""

    family = "symbol"
    radial = False

    def __call__(self, z):
        raise NotImplementedError

    @property
    def sup(self) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


class RadialSymbol(Symbol):
    radial = True

    def profile(self, r):
        raise NotImplementedError

    def __call__(self, z):
        return self.profile(np.abs(np.asarray(z, dtype=complex)))

    def radial_moments(self, N: int):
        """Exact ``a_n`` when available, else None."""
        return None


@dataclass(frozen=True)
class Constant(RadialSymbol):
    c: complex = 1.0
    family = "constant"

    def profile(self, r):
        return np.full(np.shape(r), complex(self.c))[()]

    @property
    def sup(self):
        return abs(self.c)

    def radial_moments(self, N):
        return np.full(N, complex(self.c))

    def to_dict(self):
        return {"family": "constant", "c": _pair(self.c)}


@dataclass(frozen=True)
class GaussianRadial(RadialSymbol):
    """``amp * exp(-c |z|^2)`` with ``c >= 0``."""

    c: float = 1.0
    amp: complex = 1.0
    family = "gaussian-radial"

    def __post_init__(self):
        if self.c < 0:
            raise PreconditionError("gaussian radial symbol needs c >= 0 to stay bounded")

    def profile(self, r):
        return (self.amp * np.exp(-self.c * np.asarray(r, dtype=float) ** 2))[()]

    @property
    def sup(self):
        return abs(self.amp)

    def radial_moments(self, N):
        n = np.arange(N)
        return self.amp * np.exp(-(n + 1) * math.log1p(self.c))

    def to_dict(self):
        return {"family": "gaussian-radial", "c": self.c, "amp": _pair(self.amp)}


@dataclass(frozen=True)
class RadialStep(RadialSymbol):
    """``values[k]`` for ``radii[k-1] <= |z| < radii[k]``."""

    radii: tuple
    values: tuple
    family = "radial-step"

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if len(self.values) != len(self.radii) + 1:
            raise PreconditionError("radial step needs len(values) == len(radii) + 1")
        if any(r <= 0 for r in self.radii) or list(self.radii) != sorted(self.radii):
            raise PreconditionError("radial step radii must be positive and increasing")

    def profile(self, r):
        k = np.searchsorted(np.asarray(self.radii), np.asarray(r, dtype=float), side="right")
        return np.asarray(self.values)[k][()]

    @property
    def sup(self):
        return max(abs(v) for v in self.values)

    def radial_moments(self, N):
        # regularized lower incomplete gamma P(n+1, r^2) is the mass below r
        n = np.arange(N) + 1.0
        out = np.zeros(N, dtype=complex)
        lo = np.zeros(N)
        for k, v in enumerate(self.values):
            hi = gammainc(n, self.radii[k] ** 2) if k < len(self.radii) else np.ones(N)
            out += v * (hi - lo)
            lo = hi
        return out

    def to_dict(self):
        return {"family": "radial-step", "radii": list(self.radii), "values": [_pair(v) for v in self.values]}


@dataclass(frozen=True)
class RadialFunction(RadialSymbol):
    """Radial symbol from a callable profile ``g(r)`` with a declared bound."""

    g: object
    bound: float
    name: str = "radial"
    family = "radial-function"

    def profile(self, r):
        return np.asarray(self.g(np.asarray(r, dtype=float)))[()]

    @property
    def sup(self):
        return self.bound

    def to_dict(self):
        raise PreconditionError("callable radial profiles are not serializable")


@dataclass(frozen=True)
class Angular(Symbol):
    """``(z / |z|)^power``; value 1 at the origin for power 0."""

    power: int
    family = "angular"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * self.power * np.angle(z))[()]

    @property
    def sup(self):
        return 1.0

    def to_dict(self):
        return {"family": "angular", "power": int(self.power)}


@dataclass(frozen=True)
class PlaneWave(Symbol):
    """``exp(2i Im(w conj z0) + |z0|^2 / 2)``; its Toeplitz operator is W_{z0}."""

    z0: complex
    family = "plane-wave"

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        z0 = complex(self.z0)
        return np.exp(2j * np.imag(w * np.conj(z0)) + 0.5 * abs(z0) ** 2)[()]

    @property
    def sup(self):
        return math.exp(0.5 * abs(self.z0) ** 2)

    def to_dict(self):
        return {"family": "plane-wave", "z0": _pair(self.z0)}


@dataclass(frozen=True)
class Vertical(Symbol):
    """``f(z) = m0(sign * Im z)``; invariant under real translations."""

    m0: LineProfile
    sign: int = -1
    family = "vertical"

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PreconditionError("vertical symbol sign must be +1 or -1")

    def __call__(self, z):
        return self.m0(self.sign * np.imag(np.asarray(z, dtype=complex)))

    @property
    def sup(self):
        return self.m0.sup

    def to_dict(self):
        return {"family": "vertical", "m0": self.m0.to_dict(), "sign": self.sign}


@dataclass(frozen=True)
class GridSymbol(Symbol):
    """Piecewise linear interpolant of scattered samples, 0 outside the hull."""

    points: tuple
    values: tuple
    family = "grid"

    def __post_init__(self):
        p = np.asarray([_c(q) for q in self.points], dtype=complex)
        v = np.asarray([_c(q) for q in self.values], dtype=complex)
        if p.shape != v.shape or p.size < 3:
            raise PreconditionError("grid symbol needs at least three points with matching values")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(v))):
            raise PreconditionError("grid symbol samples must be finite (unbounded grid symbol)")
        _, idx = np.unique(np.round(p, 14), return_index=True)
        idx = np.sort(idx)
        object.__setattr__(self, "points", tuple(p[idx]))
        object.__setattr__(self, "values", tuple(v[idx]))
        pts = np.column_stack([p[idx].real, p[idx].imag])
        object.__setattr__(self, "_interp", LinearNDInterpolator(pts, v[idx], fill_value=0.0))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self._interp(z.real, z.imag)[()]

    @property
    def sup(self):
        return float(np.max(np.abs(self.values)))

    def to_dict(self):
        return {"family": "grid", "points": [_pair(p) for p in self.points], "values": [_pair(v) for v in self.values]}


@dataclass(frozen=True)
class CallableSymbol(Symbol):
    """Wraps a vectorized callable. ``bound`` is the declared sup, used by
    predicates and norm checks; it is not verified here."""

    fn: object
    bound: float
    name: str = "callable"
    family = "callable"

    def __call__(self, z):
        return np.asarray(self.fn(np.asarray(z, dtype=complex)))[()]

    @property
    def sup(self):
        return self.bound

    def to_dict(self):
        raise PreconditionError(f"callable symbol {self.name!r} is not serializable")


@dataclass(frozen=True)
class SymbolSum(Symbol):
    terms: tuple
    weights: tuple = ()
    family = "sum"

    def __post_init__(self):
        w = self.weights or (1.0,) * len(self.terms)
        if len(w) != len(self.terms):
            raise PreconditionError("symbol sum needs one weight per term")
        object.__setattr__(self, "weights", tuple(complex(c) for c in w))

    @property
    def radial(self):
        return all(t.radial for t in self.terms)

    def __call__(self, z):
        return sum(c * np.asarray(t(z), dtype=complex) for c, t in zip(self.weights, self.terms))

    @property
    def sup(self):
        return sum(abs(c) * t.sup for c, t in zip(self.weights, self.terms))

    def to_dict(self):
        return {"family": "sum", "terms": [t.to_dict() for t in self.terms], "weights": [_pair(c) for c in self.weights]}


def symbol_from_dict(d: dict) -> Symbol:
    fam = d.get("family")
    if fam == "constant":
        return Constant(_c(d.get("c", 1.0)))
    if fam == "gaussian-radial":
        return GaussianRadial(float(d.get("c", 1.0)), _c(d.get("amp", 1.0)))
    if fam == "radial-step":
        return RadialStep(tuple(d["radii"]), tuple(_c(v) for v in d["values"]))
    if fam == "angular":
        return Angular(int(d["power"]))
    if fam == "plane-wave":
        return PlaneWave(_c(d["z0"]))
    if fam == "vertical":
        return Vertical(line_profile_from_dict(d["m0"]), int(d.get("sign", -1)))
    if fam == "grid":
        return GridSymbol(tuple(_c(p) for p in d["points"]), tuple(_c(v) for v in d["values"]))
    if fam == "sum":
        terms = tuple(symbol_from_dict(t) for t in d["terms"])
        return SymbolSum(terms, tuple(_c(w) for w in d.get("weights", [1.0] * len(terms))))
    raise SpecError(f"unknown symbol family {fam!r}")


# ----------------------------------------------------------------------------
# entire functions sum_i p_i(z) exp(z conj(c_i))


def _exp_ecoeffs(c: complex, N: int) -> np.ndarray:
    """e-basis coefficients of exp(z conj c): conj(c)^n / sqrt(n!)."""
    n = np.arange(N)
    if c == 0:
        out = np.zeros(N, dtype=complex)
        out[0] = 1.0
        return out
    r, th = abs(c), math.atan2(c.imag, c.real)
    return np.exp(n * math.log(r) - 0.5 * gammaln(n + 1) - 1j * n * th)


def apply_multiplication(poly, vec: np.ndarray) -> np.ndarray:
    """Multiply the function with e-coefficients ``vec`` by the polynomial
    ``poly`` (ascending coefficients), keeping the same length. Uses
    ``w e_m = sqrt(m+1) e_{m+1}``, so every retained entry is exact."""
    N = vec.size
    out = np.zeros(N, dtype=complex)
    cur = vec.astype(complex)
    shift = np.sqrt(np.arange(1, N))
    for k, pk in enumerate(poly):
        if k > 0:
            nxt = np.zeros(N, dtype=complex)
            nxt[1:] = shift * cur[:-1]
            cur = nxt
        if pk != 0:
            out += pk * cur
    return out


@dataclass(frozen=True)
class AnalyticFunction:
    """``f(z) = sum_i p_i(z) exp(z conj c_i)``; ``terms`` is a tuple of
    ``(coeffs, c)`` with ascending polynomial coefficients."""

    terms: tuple

    def __post_init__(self):
        clean = []
        for coeffs, c in self.terms:
            co = tuple(complex(v) for v in coeffs)
            if not all(math.isfinite(abs(v)) for v in co):
                raise PreconditionError("analytic coefficients must be finite")
            clean.append((co, _c(c)))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def polynomial(cls, coeffs):
        return cls(((tuple(coeffs), 0j),))

    @classmethod
    def kernel_multiple(cls, c, b):
        """``c * K_b(z) = c * exp(z conj b)``."""
        return cls((((complex(c),), _c(b)),))

    @classmethod
    def exp_times_poly(cls, coeffs, c):
        return cls(((tuple(coeffs), _c(c)),))

    def __add__(self, other):
        return AnalyticFunction(self.terms + other.terms)

    def scale(self, s):
        return AnalyticFunction(tuple((tuple(s * v for v in co), c) for co, c in self.terms))

    @property
    def is_zero(self):
        return all(all(v == 0 for v in co) for co, _ in self.terms)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for co, c in self.terms:
            out += np.polyval(co[::-1], z) * np.exp(z * np.conj(c))
        return out[()]

    def ecoeffs(self, N: int) -> np.ndarray:
        out = np.zeros(N, dtype=complex)
        for co, c in self.terms:
            out += apply_multiplication(co, _exp_ecoeffs(c, N))
        return out

    def taylor(self, N: int) -> np.ndarray:
        n = np.arange(N)
        return self.ecoeffs(N) * np.exp(-0.5 * gammaln(n + 1))

    def to_dict(self):
        return {"terms": [{"coeffs": [_pair(v) for v in co], "c": _pair(c)} for co, c in self.terms]}


def analytic_from_dict(d: dict) -> AnalyticFunction:
    kind = d.get("kind")
    if kind == "polynomial":
        return AnalyticFunction.polynomial([_c(v) for v in d["coeffs"]])
    if kind == "kernel-multiple":
        return AnalyticFunction.kernel_multiple(_c(d.get("c", 1.0)), _c(d["b"]))
    if kind == "exp-times-poly":
        return AnalyticFunction.exp_times_poly([_c(v) for v in d["coeffs"]], _c(d["c"]))
    if "terms" in d:
        return AnalyticFunction(tuple(([_c(v) for v in t["coeffs"]], _c(t.get("c", 0))) for t in d["terms"]))
    raise SpecError(f"unknown analytic function kind {kind!r}")


# ----------------------------------------------------------------------------
# measures on [1, inf)


@dataclass(frozen=True)
class Density:
    """Density ``rho(t)`` on ``[t_min, t_max]``.

    ``kind`` is ``power`` (``coef * t^(-exponent)``) or ``piecewise-linear``
    (linear interpolation of ``values`` at ``knots``). An infinite ``t_max``
    is allowed for power laws with exponent > 0; it is cut where the
    remaining mass of ``rho(t)/t`` drops below ``tail_tol``.
    """

    kind: str
    t_min: float = 1.0
    t_max: float = 10.0
    coef: complex = 1.0
    exponent: float = 2.0
    knots: tuple = ()
    values: tuple = ()
    panels: int = 40
    order: int = 20
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("power", "piecewise-linear"):
            raise SpecError(f"unknown density kind {self.kind!r}")
        if self.kind == "piecewise-linear":
            k = np.asarray(self.knots, dtype=float)
            if k.size < 2 or k.size != len(self.values) or np.any(np.diff(k) <= 0):
                raise PreconditionError("piecewise-linear density needs increasing knots with matching values")
            object.__setattr__(self, "t_min", float(k[0]))
            object.__setattr__(self, "t_max", float(k[-1]))
        if self.t_min < 1:
            raise PreconditionError("measure must satisfy rho((0, 1)) = 0 (density starts below 1)")
        if not self.t_max > self.t_min:
            raise PreconditionError("density needs t_max > t_min")
        if math.isinf(self.t_max) and not (self.kind == "power" and self.exponent > 0):
            raise PreconditionError("unbounded support needs a decaying power law")

    @property
    def effective_t_max(self) -> float:
        if not math.isinf(self.t_max):
            return self.t_max
        # int_T^inf |coef| t^(-1-p) dt = |coef| T^(-p) / p
        p = self.exponent
        return max(self.t_min * 2, (abs(self.coef) / (p * self.tail_tol)) ** (1.0 / p))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= self.t_min) & (t <= self.t_max)
        if self.kind == "power":
            val = self.coef * np.where(inside, t, 1.0) ** (-self.exponent)
        else:
            val = np.interp(t, self.knots, np.asarray(self.values, dtype=float)).astype(complex)
        return np.where(inside, val, 0.0)[()]

    def _nodes(self):
        """Gauss-Legendre panels in u = log t (breaking at knots)."""
        lo, hi = math.log(self.t_min), math.log(self.effective_t_max)
        cuts = np.linspace(lo, hi, self.panels + 1)
        if self.kind == "piecewise-linear":
            cuts = np.union1d(cuts, np.log(np.asarray(self.knots, dtype=float)))
        x, w = roots_legendre(self.order)
        a, b = cuts[:-1, None], cuts[1:, None]
        u = (0.5 * (b - a) * x + 0.5 * (a + b)).ravel()
        wu = (0.5 * (b - a) * w).ravel()
        t = np.exp(u)
        return t, wu * t  # dt = t du

    def moments(self, N: int) -> np.ndarray:
        """``int t^(-(n+1)) rho(t) dt`` for n < N."""
        t, w = self._nodes()
        r = self(t) * w
        n = np.arange(N)[:, None]
        return np.exp(-(n + 1) * np.log(t)[None, :]) @ r

    def total_variation_moment(self) -> float:
        t, w = self._nodes()
        return float(np.sum(np.abs(self(t)) * w / t))

    def to_dict(self):
        d = {"kind": self.kind, "panels": self.panels, "order": self.order}
        if self.kind == "power":
            d.update(t_min=self.t_min, t_max=("inf" if math.isinf(self.t_max) else self.t_max), coef=_pair(self.coef), exponent=self.exponent)
        else:
            d.update(knots=list(self.knots), values=list(self.values))
        return d


@dataclass(frozen=True)
class MeasureSpec:
    """Atoms ``(x_i, c_i)`` with ``x_i >= 1`` plus an optional density."""

    atoms: tuple = ()
    density: Density | None = None

    def __post_init__(self):
        clean = []
        for x, c in self.atoms:
            x = float(x)
            if not math.isfinite(x):
                raise PreconditionError("atom locations must be finite")
            if x < 1:
                raise PreconditionError(f"measure must satisfy rho((0, 1)) = 0; atom at {x} < 1")
            clean.append((x, _c(c)))
        object.__setattr__(self, "atoms", tuple(clean))

    @property
    def atomic(self) -> bool:
        return self.density is None

    @property
    def mass_at_one(self) -> complex:
        return sum((c for x, c in self.atoms if x == 1.0), 0j)

    @property
    def positive(self) -> bool:
        ok = all(c.imag == 0 and c.real >= 0 for _, c in self.atoms)
        if self.density is not None:
            t, _ = self.density._nodes()
            v = self.density(t)
            ok = ok and bool(np.all(np.abs(v.imag) == 0) and np.all(v.real >= 0))
        return ok

    def moments(self, N: int) -> np.ndarray:
        n = np.arange(N)
        out = np.zeros(N, dtype=complex)
        for x, c in self.atoms:
            out += c * np.exp(-(n + 1) * math.log(x))
        if self.density is not None:
            out += self.density.moments(N)
        return out

    def norm(self) -> float:
        """``int (1/t) d|rho|``."""
        total = sum(abs(c) / x for x, c in self.atoms)
        if self.density is not None:
            total += self.density.total_variation_moment()
        return float(total)

    def support_max(self) -> float:
        xs = [x for x, _ in self.atoms]
        if self.density is not None:
            xs.append(self.density.t_max)
        return max(xs) if xs else 1.0

    def to_dict(self):
        d = {"atoms": [[x, _pair(c)] for x, c in self.atoms]}
        if self.density is not None:
            d["density"] = self.density.to_dict()
        return d


def measure_from_dict(d: dict) -> MeasureSpec:
    atoms = tuple((float(a[0]), _c(a[1])) for a in d.get("atoms", []))
    dens = None
    if d.get("density"):
        dd = dict(d["density"])
        if dd.get("t_max") == "inf":
            dd["t_max"] = math.inf
        if "coef" in dd:
            dd["coef"] = _c(dd["coef"])
        for key in ("knots", "values"):
            if key in dd:
                dd[key] = tuple(dd[key])
        dens = Density(**dd)
    return MeasureSpec(atoms, dens)
