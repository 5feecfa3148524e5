"""Archimedean engine: complex log-gamma, the Gamma factors G_delta of the
functional equation, signed Mellin transforms, and contour evaluation of the
transform F attached to a test function.

The product relation

    M_delta F(s) = (-1)^{n delta} prod_j G_{delta_j + delta}(s - lambda_j + 1) * M_delta f(-s)

together with signed Mellin inversion along a vertical line Re s = s0 is the
only route used to evaluate F; everything here is float64, with log-space
accumulation so that the individually huge/tiny factors never overflow.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

LOG_2PI = math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)

__all__ = [
    "ArchParams",
    "ContourConfig",
    "ContourError",
    "PoleError",
    "ResolvedContour",
    "TestFunctionSpec",
    "contour_window",
    "convergence_selftest",
    "fourier_numeric",
    "gamma_factor",
    "gaussian_family",
    "log_gamma_factor",
    "loggamma",
    "mellin_of_F",
    "resolve_contour",
    "signed_mellin_numeric",
    "transform_F",
    "transform_grid",
]


class PoleError(ValueError):
    """Raised when an evaluation point sits on (or too near) a pole.

    Attributes: location (the offending complex point, in the coordinate of
    the factor that blew up), delta, residue (residue of G_delta there, when
    it is a G factor pole), factor_index (which j in a product, or None).
    """

    def __init__(self, message, location, delta=None, residue=None, factor_index=None):
        super().__init__(message)
        self.location = location
        self.delta = delta
        self.residue = residue
        self.factor_index = factor_index


class ContourError(ValueError):
    """Contour abscissa outside the pole-free window, or no window exists."""


# ---------------------------------------------------------------------------
# complex log-gamma, Lanczos g=607/128 with 15 coefficients
# ---------------------------------------------------------------------------

_LG_G = 607.0 / 128.0
_LG_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])


def _lg_core(z):
    # Re z >= 0.5 assumed
    w = z - 1.0
    acc = np.full(np.shape(w), _LG_C[0], dtype=complex)
    for k in range(1, len(_LG_C)):
        acc = acc + _LG_C[k] / (w + k)
    t = w + _LG_G + 0.5
    return 0.5 * LOG_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin(w):
    """log(sin w), elementwise, stable for large |Im w|.

    Branch may differ from the principal one by 2 pi i k; callers only ever
    exponentiate or combine with other logs before exponentiating.
    """
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    im = w.imag
    mid = np.abs(im) <= 22.0
    out[mid] = np.log(np.sin(w[mid]))
    up = im > 22.0
    dn = im < -22.0
    # sin w = (i/2) e^{-iw} (1 - e^{2iw})  when Im w >> 0
    out[up] = -1j * w[up] + (0.5j * math.pi - math.log(2.0)) + np.log(1.0 - np.exp(2j * w[up]))
    # sin w = (-i/2) e^{iw} (1 - e^{-2iw})  when Im w << 0
    out[dn] = 1j * w[dn] - (0.5j * math.pi + math.log(2.0)) + np.log(1.0 - np.exp(-2j * w[dn]))
    return out


def _log_cos(w):
    """log(cos w), same branch caveat as _log_sin."""
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    im = w.imag
    mid = np.abs(im) <= 22.0
    out[mid] = np.log(np.cos(w[mid]))
    up = im > 22.0
    dn = im < -22.0
    out[up] = -1j * w[up] - math.log(2.0) + np.log(1.0 + np.exp(2j * w[up]))
    out[dn] = 1j * w[dn] - math.log(2.0) + np.log(1.0 + np.exp(-2j * w[dn]))
    return out


def loggamma(z):
    """log Gamma(z), scalar or ndarray, possibly offset by 2 pi i k.

    exp(loggamma(z)) equals Gamma(z) to ~1e-13 relative on the strips this
    package uses. Reflection handles Re z < 0.5; at the poles (z a
    nonpositive integer) the result is +inf-ish garbage, callers that can
    land there must check first.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    if right.any():
        out[right] = _lg_core(z[right])
    left = ~right
    if left.any():
        zl = z[left]
        out[left] = LOG_PI - _log_sin(math.pi * zl) - _lg_core(1.0 - zl)
    return complex(out[0]) if scalar else out


def _g_pole_index(s, delta, tol=1e-9):
    """k such that s is within tol of the pole -(delta + 2k) of G_delta, else None."""
    s = complex(s)
    if abs(s.imag) > tol:
        return None
    m = round(-s.real)
    if m < 0 or abs(s.real + m) > tol:
        return None
    if m % 2 != delta % 2:
        return None
    return (m - delta) // 2


def _g_residue(delta, k):
    # residue of G_delta at s = -(delta + 2k)
    m = delta + 2 * k
    r = 2.0 * (2.0 * math.pi) ** m * (-1.0) ** k / math.factorial(m)
    return r * 1j if delta else r


def log_gamma_factor(s, delta):
    """log of G_delta(s), elementwise, branch offset by 2 pi i k allowed.

    G_0(s) = 2 (2pi)^{-s} Gamma(s) cos(pi s/2)
    G_1(s) = 2i (2pi)^{-s} Gamma(s) sin(pi s/2)
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    s = np.asarray(s, dtype=complex)
    base = math.log(2.0) - s * LOG_2PI + loggamma(s)
    half = 0.5 * math.pi * s
    if delta == 0:
        return base + _log_cos(half)
    return base + _log_sin(half) + 0.5j * math.pi


def gamma_factor(s, delta: int) -> complex:
    """G_delta(s) as a complex number; raises PoleError on the poles.

    Zeros (s = 1 + delta + 2k) come out as ~1e-16 * scale rather than exact
    zeros, inherited from trig roundoff.
    """
    k = _g_pole_index(s, delta)
    if k is not None:
        raise PoleError(
            "G_%d pole at s = %s" % (delta, s),
            location=complex(s), delta=delta, residue=_g_residue(delta, k),
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        out = complex(np.exp(log_gamma_factor(complex(s), delta)))
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        # Gamma pole cancelled by a trig zero (e.g. G_1 at s = 0): the point
        # is regular but the log-space product is inf - inf. Reflection
        # G_d(s) G_d(1-s) = (-1)^d moves it to a regular nonzero argument.
        with np.errstate(divide="ignore", invalid="ignore"):
            other = complex(np.exp(log_gamma_factor(complex(1.0 - s), delta)))
        return (-1.0) ** delta / other
    return out


# ---------------------------------------------------------------------------
# parameter containers
# ---------------------------------------------------------------------------

def _integer_spaced(lam, tol=1e-9) -> bool:
    vals = [complex(x) for x in lam]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            d = vals[i] - vals[j]
            if abs(d.imag) < tol and abs(d.real - round(d.real)) < tol:
                return True
    return False


@dataclass(frozen=True)
class ArchParams:
    """Archimedean parameters (lambda_j, delta_j), j = 1..n.

    Constraints: sum lambda_j = 0, sum delta_j even. Pairs with an exact
    integer gap make the small-|y| expansion of F pick up log powers; that
    never affects the contour evaluation used here, but the constructor
    insists the caller acknowledge it via singular=True.
    """

    lam: tuple
    delta: tuple
    singular: bool = False

    def __post_init__(self):
        lam = tuple(complex(x) for x in self.lam)
        delta = tuple(int(d) for d in self.delta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "delta", delta)
        if len(lam) < 1:
            raise ValueError("need n >= 1")
        if len(delta) != len(lam):
            raise ValueError("lam and delta length mismatch")
        if any(d not in (0, 1) for d in delta):
            raise ValueError("delta entries must be 0 or 1")
        if abs(sum(lam)) > 1e-12:
            raise ValueError("sum of lambda_j must vanish, got %s" % (sum(lam),))
        if sum(delta) % 2 != 0:
            raise ValueError("sum of delta_j must be even")
        if not self.singular and _integer_spaced(lam):
            raise ValueError(
                "lambda_j pairs differ by an exact integer; pass singular=True "
                "to accept (log-power asymptotics near 0, harmless on the contour)"
            )

    @property
    def n(self) -> int:
        return len(self.lam)

    def key(self):
        return (self.lam, self.delta)


@dataclass(frozen=True, eq=False)
class TestFunctionSpec:
    """A test function f together with closed-form signed Mellin data.

    mellin[eta] is an analytic callable for M_eta f(s) on the vertical strip
    strips[eta] = (a, b), meaning a < Re s < b; None marks a parity component
    that vanishes identically. Callables must accept numpy arrays. f is the
    pointwise evaluator, scale the decay scale (f negligible beyond ~6*scale),
    and (lam_n, delta_n) the membership prefactor: f(x) divided by
    |x|^{lam_n} sgn(x)^{delta_n} is Schwartz.
    """

    f: Callable[[float], float]
    mellin: tuple
    strips: tuple
    scale: float
    lam_n: float
    delta_n: int
    label: tuple = ()

    def mellin_transform(self, eta: int, s):
        fn = self.mellin[eta % 2]
        if fn is None:
            return np.zeros(np.shape(s), dtype=complex) if np.ndim(s) else 0j
        return fn(s)


def gaussian_family(lam_n, delta_n: int, m: int, X) -> TestFunctionSpec:
    """f(x) = |x|^{lam_n} sgn(x)^{delta_n} x^m exp(-pi x^2 / X^2), m in {0,1}.

    Exactly one parity component is nonzero, eta = (delta_n + m) mod 2, with

        M_eta f(s) = X^{s+sh} pi^{-(s+sh)/2} Gamma((s+sh)/2),   sh = lam_n + m,

    analytic on Re(s) > -sh. The other component vanishes by oddness.
    """
    if m not in (0, 1):
        raise ValueError("m must be 0 or 1")
    lam_n = float(lam_n)
    X = float(X)
    if X <= 0:
        raise ValueError("X must be positive")
    eta = (delta_n + m) % 2
    sh = lam_n + m
    log_X = math.log(X)

    def f(x: float) -> float:
        if x == 0.0:
            return 1.0 if (lam_n == 0.0 and m == 0 and delta_n == 0) else 0.0
        ax = abs(x)
        v = math.exp(lam_n * math.log(ax) - math.pi * x * x / (X * X))
        if delta_n and x < 0:
            v = -v
        if m:
            v *= x
        return v

    def mell(s):
        w = np.asarray(s, dtype=complex) + sh
        out = np.exp(w * log_X - 0.5 * w * LOG_PI + loggamma(0.5 * w))
        return complex(out) if np.ndim(s) == 0 else out

    mellin = (mell, None) if eta == 0 else (None, mell)
    strips = ((-sh, math.inf), None) if eta == 0 else (None, (-sh, math.inf))
    return TestFunctionSpec(
        f=f, mellin=mellin, strips=strips, scale=X, lam_n=lam_n,
        delta_n=int(delta_n) % 2,
        label=("gaussian", lam_n, int(delta_n) % 2, m, X),
    )


# ---------------------------------------------------------------------------
# numerical signed Mellin / Fourier (test oracles for the closed forms)
# ---------------------------------------------------------------------------

def signed_mellin_numeric(f, delta: int, s, tol: float = 1e-10) -> complex:
    """integral of f(x) |x|^{s-1} sgn(x)^delta over R, by adaptive quadrature.

    Folded to (0, inf): integral of (f(x) + (-1)^delta f(-x)) x^{s-1} dx.
    f may be real- or complex-valued; evaluations are memoized so the
    real/imaginary passes share them. Raises if the quadrature error
    estimate exceeds tol * (1 + |value|).
    """
    s = complex(s)
    sgn = -1.0 if delta % 2 else 1.0
    cache: dict = {}

    def folded(x):
        v = cache.get(x)
        if v is None:
            v = complex(f(x)) + sgn * complex(f(-x))
            cache[x] = v
        return v

    def part(pick, trig):
        def g(x):
            v = pick(folded(x)) * x ** (s.real - 1.0)
            return v * trig(s.imag * math.log(x)) if s.imag else v
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            return integrate.quad(g, 0.0, np.inf, limit=400,
                                  epsabs=1e-13, epsrel=1e-11)

    val = 0j
    err = 0.0
    re, ere = part(lambda z: z.real, math.cos)
    err += ere
    if s.imag:
        im, eim = part(lambda z: z.real, math.sin)
        err += eim
    else:
        im = 0.0
    val += complex(re, im)
    if any(abs(v.imag) > 1e-300 for v in cache.values()):
        re, ere = part(lambda z: z.imag, math.cos)
        err += ere
        if s.imag:
            im, eim = part(lambda z: z.imag, math.sin)
            err += eim
        else:
            im = 0.0
        val += 1j * complex(re, im)
    if err > tol * (1.0 + abs(val)):
        raise ArithmeticError(
            "signed Mellin quadrature did not converge at s=%s (err %.2e); "
            "likely outside the convergence strip" % (s, err))
    return val


def fourier_numeric(f, x, tol: float = 1e-10) -> complex:
    """hat f(x) = integral of f(y) e^{-2 pi i x y} dy, for real-valued f.

    Folded to (0, inf) against the even/odd parts of f; x != 0 goes through
    the oscillatory-weight algorithm, which stays accurate at frequencies a
    plain subdivision scheme cannot resolve.
    """
    x = float(x)

    def even(y):
        return f(y) + f(-y)

    def odd(y):
        return f(y) - f(-y)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if abs(x) < 4.0:
            # low frequency: plain subdivision; the weighted algorithm
            # degenerates as its cycle length blows up
            w = 2.0 * math.pi * x
            re, ere = integrate.quad(lambda y: even(y) * math.cos(w * y),
                                     0.0, np.inf, limit=400,
                                     epsabs=1e-13, epsrel=1e-11)
            im, eim = integrate.quad(lambda y: -odd(y) * math.sin(w * y),
                                     0.0, np.inf, limit=400,
                                     epsabs=1e-13, epsrel=1e-11)
        else:
            w = 2.0 * math.pi * abs(x)
            re, ere = integrate.quad(even, 0.0, np.inf, weight="cos", wvar=w,
                                     limit=400, limlst=200, epsabs=1e-13)
            im, eim = integrate.quad(odd, 0.0, np.inf, weight="sin", wvar=w,
                                     limit=400, limlst=200, epsabs=1e-13)
            im = -math.copysign(1.0, x) * im
    if ere + eim > tol * (1.0 + abs(complex(re, im))):
        raise ArithmeticError("Fourier quadrature did not converge at x=%s" % x)
    return complex(re, im)


# ---------------------------------------------------------------------------
# M_delta F and the contour machinery
# ---------------------------------------------------------------------------

def _factor_data(params: ArchParams, delta: int):
    # per factor j: (j, d', lambda_j); G_{d'}(s - lambda_j + 1)
    return [(j, (dj + delta) % 2, complex(lj))
            for j, (lj, dj) in enumerate(zip(params.lam, params.delta))]


def mellin_of_F(s, delta: int, params: ArchParams, fspec: TestFunctionSpec):
    """M_delta F(s) = (-1)^{n delta} prod_j G_{delta_j+delta}(s - lambda_j + 1) M_delta f(-s).

    Scalar or ndarray in s; log-space product. Raises PoleError naming the
    factor when a scalar s sits on a G pole.
    """
    arr = np.ndim(s) != 0
    sv = np.asarray(s, dtype=complex)
    if not arr:
        for j, d, lj in _factor_data(params, delta):
            w = complex(sv) - lj + 1.0
            k = _g_pole_index(w, d)
            if k is not None:
                raise PoleError(
                    "factor %d (G_%d at s - lambda + 1 = %s) is singular" % (j, d, w),
                    location=w, delta=d, residue=_g_residue(d, k), factor_index=j)
    mf = fspec.mellin_transform(delta, -sv)
    if not arr and mf == 0:
        return 0j
    logtot = np.log(np.asarray(mf, dtype=complex))
    for j, d, lj in _factor_data(params, delta):
        logtot = logtot + log_gamma_factor(sv - lj + 1.0, d)
    if (params.n * delta) % 2:
        logtot = logtot + 1j * math.pi
    out = np.exp(logtot)
    return complex(out) if not arr else out


def contour_window(params: ArchParams, fspec: TestFunctionSpec, delta: int,
                   depth: int = 45):
    """Pole-free abscissa window (lo, hi) for the M_delta F integrand.

    lo is the largest real part of a genuine pole of the G product (a factor
    pole not cancelled by another factor's zero); hi is where the poles of
    M_delta f(-s) start. Returns None for a parity component that vanishes.
    """
    strip = fspec.strips[delta % 2]
    if strip is None:
        return None
    hi = -strip[0]

    rows = _factor_data(params, delta)
    # pole ordinates p0 - 2k, zero ordinates z0 + 2k (real parts; instance
    # parameters are real so the lattice lives on the real axis)
    pole_tops = [lj.real - 1.0 - d for _, d, lj in rows]
    zero_tops = [lj.real + d for _, d, lj in rows]

    def zero_count(x):
        c = 0
        for z0 in zero_tops:
            k2 = (x - z0) / 2.0
            if k2 > -1e-9 and abs(k2 - round(k2)) < 1e-9:
                c += 1
        return c

    cands = sorted({round(p0 - 2.0 * k, 9) for p0 in pole_tops for k in range(depth)},
                   reverse=True)
    lo = None
    for x in cands:
        porder = 0
        for p0 in pole_tops:
            k2 = (p0 - x) / 2.0
            if k2 > -1e-9 and abs(k2 - round(k2)) < 1e-9:
                porder += 1
        if porder > zero_count(x):
            lo = x
            break
    if lo is None:
        lo = (max(pole_tops) if pole_tops else hi) - 2.0 * depth
    if lo >= hi - 1e-9:
        raise ContourError("empty abscissa window (%s, %s)" % (lo, hi))
    return (lo, hi)


@dataclass(frozen=True)
class ContourConfig:
    """Vertical-contour parameters; s0=None picks the abscissa per parity row
    from the runtime pole window. T is a floor, extended automatically until
    the integrand tail is negligible."""

    s0: Optional[float] = None
    T: float = 60.0
    h: float = 0.05

    def __post_init__(self):
        if self.T <= 0 or self.h <= 0:
            raise ValueError("T and h must be positive")


@dataclass(frozen=True)
class ResolvedContour:
    s0: float
    T: float
    h: float
    window: tuple


def _lattice_points_near(params, fspec, delta, lo, hi):
    # real ordinates of individual factor poles/zeros inside [lo, hi]
    pts = set()
    for _, d, lj in _factor_data(params, delta):
        for top, step in ((lj.real - 1.0 - d, -2.0), (lj.real + d, 2.0)):
            x = top
            while lo - 2.0 <= x <= hi + 2.0 or (step < 0 and x > hi):
                if lo - 2.0 <= x <= hi + 2.0:
                    pts.add(round(x, 9))
                x += step
                if step > 0 and x > hi + 2.0:
                    break
                if step < 0 and x < lo - 2.0:
                    break
    return pts


def resolve_contour(params: ArchParams, fspec: TestFunctionSpec, delta: int,
                    config: Optional[ContourConfig] = None):
    """Pick (s0, T, h) for one parity row; None if the row vanishes."""
    config = config or ContourConfig()
    win = contour_window(params, fspec, delta)
    if win is None:
        return None
    lo, hi = win

    if config.s0 is not None:
        s0 = float(config.s0)
        if not (lo + 1e-6 < s0 < hi - 1e-6):
            raise ContourError(
                "s0=%s outside the pole-free window (%s, %s)" % (s0, lo, hi))
    else:
        if lo + 0.75 <= hi - 0.75:
            s0 = min(max(0.4, lo + 0.75), hi - 0.75)
        else:
            s0 = 0.5 * (lo + hi)
        bad = _lattice_points_near(params, fspec, delta, lo, hi)
        tries = 0
        while any(abs(s0 - x) < 0.05 for x in bad) and tries < 12:
            s0 += 0.11 if s0 < 0.5 * (lo + hi) else -0.11
            tries += 1

    # extend T until the integrand tail is negligible relative to its bulk
    def mag(t):
        v = mellin_of_F(np.array([s0 + 1j * t, s0 + 1j * (t - 2.5)]),
                        delta, params, fspec)
        return float(np.max(np.abs(v)))

    scale = max(mag(t) for t in (1.0, 5.0, 10.0, 20.0, 40.0))
    T = float(config.T)
    while T < 420.0 and mag(T) > 1e-15 * scale:
        T += 24.0
    return ResolvedContour(s0=s0, T=T, h=float(config.h), window=win)


class _LineData:
    __slots__ = ("s0", "h", "t", "vals")

    def __init__(self, s0, h, t, vals):
        self.s0 = s0
        self.h = h
        self.t = t
        self.vals = vals


_LINE_CACHE: dict = {}


def clear_line_cache():
    _LINE_CACHE.clear()


def _get_line(params, fspec, delta, config):
    key = (params.key(), fspec.label or id(fspec), delta,
           config.s0, config.T, config.h)
    line = _LINE_CACHE.get(key)
    if line is not None:
        return line
    rc = resolve_contour(params, fspec, delta, config)
    if rc is None:
        _LINE_CACHE[key] = None
        return None
    n = int(math.ceil(rc.T / rc.h))
    t = (np.arange(2 * n + 1) - n) * rc.h
    vals = mellin_of_F(rc.s0 + 1j * t, delta, params, fspec)
    if not np.all(np.isfinite(vals)):
        raise ContourError("non-finite integrand on the contour at s0=%s" % rc.s0)
    line = _LineData(rc.s0, rc.h, t, vals)
    _LINE_CACHE[key] = line
    return line


def _eval_line(line: _LineData, absy: float):
    L = math.log(absy)
    ph = np.exp(-1j * line.t * L)
    w = line.vals * ph
    full = line.h * (np.sum(w) - 0.5 * (w[0] + w[-1]))
    coarse = 2.0 * line.h * (np.sum(w[::2]) - 0.5 * (w[0] + w[-1]))
    tail = float(abs(w[0]) + abs(w[-1])) * line.h
    est = abs(full - coarse) / 3.0 + 4.0 * tail
    pref = absy ** (-line.s0) / (4.0 * math.pi)
    return full * pref, est * pref


def transform_F(y, params: ArchParams, fspec: TestFunctionSpec,
                contour: Optional[ContourConfig] = None) -> complex:
    """F(y) for nonzero real y, via the contour form of the inversion integral.

    F(y) = (1/4 pi i) sum_delta sgn(y)^delta int_{Re s = s0} M_delta F(s) |y|^{-s} ds,
    one vertical line per parity row, trapezoid rule, line data cached per
    (params, fspec, contour) so repeated y evaluations cost one dot product.
    """
    y = float(y)
    if y == 0.0:
        raise ValueError("transform is evaluated away from y = 0")
    contour = contour or ContourConfig()
    acc = 0j
    for delta in (0, 1):
        line = _get_line(params, fspec, delta, contour)
        if line is None:
            continue
        val, _ = _eval_line(line, abs(y))
        if delta and y < 0:
            val = -val
        acc += val
    return complex(acc)


def transform_grid(ys: Sequence[float], params: ArchParams,
                   fspec: TestFunctionSpec,
                   contour: Optional[ContourConfig] = None):
    """Evaluate F on a list of ordinates; rows of (y, F, est_err)."""
    contour = contour or ContourConfig()
    out = []
    for y in ys:
        y = float(y)
        if y == 0.0:
            raise ValueError("transform is evaluated away from y = 0")
        val = 0j
        err = 0.0
        for delta in (0, 1):
            line = _get_line(params, fspec, delta, contour)
            if line is None:
                continue
            v, e = _eval_line(line, abs(y))
            if delta and y < 0:
                v = -v
            val += v
            err += e
        out.append((y, complex(val), float(err)))
    return out


def convergence_selftest(params: ArchParams, fspec: TestFunctionSpec,
                         ys: Sequence[float],
                         contour: Optional[ContourConfig] = None) -> float:
    """Max |F - F_refined| over ys, where the refinement halves h and doubles T."""
    contour = contour or ContourConfig()
    fine = ContourConfig(s0=contour.s0, T=2.0 * contour.T, h=0.5 * contour.h)
    worst = 0.0
    for y in ys:
        a = transform_F(y, params, fspec, contour)
        b = transform_F(y, params, fspec, fine)
        worst = max(worst, abs(a - b))
    return worst
