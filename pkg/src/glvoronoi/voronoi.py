"""Both sides of the dual summation identity, compared numerically.

lhs_sum: sum over r of coefficient * e(-ra/q) * f(r), exact phases.
rhs_sum: |q| * sum over divisor chains and r of the coefficient-weighted
hyper-Kloosterman sum times the transformed test function at the chain
argument r * d_{n-2}^2 ... d_1^{n-1} / (q^n * c_{n-2} ... c_1^{n-2}).

Truncation on either side is adaptive against a per-term tolerance; every
report records where the sums stopped and what was left on the table.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from .arith import (RationalPhase, divisor_chains, hyperkloosterman, kahan_sum,
                    mod_inverse)
from .dirichlet import DirichletCharacter, gauss_sum, is_primitive
from .mellin import ArchParams, ContourConfig, TestFunctionSpec, transform_F

__all__ = [
    "CalibrationReport",
    "SummationReport",
    "VoronoiInstance",
    "calibrate_arch_params",
    "lhs_sum",
    "rhs_sum",
    "twisted_verify",
    "verify",
]

REPORT_SCHEMA = "glvoronoi.report/1"

_MAX_R = 200000


@dataclass(frozen=True)
class VoronoiInstance:
    """One concrete run of the identity: a form, a twist a/q, module sizes c,
    a test function, and numerical policy."""

    form: object
    a: int
    q: int
    c: Tuple[int, ...]
    fspec: TestFunctionSpec
    params: Optional[ArchParams] = None
    dual_form: Optional[object] = None
    contour: ContourConfig = field(default_factory=ContourConfig)
    term_tol: float = 1e-9
    r_lhs: Optional[int] = None
    r_rhs: Optional[int] = None

    def __post_init__(self):
        params = self.params if self.params is not None else self.form.params
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if self.q < 1:
            raise ValueError("q must be positive")
        if gcd(self.a, self.q) != 1:
            raise ValueError("a and q must be coprime")
        if len(self.c) != params.n - 2:
            raise ValueError("c must have n-2 entries")
        if any(x == 0 for x in self.c):
            raise ValueError("c entries must be nonzero")
        lam_n = params.lam[-1]
        if abs(complex(lam_n) - complex(self.fspec.lam_n)) > 1e-12 or \
                params.delta[-1] != self.fspec.delta_n:
            raise ValueError("test function family does not match (lambda_n, delta_n)")

    @property
    def n(self) -> int:
        return self.params.n

    def rhs_form(self):
        return self.dual_form if self.dual_form is not None else self.form


def _round12(x: float) -> float:
    return float("%.12g" % x)


def _json_clean(obj):
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, complex):
        return {"im": _round12(obj.imag), "re": _round12(obj.real)}
    if isinstance(obj, dict):
        return {k: _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    return obj


@dataclass
class SummationReport:
    instance: dict
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool
    rel_tol: float
    abs_floor: float
    lhs_terms: int
    lhs_first_neglected: float
    rhs_chain_count: int
    chain_subtotals: List[dict]
    extra: Optional[dict] = None
    wall_time_ms: Optional[float] = None

    def to_json(self, include_timing: bool = False) -> str:
        doc = {
            "schema": REPORT_SCHEMA,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "passed": self.passed,
            "rel_tol": self.rel_tol,
            "abs_floor": self.abs_floor,
            "truncation": {
                "lhs_terms": self.lhs_terms,
                "lhs_first_neglected": self.lhs_first_neglected,
                "rhs_chain_count": self.rhs_chain_count,
            },
            "chain_subtotals": self.chain_subtotals,
            "wall_time_ms": (self.wall_time_ms if include_timing else None),
        }
        if self.extra is not None:
            doc["extra"] = self.extra
        return json.dumps(_json_clean(doc), sort_keys=True, separators=(",", ": "))

    def summary_line(self) -> str:
        return "%s rel_err=%.3e abs_err=%.3e lhs=%.9g%+.9gj rhs=%.9g%+.9gj" % (
            "PASS" if self.passed else "FAIL", self.rel_err, self.abs_err,
            self.lhs.real, self.lhs.imag, self.rhs.real, self.rhs.imag)


def _instance_echo(inst: VoronoiInstance) -> dict:
    return {
        "form": getattr(inst.form, "label", inst.form.__class__.__name__),
        "n": inst.n,
        "a": inst.a,
        "q": inst.q,
        "c": list(inst.c),
        "fspec": list(inst.fspec.label) if inst.fspec.label else None,
        "lam": [complex(l) for l in inst.params.lam],
        "delta": list(inst.params.delta),
        "term_tol": inst.term_tol,
    }


# ---------------------------------------------------------------------------
# the two sides
# ---------------------------------------------------------------------------

def lhs_sum(inst: VoronoiInstance) -> Tuple[complex, dict]:
    """sum_{r != 0} a_{c_{n-2},...,c_1,r} e(-ra/q) f(r), symmetric and adaptive."""
    form = inst.form
    f = inst.fspec.f
    prefix = tuple(reversed(inst.c))
    tol = inst.term_tol
    terms = []
    small_run = 0
    r = 0
    r_cap = inst.r_lhs if inst.r_lhs is not None else _MAX_R
    if inst.r_lhs is not None:
        edge = abs(f(float(inst.r_lhs))) + abs(f(-float(inst.r_lhs)))
        if edge > tol:
            need = inst.r_lhs
            while need < _MAX_R and abs(f(float(need))) + abs(f(-float(need))) > tol:
                need += max(1, need // 4)
            raise ValueError("r_lhs=%d leaves |f| = %.2e above tolerance; "
                             "need about %d" % (inst.r_lhs, edge, need))
    first_neglected = 0.0
    while r < r_cap:
        r += 1
        coef = form.coefficient(*(prefix + (r,)))
        tp = coef * RationalPhase(-r * inst.a, inst.q).value() * f(float(r))
        tm = coef * RationalPhase(r * inst.a, inst.q).value() * f(-float(r))
        terms.append(tp)
        terms.append(tm)
        mag = abs(tp) + abs(tm)
        if mag < tol:
            small_run += 1
            if small_run >= 6 and r >= 8 and inst.r_lhs is None:
                first_neglected = mag
                break
        else:
            small_run = 0
    total = kahan_sum(terms)
    diag = {"terms": 2 * r, "r_max": r, "first_neglected": first_neglected}
    return total, diag


def _chain_argument(r: int, q: int, c, d) -> Fraction:
    n = len(c) + 2
    num = r
    den = q ** n
    for j, dj in enumerate(d):          # d_j carries exponent n - (j+1)
        num *= dj ** (n - 1 - j)
    for j, cj in enumerate(c):          # c_j carries exponent n - 2 - j
        den *= abs(cj) ** (n - 2 - j)
    return Fraction(num, den)


def rhs_sum(inst: VoronoiInstance,
            f_cache: Optional[Dict] = None) -> Tuple[complex, dict]:
    """|q| * sum over chains d and r != 0 of
    a_{r,d_{n-2},...,d_1}/|r d_1...d_{n-2}| * S(a_bar, r) * F(chain argument)."""
    form = inst.rhs_form()
    q = inst.q
    abar = mod_inverse(inst.a % q, q)
    chains = divisor_chains(q, inst.c)
    tol = inst.term_tol
    if f_cache is None:
        f_cache = {}
    s_cache: Dict = {}

    def F_of(y_fr: Fraction) -> complex:
        v = f_cache.get(y_fr)
        if v is None:
            v = transform_F(float(y_fr), inst.params, inst.fspec, inst.contour)
            f_cache[y_fr] = v
        return v

    subtotals = []
    grand = []
    r_cap = inst.r_rhs if inst.r_rhs is not None else _MAX_R
    for chain in chains:
        d = chain.entries
        moduli = chain.moduli()
        m_last = moduli[-1] if moduli else q
        dprod = 1
        for dj in d:
            dprod *= dj
        suffix = tuple(reversed(d))
        terms = []
        small_run = 0
        r = 0
        first_neglected = 0.0
        converged = False
        while r < r_cap:
            r += 1
            coef = form.coefficient(*((r,) + suffix))
            kp = r % m_last
            sp = s_cache.get((d, kp))
            if sp is None:
                sp = hyperkloosterman(abar, kp, q, chain)
                s_cache[(d, kp)] = sp
            km = (-r) % m_last
            sm = s_cache.get((d, km))
            if sm is None:
                sm = hyperkloosterman(abar, km, q, chain)
                s_cache[(d, km)] = sm
            y = _chain_argument(r, q, inst.c, d)
            w = coef / (r * dprod)
            tp = w * sp * F_of(y)
            tm = w * sm * F_of(-y)
            terms.append(tp)
            terms.append(tm)
            mag = abs(tp) + abs(tm)
            if mag < tol:
                small_run += 1
                if small_run >= 6 and r >= 8 and inst.r_rhs is None:
                    first_neglected = mag
                    converged = True
                    break
            else:
                small_run = 0
        if inst.r_rhs is not None:
            converged = True
        if not converged:
            raise ArithmeticError(
                "rhs tail for chain d=%r still above tolerance at r=%d" % (d, r))
        sub = kahan_sum(terms)
        grand.append(sub)
        subtotals.append({"d": list(d), "subtotal": sub, "r_max": r,
                          "first_neglected": first_neglected})
    total = q * kahan_sum(grand)
    diag = {"chains": len(chains), "subtotals": subtotals,
            "f_evals": len(f_cache)}
    return total, diag


def _build_report(inst, lhs, lhs_diag, rhs, rhs_diag,
                  rel_tol, abs_floor, wall_ms, extra=None) -> SummationReport:
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else 0.0
    passed = rel_err <= rel_tol or (abs(lhs) <= abs_floor and abs(rhs) <= abs_floor)
    return SummationReport(
        instance=_instance_echo(inst),
        lhs=lhs, rhs=rhs, abs_err=abs_err, rel_err=rel_err, passed=passed,
        rel_tol=rel_tol, abs_floor=abs_floor,
        lhs_terms=lhs_diag["terms"],
        lhs_first_neglected=lhs_diag["first_neglected"],
        rhs_chain_count=rhs_diag["chains"],
        chain_subtotals=rhs_diag["subtotals"],
        extra=extra,
        wall_time_ms=wall_ms,
    )


def verify(inst: VoronoiInstance, rel_tol: float = 1e-6,
           abs_floor: float = 1e-9,
           f_cache: Optional[Dict] = None) -> SummationReport:
    t0 = time.perf_counter()
    lhs, lhs_diag = lhs_sum(inst)
    rhs, rhs_diag = rhs_sum(inst, f_cache=f_cache)
    wall = (time.perf_counter() - t0) * 1000.0
    return _build_report(inst, lhs, lhs_diag, rhs, rhs_diag,
                         rel_tol, abs_floor, wall)


def twisted_verify(inst: VoronoiInstance, chi: DirichletCharacter,
                   rel_tol: float = 1e-6, abs_floor: float = 1e-9,
                   collapse_tol: float = 1e-10) -> SummationReport:
    """Character-weighted combination over residue classes:
    sum_a chi(a) (lhs - rhs)(a) with the same q; cross-checked against the
    Gauss-sum-collapsed left side."""
    q = inst.q
    if chi.modulus != q:
        raise ValueError("character modulus %d != q %d" % (chi.modulus, q))
    if not is_primitive(chi):
        raise ValueError("twisted run needs a primitive character")
    t0 = time.perf_counter()
    f_cache: Dict = {}
    lhs_parts = []
    rhs_parts = []
    lhs_terms = 0
    lhs_first = 0.0
    chain_count = 0
    subtotal_echo = []
    for a in range(q) if q > 1 else [0]:
        w = chi(a)
        if w == 0 and q > 1:
            continue
        inst_a = replace(inst, a=a)
        la, ldiag = lhs_sum(inst_a)
        ra, rdiag = rhs_sum(inst_a, f_cache=f_cache)
        lhs_parts.append(w * la)
        rhs_parts.append(w * ra)
        lhs_terms += ldiag["terms"]
        lhs_first = max(lhs_first, ldiag["first_neglected"])
        chain_count = rdiag["chains"]
        subtotal_echo.append({"a": a, "chi_a": w,
                              "lhs": la, "rhs": ra})
    lhs_w = kahan_sum(lhs_parts)
    rhs_w = kahan_sum(rhs_parts)

    # independent left side: g_chi * sum over units r of conj(chi(-r)) a_r f(r)
    g = gauss_sum(chi)
    form = inst.form
    prefix = tuple(reversed(inst.c))
    f = inst.fspec.f
    terms = []
    small_run = 0
    r = 0
    while r < _MAX_R:
        r += 1
        mag = 0.0
        for rr in (r, -r):
            wch = chi(-rr).conjugate()
            if wch == 0:
                continue
            t = wch * form.coefficient(*(prefix + (abs(rr),))) * f(float(rr))
            terms.append(t)
            mag += abs(t)
        if mag < inst.term_tol:
            small_run += 1
            if small_run >= 6 and r >= 8:
                break
        else:
            small_run = 0
    collapsed = g * kahan_sum(terms)
    collapsed_dev = abs(collapsed - lhs_w)
    wall = (time.perf_counter() - t0) * 1000.0

    abs_err = abs(lhs_w - rhs_w)
    scale = max(abs(lhs_w), abs(rhs_w))
    rel_err = abs_err / scale if scale > 0 else 0.0
    passed = (rel_err <= rel_tol or (abs(lhs_w) <= abs_floor and abs(rhs_w) <= abs_floor))
    collapse_scale = max(abs(collapsed), abs(lhs_w), 1.0)
    collapse_ok = collapsed_dev <= collapse_tol * collapse_scale
    echo = _instance_echo(inst)
    echo["chi"] = chi.name or ("mod%d" % q)
    echo["chi_eta"] = chi.eta
    return SummationReport(
        instance=echo,
        lhs=lhs_w, rhs=rhs_w, abs_err=abs_err, rel_err=rel_err,
        passed=passed and collapse_ok,
        rel_tol=rel_tol, abs_floor=abs_floor,
        lhs_terms=lhs_terms, lhs_first_neglected=lhs_first,
        rhs_chain_count=chain_count,
        chain_subtotals=subtotal_echo,
        extra={"collapsed_lhs": collapsed,
               "collapsed_dev": collapsed_dev,
               "collapse_ok": collapse_ok,
               "gauss_sum": g},
        wall_time_ms=wall,
    )


# ---------------------------------------------------------------------------
# archimedean-parameter calibration
# ---------------------------------------------------------------------------

@dataclass
class CalibrationReport:
    entries: List[dict]            # candidate echo + rel_err, sorted
    winner: Optional[ArchParams]
    ties: List[int]                # indices into entries tied with the winner

    def summary_line(self) -> str:
        if self.winner is None:
            return "CALIBRATION: no candidate passed"
        extra = " (+%d tie)" % len(self.ties) if self.ties else ""
        return "CALIBRATION: winner lam=%s delta=%s rel_err=%.3e%s" % (
            tuple(l.real for l in self.winner.lam), self.winner.delta,
            self.entries[0]["rel_err"], extra)


def calibrate_arch_params(form, candidates, fspec_builder,
                          rel_tol: float = 1e-6) -> CalibrationReport:
    """Run the q=1 smoke identity per candidate (lam, delta) and rank.

    fspec_builder(params) -> TestFunctionSpec supplies the matching test
    function for each candidate's (lambda_n, delta_n) slot.  In the shipped
    instances several delta assignments give the identical transform (the
    gamma-factor product only sees parity sums along integer-spaced lambda),
    so exact ties are reported rather than hidden.
    """
    rows = []
    for i, params in enumerate(candidates):
        fspec = fspec_builder(params)
        inst = VoronoiInstance(form=form, a=0, q=1, c=(1,) * (params.n - 2),
                               fspec=fspec, params=params)
        try:
            rep = verify(inst, rel_tol=rel_tol)
            rows.append({"order": i,
                         "lam": [complex(l) for l in params.lam],
                         "delta": list(params.delta),
                         "rel_err": rep.rel_err,
                         "passed": rep.passed,
                         "params": params})
        except Exception as exc:  # contour failures rank last, honestly
            rows.append({"order": i,
                         "lam": [complex(l) for l in params.lam],
                         "delta": list(params.delta),
                         "rel_err": float("inf"),
                         "passed": False,
                         "error": "%s: %s" % (type(exc).__name__, exc),
                         "params": params})
    rows.sort(key=lambda e: (e["rel_err"], e["order"]))
    winner = None
    ties: List[int] = []
    if rows and rows[0]["passed"]:
        winner = rows[0]["params"]
        best = rows[0]["rel_err"]
        for j in range(1, len(rows)):
            if rows[j]["passed"] and rows[j]["rel_err"] <= max(best * 4.0, best + 1e-12):
                ties.append(j)
    for e in rows:
        e.pop("params")
    return CalibrationReport(entries=rows, winner=winner, ties=ties)
