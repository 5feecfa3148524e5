"""Command line frontend: verify / sum / transform / coeffs.

Exit codes: 0 clean pass, 1 numeric failure (identity or oracle mismatch),
2 structural error (bad arguments, bad config, contour breakdown).

Config files are INI-style ([instance], [contour], [run]); every flag
overrides its config key.  GLVORONOI_CONFIG names a default config path.
All numeric output is fixed at 12 significant digits.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import os
import sys
from dataclasses import dataclass, fields
from math import gcd
from typing import Optional, Tuple

from .arith import ChainError, DivisorChain, hyperkloosterman, mod_inverse
from .mellin import (ArchParams, ContourConfig, ContourError, PoleError,
                     gaussian_family, resolve_contour, transform_grid)
from .modforms import FORMS, a_to_c, ramanujan_tau
from .voronoi import VoronoiInstance, verify

FORM_IDS = {"delta": "delta", "sym2-delta": "sym2delta"}


@dataclass
class RunConfig:
    form: str = "sym2-delta"
    n: int = 0                  # 0 = derive from form
    q: int = 1
    a: int = 0
    c: str = "1"
    family: str = "gaussian"
    m: int = 0
    x: float = 3.0
    s0: str = ""                # empty = resolve at runtime
    t: float = 60.0
    h: float = 0.05
    rel_tol: float = 1e-6
    abs_floor: float = 1e-9
    term_tol: float = 1e-9
    threads: int = 1
    out: str = ""

    _SECTIONS = {
        "instance": ("form", "n", "q", "a", "c", "family", "m", "x"),
        "contour": ("s0", "t", "h"),
        "run": ("rel_tol", "abs_floor", "term_tol", "threads", "out"),
    }

    def to_ini(self) -> str:
        buf = io.StringIO()
        for sec in ("instance", "contour", "run"):
            buf.write("[%s]\n" % sec)
            for key in self._SECTIONS[sec]:
                buf.write("%s = %s\n" % (key, getattr(self, key)))
            buf.write("\n")
        return buf.getvalue()

    @classmethod
    def from_ini(cls, text: str) -> "RunConfig":
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ValueError("config parse error: %s" % exc)
        cfg = cls()
        types = {f.name: f.type for f in fields(cls)}
        for sec, keys in cls._SECTIONS.items():
            if not cp.has_section(sec):
                continue
            for key in cp[sec]:
                if key not in keys:
                    raise ValueError("config key [%s] %s not recognized" % (sec, key))
                raw = cp[sec][key].strip()
                ftype = types[key]
                if ftype == "int":
                    setattr(cfg, key, int(raw))
                elif ftype == "float":
                    setattr(cfg, key, float(raw))
                else:
                    setattr(cfg, key, raw)
        return cfg

    def c_tuple(self) -> Tuple[int, ...]:
        s = self.c.strip()
        if not s:
            return ()
        return tuple(int(tok) for tok in s.replace(",", " ").split())

    def contour(self) -> ContourConfig:
        s0 = float(self.s0) if self.s0.strip() else None
        return ContourConfig(s0=s0, T=self.t, h=self.h)


def _load_config(args) -> RunConfig:
    path = getattr(args, "config", None) or os.environ.get("GLVORONOI_CONFIG")
    if path:
        with open(path) as fh:
            cfg = RunConfig.from_ini(fh.read())
    else:
        cfg = RunConfig()
    overrides = {
        "form": "form", "n": "n", "q": "q", "a": "a", "c": "c", "m": "m",
        "X": "x", "s0": "s0", "T": "t", "h": "h", "tolerance": "rel_tol",
        "abs_floor": "abs_floor", "term_tol": "term_tol", "out": "out",
        "threads": "threads",
    }
    for flag, key in overrides.items():
        v = getattr(args, flag, None)
        if v is not None:
            setattr(cfg, key, v)
    return cfg


def _instance_params(cfg: RunConfig):
    """(form or None, ArchParams) for the configured instance."""
    if cfg.n == 1:
        return None, ArchParams(lam=(0.0,), delta=(0,))
    if cfg.form not in FORM_IDS:
        raise ValueError("unknown form %r (choose from %s, or n=1)"
                         % (cfg.form, ", ".join(sorted(FORM_IDS))))
    form = FORMS[FORM_IDS[cfg.form]]()
    if cfg.n and cfg.n != form.n:
        raise ValueError("n=%d does not match form %s (n=%d)"
                         % (cfg.n, cfg.form, form.n))
    return form, form.params


def _fspec_for(cfg: RunConfig, params: ArchParams):
    if cfg.family != "gaussian":
        raise ValueError("unknown test-function family %r" % cfg.family)
    if cfg.m not in (0, 1):
        raise ValueError("family exponent m must be 0 or 1")
    return gaussian_family(lam_n=float(params.lam[-1].real),
                           delta_n=params.delta[-1], m=cfg.m, X=cfg.x)


def _emit(text: str, out_path: str):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _load_config(args)
    form, params = _instance_params(cfg)
    if form is None:
        raise ValueError("verify needs a form on GL(2) or GL(3), not n=1")
    fspec = _fspec_for(cfg, params)
    inst = VoronoiInstance(form=form, a=cfg.a, q=cfg.q, c=cfg.c_tuple(),
                           fspec=fspec, contour=cfg.contour(),
                           term_tol=cfg.term_tol)
    report = verify(inst, rel_tol=cfg.rel_tol, abs_floor=cfg.abs_floor)
    _emit(report.to_json(include_timing=bool(getattr(args, "timing", False))) + "\n",
          cfg.out)
    print(report.summary_line(), file=sys.stderr)
    return 0 if report.passed else 1


def _sum_brute(a: int, b: int, q: int, c, d) -> complex:
    # direct nested loop over the unit boxes, no recursion shared with the
    # library path
    import cmath
    chain = DivisorChain(d, q, c)
    moduli = chain.moduli()
    total = 0j
    if not moduli:
        return cmath.exp(2j * cmath.pi * (a * b % q) / q)
    def rec(j, prev_inv, phase):
        nonlocal total
        m = moduli[j]
        mprev = q if j == 0 else moduli[j - 1]
        seed = a if j == 0 else prev_inv
        for x in range(m) if m > 1 else [0]:
            if m > 1 and gcd(x, m) != 1:
                continue
            ph = phase + d[j] * x * seed / mprev
            xinv = mod_inverse(x % m, m)
            if j + 1 < len(moduli):
                rec(j + 1, xinv, ph)
            else:
                total += cmath.exp(2j * cmath.pi * (ph + b * xinv / m))
    rec(0, 0, 0.0)
    return total


def cmd_sum(args) -> int:
    c = tuple(args.c or [])
    d = tuple(args.d or [])
    chain = DivisorChain(d, args.q, c)   # raises ChainError on a bad chain
    val = hyperkloosterman(args.a, args.b, args.q, chain)
    if abs(val.imag) < 1e-9:
        print("%.12f" % val.real)
    else:
        print("%.12f%+.12fj" % (val.real, val.imag))
    if args.check:
        ref = _sum_brute(args.a, args.b, args.q, c, d)
        dev = abs(val - ref)
        print("oracle %.12f%+.12fj  |delta| = %.3e  %s"
              % (ref.real, ref.imag, dev, "ok" if dev <= 1e-12 else "MISMATCH"))
        if dev > 1e-12:
            return 1
    return 0


def cmd_transform(args) -> int:
    cfg = _load_config(args)
    _, params = _instance_params(cfg)
    fspec = _fspec_for(cfg, params)
    ys = []
    if args.y:
        for tok in args.y.replace(",", " ").split():
            y = float(tok)
            if y == 0.0:
                raise ValueError("transform argument y must be nonzero")
            ys.append(y)
    contour = cfg.contour()
    # surface pole/zero trouble before any evaluation
    for delta in (0, 1):
        resolve_contour(params, fspec, delta, contour)
    rows = transform_grid(ys, params, fspec, contour)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["y", "ReF", "ImF", "est_err"])
    for y, val, est in rows:
        w.writerow(["%.12g" % y, "%.12g" % val.real, "%.12g" % val.imag,
                    "%.3e" % est])
    _emit(buf.getvalue(), cfg.out)
    return 0


def cmd_coeffs(args) -> int:
    if args.form not in FORM_IDS:
        raise ValueError("unknown form %r" % args.form)
    form = FORMS[FORM_IDS[args.form]]()
    kmax = args.max
    if kmax < 1:
        raise ValueError("--max must be >= 1")
    buf = io.StringIO()
    w = csv.writer(buf)
    want_c = bool(args.arch_params)
    if form.n == 2:
        tau = ramanujan_tau(kmax)
        header = ["k", "tau", "a"]
        if want_c:
            header.append("c")
        w.writerow(header)
        for k in range(1, kmax + 1):
            row = [k, tau[k], "%.12g" % form.coefficient(k)]
            if want_c:
                ck = a_to_c(form.coefficient(k), (k,), form.params)
                row.append("%.12g" % ck.real)
            w.writerow(row)
    else:
        header = ["k1", "k2", "a"]
        if want_c:
            header.append("c")
        w.writerow(header)
        for k1 in range(1, kmax + 1):
            for k2 in range(1, kmax + 1):
                row = [k1, k2, "%.12g" % form.coefficient(k1, k2)]
                if want_c:
                    ck = a_to_c(form.coefficient(k1, k2), (k1, k2), form.params)
                    row.append("%.12g" % ck.real)
                w.writerow(row)
    _emit(buf.getvalue(), args.out or "")
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="glvoronoi",
        description="numerical dual-summation identity checks for GL(n) cusp form data")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config path (or set GLVORONOI_CONFIG)")
    common.add_argument("--form", choices=sorted(FORM_IDS))
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int, help="test-function exponent (0 or 1)")
    common.add_argument("--X", type=float, help="Gaussian scale")
    common.add_argument("--s0", help="contour abscissa (empty = auto)")
    common.add_argument("--T", type=float, help="contour half-height")
    common.add_argument("--h", type=float, help="contour step")
    common.add_argument("--out", help="write output to this path instead of stdout")

    pv = sub.add_parser("verify", parents=[common],
                        help="compare both sides of the summation identity")
    pv.add_argument("--q", type=int)
    pv.add_argument("--a", type=int)
    pv.add_argument("--c", help="comma-separated module sizes (n-2 entries)")
    pv.add_argument("--tolerance", type=float, help="relative tolerance")
    pv.add_argument("--abs-floor", dest="abs_floor", type=float)
    pv.add_argument("--term-tol", dest="term_tol", type=float)
    pv.add_argument("--threads", type=int, help="reserved; reduction is ordered")
    pv.add_argument("--timing", action="store_true",
                    help="include wall time in the JSON (breaks byte-stability)")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sum", help="evaluate one hyper-Kloosterman sum")
    ps.add_argument("--a", type=int, required=True)
    ps.add_argument("--b", type=int, required=True)
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--c", type=int, action="append",
                    help="module size, repeatable in order c1, c2, ...")
    ps.add_argument("--d", type=int, action="append",
                    help="chain entry, repeatable in order d1, d2, ...")
    ps.add_argument("--check", action="store_true",
                    help="also run the brute-force oracle")
    ps.set_defaults(func=cmd_sum)

    pt = sub.add_parser("transform", parents=[common],
                        help="evaluate the test-function transform on a y grid")
    pt.add_argument("--y", default="", help="comma-separated nonzero y values")
    pt.set_defaults(func=cmd_transform)

    pc = sub.add_parser("coeffs", help="dump a coefficient table as CSV")
    pc.add_argument("--form", choices=sorted(FORM_IDS), required=True)
    pc.add_argument("--max", type=int, required=True)
    pc.add_argument("--arch-params", dest="arch_params", action="store_true",
                    help="add the distribution-normalized c column")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_coeffs)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ChainError, ContourError, PoleError,
            ArithmeticError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
