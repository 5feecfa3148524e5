"""Fourier coefficient providers: exact Ramanujan tau, Satake parameters,
Schur-polynomial Hecke eigenvalues, and the shipped cusp form instances
(Delta on GL(2), its symmetric-square lift on GL(3)).

Coefficients are Hecke-normalized (a at index (1,...,1) equals 1) and built
multiplicatively from per-prime Satake data, so any full-level eigenform
with known prime parameters can plug in alongside the defaults.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from .arith import factorize
from .mellin import ArchParams

__all__ = [
    "CoefficientTable",
    "DeltaForm",
    "FORMS",
    "SatakeData",
    "Sym2DeltaForm",
    "a_to_c",
    "c_to_a",
    "eta_coefficients",
    "ramanujan_tau",
    "satake_gl2",
    "satake_sym2",
    "schur_coefficient",
    "sym2_coefficient",
]


# ---------------------------------------------------------------------------
# exact tau via eta-power convolution
# ---------------------------------------------------------------------------

def eta_coefficients(n_terms: int):
    """First n_terms coefficients of prod_{m>=1} (1 - q^m), by the pentagonal
    number theorem: exponents k(3k -+ 1)/2 with sign (-1)^k."""
    c = [0] * n_terms
    if n_terms > 0:
        c[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= n_terms:
            break
        s = -1 if k % 2 else 1
        c[g1] += s
        if g2 < n_terms:
            c[g2] += s
        k += 1
    return c


# Polynomial squarings are done by packing coefficients into one big integer
# (signed digits of just-wide-enough byte width) and using Python's
# subquadratic int multiply.

def _pack_signed(coeffs, nb: int):
    bits = 8 * nb
    headroom = 1 << (bits - 2)
    n = len(coeffs)
    digits = bytearray(nb * (n + 1))
    borrows = bytearray(nb * (n + 1))
    full = 1 << bits
    for i, c in enumerate(coeffs):
        if not -headroom < c < headroom:
            raise OverflowError("coefficient exceeds packing headroom")
        if c < 0:
            # store the complement, repay one unit at the next digit
            c += full
            borrows[(i + 1) * nb] = 1
        digits[i * nb:(i + 1) * nb] = int(c).to_bytes(nb, "little")
    return int.from_bytes(bytes(digits), "little") - int.from_bytes(bytes(borrows), "little")


def _unpack_signed(m: int, count: int, nb: int):
    bits = 8 * nb
    half = 1 << (bits - 1)
    headroom = 1 << (bits - 2)
    ndig = count + 1
    # drop digits past the truncation order; carries never flow downward
    m_low = m % (1 << (bits * ndig))
    off = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * ndig, "little")
    raw = (m_low + off).to_bytes(nb * (ndig + 2), "little")
    out = []
    for i in range(count):
        c = int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half
        if not -headroom < c < headroom:
            raise OverflowError("unpacked coefficient exceeds headroom")
        out.append(c)
    return out


def _polysquare_trunc(a, n_terms: int):
    a = a[:n_terms]
    peak = max(1, max(a), -min(a))
    # worst case for one product coefficient, plus sign bit and slack
    nb = ((len(a) * peak * peak).bit_length() + 10) // 8 + 1
    return _unpack_signed(_pack_signed(a, nb) ** 2, n_terms, nb)


def _eta_cubed(n_terms: int):
    # Jacobi: prod (1-q^m)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
    c = [0] * n_terms
    k = 0
    while k * (k + 1) // 2 < n_terms:
        c[k * (k + 1) // 2] = (2 * k + 1) * (-1 if k % 2 else 1)
        k += 1
    return c


def ramanujan_tau(n_max: int):
    """tau(1..n_max) as exact integers; index 0 of the returned list is a
    zero sentinel so that table[n] = tau(n).

    Delta = q prod (1-q^m)^24.  The cube of the eta factor is sparse
    (Jacobi's identity), so E^6 is a cheap sparse-by-sparse convolution and
    two packed squarings lift it to E^24, all truncated to n_max terms.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > 100000:
        raise ValueError("n_max beyond the supported desk scale (1e5)")
    e3 = _eta_cubed(n_max)
    support = [(i, v) for i, v in enumerate(e3) if v]
    e6 = [0] * n_max
    for i, vi in support:
        for j, vj in support:
            if i + j >= n_max:
                break
            e6[i + j] += vi * vj
    e12 = _polysquare_trunc(e6, n_max)
    e24 = _polysquare_trunc(e12, n_max)
    return [0] + e24


_TAU_TABLE = [0]


def _tau(n: int) -> int:
    global _TAU_TABLE
    n = abs(int(n))
    if n < 1:
        raise ValueError("tau is indexed from 1")
    if n >= len(_TAU_TABLE):
        _TAU_TABLE = ramanujan_tau(max(n, 2 * (len(_TAU_TABLE) - 1), 128))
    return _TAU_TABLE[n]


# ---------------------------------------------------------------------------
# Satake parameters and Schur evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SatakeData:
    """Per-prime Satake parameter multiset, unitary normalization."""

    form: str
    p: int
    alphas: tuple
    normalization: str = "unitary"

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        prod = np.prod(self.alphas)
        if abs(prod - 1.0) > 1e-12:
            raise ValueError("Satake parameters must multiply to 1, got %s" % prod)


def satake_gl2(p: int) -> SatakeData:
    """{alpha_p, 1/alpha_p} for Delta: alpha + 1/alpha = tau(p)/p^{11/2}.

    The discriminant is negative throughout the Deligne range, giving a
    conjugate pair on the unit circle; a real reciprocal pair would be
    returned if the bound ever failed.
    """
    lam = _tau(p) / float(p) ** 5.5
    disc = lam * lam - 4.0
    if disc < 0.0:
        a = complex(lam / 2.0, math.sqrt(-disc) / 2.0)
        a /= abs(a)  # |alpha| = 1 exactly
        alphas = (a, a.conjugate())
    else:
        r = (lam + math.sqrt(disc)) / 2.0
        alphas = (r, 1.0 / r)
    return SatakeData(form="delta", p=p, alphas=alphas)


def satake_sym2(p: int) -> SatakeData:
    a = satake_gl2(p).alphas[0]
    return SatakeData(form="sym2delta", p=p, alphas=(a * a, 1.0, (a * a).conjugate()))


def _complete_homogeneous(xs, kmax: int):
    # h_0..h_kmax for the multiset xs, one geometric factor at a time
    h = [0j] * (kmax + 1)
    h[0] = 1.0 + 0j
    for x in xs:
        for k in range(1, kmax + 1):
            h[k] += x * h[k - 1]
    return h


def _schur_jacobi_trudi(parts, xs):
    ell = len(parts)
    if ell == 0:
        return 1.0 + 0j
    kmax = parts[0] + ell
    h = _complete_homogeneous(xs, kmax)

    def hh(k):
        return h[k] if 0 <= k <= kmax else (1.0 + 0j if k == 0 else 0j)

    m = np.array([[hh(parts[i] - (i + 1) + (j + 1)) for j in range(ell)]
                  for i in range(ell)], dtype=complex)
    return complex(np.linalg.det(m))


def schur_coefficient(partition, satake: SatakeData) -> complex:
    """Schur polynomial s_partition on the Satake multiset.

    Bialternant ratio normally; near-degenerate parameter pairs switch to the
    Jacobi-Trudi determinant (no error surfaces either way).
    """
    xs = satake.alphas
    n = len(xs)
    parts = tuple(int(m) for m in partition)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)) or any(m < 0 for m in parts):
        raise ValueError("partition must be nonincreasing and nonnegative")
    parts = parts + (0,) * (n - len(parts))
    if len(parts) > n:
        if any(parts[n:]):
            return 0j  # more rows than variables
        parts = parts[:n]
    if not any(parts):
        return 1.0 + 0j

    sep = min(abs(xs[i] - xs[j]) for i in range(n) for j in range(i + 1, n))
    if sep < 1e-4:
        return _schur_jacobi_trudi(tuple(p for p in parts if p), xs)
    x = np.array(xs, dtype=complex)
    exps = np.array([parts[j] + n - 1 - j for j in range(n)])
    num = np.linalg.det(x[:, None] ** exps[None, :])
    den = np.prod([x[i] - x[j] for i in range(n) for j in range(i + 1, n)])
    return complex(num / den)


@lru_cache(maxsize=None)
def _sym2_block(p: int, e1: int, e2: int) -> float:
    v = schur_coefficient((e1 + e2, e2, 0), satake_sym2(p))
    if abs(v.imag) > 1e-9 * (1.0 + abs(v)):
        raise ArithmeticError("symmetric-square block came out non-real at p=%d" % p)
    return v.real


def sym2_coefficient(k1: int, k2: int) -> float:
    """a_{k1,k2} of the symmetric-square lift of Delta (Hecke-normalized).

    Per prime p with p-parts (e1, e2), the block is the Schur value
    s_{(e1+e2, e2, 0)} on {alpha_p^2, 1, alpha_p^{-2}}; blocks multiply.
    """
    k1, k2 = abs(int(k1)), abs(int(k2))
    if k1 == 0 or k2 == 0:
        raise ValueError("coefficient indices must be nonzero")
    out = 1.0
    fac = dict(factorize(k1))
    for p, e2 in factorize(k2):
        fac[p] = (fac.get(p, 0), e2)
    for p, e in fac.items():
        e1, e2 = e if isinstance(e, tuple) else (e, 0)
        out *= _sym2_block(p, e1, e2)
    return out


def _weyl_dim_gl3(parts) -> int:
    a, b, c = parts
    return (a - b + 1) * (b - c + 1) * (a - c + 2) // 2


# ---------------------------------------------------------------------------
# normalization and tables
# ---------------------------------------------------------------------------

def a_to_c(a, k, params: ArchParams):
    """c_k = a_k / prod_j (sgn k_j)^{delta_1+..+delta_j} |k_j|^{lambda_1+..+lambda_j}."""
    if len(k) != params.n - 1:
        raise ValueError("index tuple must have n-1 entries")
    lam_part = 0j
    del_part = 0
    denom = complex(1.0)
    for j, kj in enumerate(k):
        kj = int(kj)
        if kj == 0:
            raise ValueError("zero index component (cuspidal expansion has none)")
        lam_part += params.lam[j]
        del_part += params.delta[j]
        f = np.exp(lam_part * math.log(abs(kj)))
        if kj < 0 and del_part % 2:
            f = -f
        denom *= f
    return a / denom


def c_to_a(c, k, params: ArchParams):
    return c / a_to_c(1.0, k, params)


@dataclass
class CoefficientTable:
    """Sign-insensitive coefficient store keyed by |index| tuples."""

    values: Dict[Tuple[int, ...], complex] = field(default_factory=dict)
    normalization: str = "hecke"  # "hecke" for a_k, "distribution" for c_k

    def put(self, k, v):
        self.values[tuple(abs(int(x)) for x in k)] = v

    def get(self, k):
        return self.values[tuple(abs(int(x)) for x in k)]

    def __len__(self):
        return len(self.values)

    def export_csv(self, path):
        width = max((len(k) for k in self.values), default=0)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["normalization", self.normalization])
            w.writerow(["k%d" % (i + 1) for i in range(width)] + ["re", "im"])
            for k in sorted(self.values):
                v = complex(self.values[k])
                w.writerow(list(k) + [repr(v.real), repr(v.imag)])

    @classmethod
    def import_csv(cls, path):
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if len(rows) < 2 or rows[0][0] != "normalization":
            raise ValueError("not a coefficient table CSV")
        tab = cls(normalization=rows[0][1])
        for row in rows[2:]:
            if not row:
                continue
            k = tuple(int(x) for x in row[:-2])
            v = complex(float(row[-2]), float(row[-1]))
            tab.values[k] = v.real if v.imag == 0.0 else v
        return tab


# ---------------------------------------------------------------------------
# shipped forms
# ---------------------------------------------------------------------------

class DeltaForm:
    """Discriminant cusp form on GL(2), a_r = tau(|r|)/|r|^{11/2}."""

    label = "delta"
    n = 2

    def __init__(self):
        self.params = ArchParams(lam=(-5.5, 5.5), delta=(0, 0), singular=True)

    def coefficient(self, r: int) -> float:
        r = abs(int(r))
        if r == 0:
            raise ValueError("coefficient indices must be nonzero")
        return _tau(r) / float(r) ** 5.5

    def coefficient_bound(self, r: int) -> float:
        # Deligne: |a_r| <= d(r); the float division is the only noise
        return 4e-16 * self._divisor_count(abs(int(r)))

    @staticmethod
    def _divisor_count(r):
        return int(np.prod([e + 1 for _, e in factorize(r)])) if r > 1 else 1

    def table(self, r_max: int) -> CoefficientTable:
        t = CoefficientTable()
        for r in range(1, r_max + 1):
            t.put((r,), self.coefficient(r))
        return t


class Sym2DeltaForm:
    """Symmetric-square lift of Delta to GL(3); self-dual, so the two index
    orientations of the double Fourier expansion agree."""

    label = "sym2delta"
    n = 3

    def __init__(self):
        self.params = ArchParams(lam=(-11, 0, 11), delta=(0, 1, 1), singular=True)

    def coefficient(self, k1: int, k2: int) -> float:
        return sym2_coefficient(k1, k2)

    def coefficient_bound(self, k1: int, k2: int) -> float:
        # each prime block is a sum of dim-many unit-modulus monomials
        bound = 1.0
        fac = dict(factorize(abs(int(k1))))
        for p, e2 in factorize(abs(int(k2))):
            fac[p] = (fac.get(p, 0), e2)
        for p, e in fac.items():
            e1, e2 = e if isinstance(e, tuple) else (e, 0)
            bound *= _weyl_dim_gl3((e1 + e2, e2, 0))
        return 1e-15 * bound

    def table(self, k_max: int) -> CoefficientTable:
        t = CoefficientTable()
        for k1 in range(1, k_max + 1):
            for k2 in range(1, k_max + 1):
                t.put((k1, k2), self.coefficient(k1, k2))
        return t


FORMS = {"delta": DeltaForm, "sym2delta": Sym2DeltaForm}
