"""Dirichlet characters with exact root-of-unity values.

Characters are built from an explicit generator decomposition of (Z/qZ)^*
(primitive roots at odd prime powers, the {-1, 5} pair at powers of two) and
store their values as exact rational phases, so products of character values
with additive exponentials stay in Q/Z until the final complex conversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Tuple

from .arith import RationalPhase, euler_phi, factorize, kahan_sum

__all__ = [
    "DirichletCharacter",
    "characters_mod",
    "gauss_sum",
    "is_primitive",
    "twist_average",
]


def _primitive_root(p: int, e: int) -> int:
    # smallest primitive root mod p, lifted to p^e if needed
    phi = p - 1
    fac = [f for f, _ in factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // f, p) != 1 for f in fac):
            break
        g += 1
    if e == 1:
        return g
    if pow(g, phi, p * p) == 1:
        g += p
    return g


def _unit_generators(q: int):
    """[(gen lifted mod q, order), ...] generating (Z/qZ)^* as a direct product."""
    gens = []
    parts = factorize(q)
    for p, e in parts:
        pe = p ** e
        rest = q // pe
        # CRT lift: g mod pe, 1 mod rest
        def lift(g):
            if rest == 1:
                return g % q
            inv = pow(pe, -1, rest)
            return (g + pe * ((1 - g) * inv % rest)) % q
        if p == 2:
            if e == 2:
                gens.append((lift(3), 2))
            elif e >= 3:
                gens.append((lift(pe - 1), 2))
                gens.append((lift(5), 2 ** (e - 2)))
            # e == 1 contributes nothing
        else:
            g = _primitive_root(p, e)
            gens.append((lift(g), p ** (e - 1) * (p - 1)))
    return gens


@dataclass(frozen=True)
class DirichletCharacter:
    """Value table character: phases[a] is the exact phase of chi(a) for units,
    absent for non-units.  eta is the parity, chi(-1) = (-1)^eta."""

    modulus: int
    phases: Tuple[Tuple[int, RationalPhase], ...]
    eta: int
    name: str = ""
    _table: Dict[int, RationalPhase] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.phases))

    def phase(self, n: int) -> Optional[RationalPhase]:
        return self._table.get(n % self.modulus)

    def __call__(self, n: int) -> complex:
        ph = self._table.get(n % self.modulus)
        return 0j if ph is None else ph.value()

    @property
    def is_trivial(self) -> bool:
        return all(ph.num == 0 for _, ph in self.phases)

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(
            modulus=self.modulus,
            phases=tuple((a, ph.conjugate()) for a, ph in self.phases),
            eta=self.eta,
            name=self.name + "~" if self.name else "",
        )


def characters_mod(q: int):
    """All phi(q) characters, trivial first, in mixed-radix generator order."""
    if q < 1:
        raise ValueError("modulus must be positive")
    gens = _unit_generators(q)
    orders = [n for _, n in gens]

    # discrete log table: unit residue -> exponent tuple
    dlog = {1 % q: (0,) * len(gens)}
    stack = [(1 % q, (0,) * len(gens))]
    for i, (g, n) in enumerate(gens):
        new = []
        for a, t in dlog.items():
            cur = a
            for k in range(1, n):
                cur = cur * g % q
                tt = t[:i] + (k,) + t[i + 1:]
                new.append((cur, tt))
        dlog.update(new)
    assert len(dlog) == euler_phi(q)

    minus_one = (q - 1) % q
    out = []
    idx = [0] * len(gens)
    total = euler_phi(q)
    for count in range(total):
        phases = []
        for a, t in dlog.items():
            fr = sum((Fraction(idx[i] * t[i], orders[i]) for i in range(len(gens))),
                     Fraction(0))
            phases.append((a, RationalPhase.from_fraction(fr)))
        phases.sort()
        table = dict(phases)
        eta = 0 if q <= 2 or table[minus_one].num == 0 else 1
        out.append(DirichletCharacter(
            modulus=q, phases=tuple(phases), eta=eta,
            name="mod%d#%d" % (q, count)))
        # increment mixed-radix index
        for i in range(len(idx) - 1, -1, -1):
            idx[i] += 1
            if idx[i] < orders[i]:
                break
            idx[i] = 0
    return out


def is_primitive(chi: DirichletCharacter) -> bool:
    """True iff no proper divisor modulus induces chi: chi must be nontrivial
    on every kernel subgroup {a unit : a = 1 mod d}, d | q, d < q."""
    q = chi.modulus
    if q == 1:
        return True
    for d in range(1, q):
        if q % d:
            continue
        trivial_on_kernel = True
        for a in range(1, q, d):
            ph = chi.phase(a)
            if ph is not None and ph.num != 0:
                trivial_on_kernel = False
                break
        if trivial_on_kernel:
            return False
    return True


def gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    vals = []
    for a in range(q):
        ph = chi.phase(a)
        if ph is None:
            continue
        vals.append((ph * RationalPhase(a, q)).value())
    if chi.modulus == 1:
        return 1.0 + 0j
    return kahan_sum(vals)


def twist_average(chi: DirichletCharacter, r: int) -> complex:
    """sum_a chi(a) e(-ra/q); vanishes for gcd(r,q) > 1, and equals
    conj(chi(-r)) * gauss_sum(chi) for primitive chi with gcd(r,q) = 1."""
    q = chi.modulus
    if q == 1:
        return 1.0 + 0j
    vals = []
    for a in range(q):
        ph = chi.phase(a)
        if ph is None:
            continue
        vals.append((ph * RationalPhase(-r * a, q)).value())
    return kahan_sum(vals)
