"""Exact modular arithmetic, additive characters on Q/Z, divisor chains, and
hyper-Kloosterman sums."""

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np


class NoInverseError(ValueError):
    """Raised when an inverse mod m does not exist; carries the offending gcd."""

    def __init__(self, x: int, m: int, gcd: int):
        super().__init__("no inverse of %d mod %d (gcd=%d)" % (x, m, gcd))
        self.x = x
        self.m = m
        self.gcd = gcd


class ChainError(ValueError):
    pass


def mod_inverse(x: int, m: int) -> int:
    """Inverse of x mod m, as a residue in [0, m). m = 1 returns 0."""
    if m < 1:
        raise ValueError("modulus must be positive, got %d" % m)
    if m == 1:
        return 0
    g = math.gcd(x, m)
    if g != 1:
        raise NoInverseError(x, m, g)
    return pow(x, -1, m)


class RationalPhase:
    """The value e(num/den) = exp(2*pi*i*num/den), kept as an exact reduced
    fraction mod 1 so equal phases compare (and hash) exactly."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int):
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(num, den)
        num //= g
        den //= g
        self.num = num % den
        self.den = den

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "RationalPhase":
        return cls(fr.numerator, fr.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other: "RationalPhase") -> "RationalPhase":
        # e(u)e(v) = e(u+v)
        return RationalPhase(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    def conjugate(self) -> "RationalPhase":
        return RationalPhase(-self.num, self.den)

    def __pow__(self, k: int) -> "RationalPhase":
        return RationalPhase(self.num * k, self.den)

    def value(self) -> complex:
        t = 2.0 * math.pi * self.num / self.den
        return complex(math.cos(t), math.sin(t))

    def __eq__(self, other):
        return (isinstance(other, RationalPhase)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "RationalPhase(%d, %d)" % (self.num, self.den)


ONE_PHASE = RationalPhase(0, 1)


def kahan_sum(terms) -> complex:
    """Compensated summation in the iteration order of `terms`."""
    s = 0j
    c = 0j
    for t in terms:
        y = t - c
        tmp = s + y
        c = (tmp - s) - y
        s = tmp
    return s


class DivisorChain:
    """A tuple (d_1,...,d_{n-2}) with d_j | q*c_1...c_j/(d_1...d_{j-1}),
    carried together with its context (q, c)."""

    __slots__ = ("entries", "q", "c")

    def __init__(self, entries: Sequence[int], q: int, c: Sequence[int]):
        self.entries = tuple(int(d) for d in entries)
        self.q = int(q)
        self.c = tuple(int(x) for x in c)
        self._validate()

    def _validate(self):
        if self.q < 1:
            raise ChainError("q must be positive")
        if len(self.entries) != len(self.c):
            raise ChainError("chain length %d != len(c) %d"
                             % (len(self.entries), len(self.c)))
        if any(x == 0 for x in self.c):
            raise ChainError("c entries must be nonzero")
        if any(d < 1 for d in self.entries):
            raise ChainError("chain entries must be positive")
        num = self.q
        for j, d in enumerate(self.entries):
            num *= abs(self.c[j])
            den = 1
            for dd in self.entries[:j]:
                den *= dd
            if (num % (den * d)) != 0:
                raise ChainError("d_%d=%d does not divide %d" % (j + 1, d, num // den))

    def moduli(self) -> Tuple[int, ...]:
        """Intermediate moduli M_j = q*|c_1...c_j|/(d_1...d_j)."""
        out = []
        num = self.q
        den = 1
        for j, d in enumerate(self.entries):
            num *= abs(self.c[j])
            den *= d
            out.append(num // den)
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, DivisorChain) and self.entries == other.entries
                and self.q == other.q and self.c == other.c)

    def __hash__(self):
        return hash((self.entries, self.q, self.c))

    def __repr__(self):
        return "DivisorChain(%r, q=%d, c=%r)" % (self.entries, self.q, self.c)


def _divisors(n: int) -> List[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    out.sort()
    return out


def divisor_chains(q: int, c: Sequence[int]) -> List[DivisorChain]:
    """All chains (d_1,...,d_{n-2}) with d_j | q*|c_1...c_j|/(d_1...d_{j-1}),
    in lexicographic order. Signs of c are ignored for divisibility."""
    if q < 1:
        raise ValueError("q must be positive")
    c = tuple(int(x) for x in c)
    if any(x == 0 for x in c):
        raise ValueError("c entries must be nonzero")
    chains: List[Tuple[int, ...]] = [()]
    num = q
    den = 1
    for cj in c:
        num *= abs(cj)
        nxt = []
        for prefix in chains:
            den = 1
            for dd in prefix:
                den *= dd
            for d in _divisors(num // den):
                nxt.append(prefix + (d,))
        chains = nxt
    return [DivisorChain(entries, q, c) for entries in sorted(chains)]


def hyperkloosterman(a: int, b: int, q: int, chain: DivisorChain) -> complex:
    """The (n-1)-dimensional hyper-Kloosterman sum S(a,b;q,c,d).

    Sum over x_j in (Z/M_j Z)^* for j <= n-2, with M_j = q*c_1...c_j/(d_1...d_j),
    of e(d_1 x_1 a/q + sum_j d_j x_j xbar_{j-1}/M_{j-1} + b xbar_{n-2}/M_{n-2});
    xbar_j is the inverse of x_j mod M_j. The empty chain (n=2) degenerates to
    e(ab/q). Phases are accumulated as exact fractions; the final reduction is
    compensated, over unit tuples in ascending order.
    """
    if chain.q != q:
        raise ChainError("chain context q=%d does not match q=%d" % (chain.q, q))
    d = chain.entries
    if not d:
        return RationalPhase(a * b, q).value()
    M = chain.moduli()
    k = len(d)

    # precompute unit lists and inverses per level
    units = []
    for Mj in M:
        if Mj == 1:
            units.append([(0, 0)])
        else:
            units.append([(x, pow(x, -1, Mj)) for x in range(1, Mj)
                          if math.gcd(x, Mj) == 1])

    terms = []

    def rec(j: int, prev_inv: int, acc: Fraction):
        for x, xinv in units[j]:
            if j == 0:
                ph = acc + Fraction(d[0] * x * a, q)
            else:
                ph = acc + Fraction(d[j] * x * prev_inv, M[j - 1])
            if j == k - 1:
                total = ph + Fraction(b * xinv, M[k - 1])
                terms.append(RationalPhase.from_fraction(total).value())
            else:
                rec(j + 1, xinv, ph)

    rec(0, 0, Fraction(0))
    return kahan_sum(terms)


def kloosterman_classical(a: int, b: int, q: int) -> complex:
    """Kl(a,b;q) = sum over x in (Z/qZ)^* of e((ax + b*xbar)/q), direct loop."""
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return 1 + 0j
    terms = []
    for x in range(1, q):
        if math.gcd(x, q) != 1:
            continue
        xinv = pow(x, -1, q)
        terms.append(RationalPhase(a * x + b * xinv, q).value())
    return kahan_sum(terms)


def kloosterman_all(q: int) -> np.ndarray:
    """Table T[a,b] = Kl(a,b;q) for all a,b in [0,q), via root-table gather and
    a matrix product over the unit group. Independent of hyperkloosterman_n3_all."""
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    xs = np.array([x for x in range(1, max(q, 2)) if math.gcd(x, q) == 1]
                  or [0], dtype=np.int64)
    if q == 1:
        return np.ones((1, 1), dtype=complex)
    xinvs = np.array([pow(int(x), -1, q) for x in xs], dtype=np.int64)
    ab = np.arange(q, dtype=np.int64)
    A = roots[(ab[:, None] * xs[None, :]) % q]
    B = roots[(ab[:, None] * xinvs[None, :]) % q]
    return A @ B.T


def hyperkloosterman_n3_all(q: int) -> np.ndarray:
    """Table S[a,b] of the n=3, c=d=(1) hyper-Kloosterman sums for all residues,
    via a length-q DFT over the unit group (a different algorithm than
    kloosterman_all, kept as a cross-check route)."""
    if q == 1:
        return np.ones((1, 1), dtype=complex)
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    ys = np.array([y for y in range(1, q) if math.gcd(y, q) == 1], dtype=np.int64)
    yinvs = np.array([pow(int(y), -1, q) for y in ys], dtype=np.int64)
    V = np.zeros((q, q), dtype=complex)
    ab = np.arange(q, dtype=np.int64)
    V[:, ys] = roots[(ab[:, None] * yinvs[None, :]) % q]
    # S[a,b] = sum_y V[a,y] e(by/q) = q * ifft(V)[a,b]
    return np.fft.ifft(V, axis=1) * q


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def mobius(n: int) -> int:
    m = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        m = -m
    return m


def factorize(n: int) -> List[Tuple[int, int]]:
    """Prime factorization by trial division, [(p, e), ...] with p ascending."""
    if n < 1:
        raise ValueError("factorize wants n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def coprime_lift(residue: int, q: int, modulus: int) -> int:
    """Smallest nonnegative t = residue (mod q) with gcd(t, modulus) = 1."""
    t = residue % q if q > 1 else 1
    if t == 0:
        t = q
    bound = t + 4 * q * max(modulus, 1) + q
    while t < bound:
        if math.gcd(t, modulus) == 1:
            return t
        t += q
    raise ArithmeticError("no unit lift of %d mod %d coprime to %d"
                          % (residue, q, modulus))
