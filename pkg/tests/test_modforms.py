import math
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from glvoronoi.mellin import ArchParams
from glvoronoi.modforms import (
    FORMS,
    CoefficientTable,
    DeltaForm,
    SatakeData,
    Sym2DeltaForm,
    a_to_c,
    c_to_a,
    eta_coefficients,
    ramanujan_tau,
    satake_gl2,
    satake_sym2,
    schur_coefficient,
    sym2_coefficient,
)


def _delta_q_expansion_naive(n_terms):
    """q prod_k (1-q^k)^24 by direct binomial products, exact ints."""
    binom24 = [math.comb(24, j) * (-1) ** j for j in range(25)]
    poly = [0] * n_terms
    poly[0] = 1
    for k in range(1, n_terms):
        nxt = [0] * n_terms
        for j, bj in enumerate(binom24):
            off = k * j
            if off >= n_terms:
                break
            if bj == 0:
                continue
            for i in range(n_terms - off):
                if poly[i]:
                    nxt[i + off] += bj * poly[i]
        poly = nxt
    # tau(n) is the coefficient of q^n in q * prod
    return [0] + poly[: n_terms - 1]


def test_eta_coefficients_pentagonal():
    cs = eta_coefficients(60)
    nonzero = {i: c for i, c in enumerate(cs) if c}
    # generalized pentagonal numbers k(3k-1)/2 with sign (-1)^k
    want = {}
    for k in range(-7, 8):
        idx = k * (3 * k - 1) // 2
        if 0 <= idx < 60:
            want[idx] = (-1) ** k
    assert nonzero == want


def test_tau_against_naive_expansion():
    n = 400
    want = _delta_q_expansion_naive(n + 1)
    got = ramanujan_tau(n)
    assert got[1 : n + 1] == want[1 : n + 1]


def test_tau_textbook_values():
    t = ramanujan_tau(10)
    assert t[1:7] == [1, -24, 252, -1472, 4830, -6048]
    assert t[10] == -115920


def test_tau_hecke_relations_exact():
    t = ramanujan_tau(2600)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        assert t[p * p] == t[p] * t[p] - p**11, p
        if 2 * p <= 2600 and p != 2:
            assert t[2 * p] == t[2] * t[p], p


def test_tau_691_congruence():
    # tau(n) = sigma_11(n) mod 691
    t = ramanujan_tau(200)
    for n in range(1, 201):
        s11 = sum(d**11 for d in range(1, n + 1) if n % d == 0)
        assert (t[n] - s11) % 691 == 0, n


def test_satake_gl2_basic():
    for p in (2, 3, 5, 97):
        sat = satake_gl2(p)
        assert sat.p == p
        a, b = sat.alphas
        assert abs(a * b - 1) < 1e-12
        t = ramanujan_tau(p)
        assert abs((a + b).real - t[p] / p**5.5) < 1e-12
        assert abs((a + b).imag) < 1e-12
        # Deligne bound: unit circle
        assert abs(abs(a) - 1.0) < 1e-12


def test_satake_validation():
    with pytest.raises(ValueError):
        SatakeData("x", 2, (2.0 + 0j, 0.7 + 0j))


def test_satake_sym2():
    sat = satake_sym2(3)
    a2, one, a2c = sat.alphas
    assert one == 1
    assert abs(a2 * a2c - 1) < 1e-12
    g = satake_gl2(3).alphas[0]
    assert abs(a2 - g * g) < 1e-12


def _schur_brute(partition, alphas):
    # monomial expansion over semistandard tableaux is overkill; use the
    # generating definition: sum over monomials x^mu weighted by Kostka
    # numbers equals the sum over SSYT, which for small shapes we can
    # enumerate directly
    n = len(alphas)
    shape = [p for p in partition if p > 0]
    if not shape:
        return 1 + 0j
    rows = len(shape)
    if rows > n:
        return 0j
    cells = [(r, c) for r in range(rows) for c in range(shape[r])]

    def fills(idx, tab):
        if idx == len(cells):
            yield tab
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, tab[(r, c - 1)])        # weakly increasing rows
        if r > 0:
            lo = max(lo, tab[(r - 1, c)] + 1)    # strictly increasing cols
        for v in range(lo, n + 1):
            tab2 = dict(tab)
            tab2[(r, c)] = v
            yield from fills(idx + 1, tab2)

    total = 0j
    for tab in fills(0, {}):
        term = 1 + 0j
        for v in tab.values():
            term *= alphas[v - 1]
        total += term
    return total


def test_schur_against_tableau_enumeration():
    sat = satake_sym2(2)
    for part in [(1,), (2,), (1, 1), (2, 1), (3,), (2, 2), (3, 1), (2, 2, 1)]:
        got = schur_coefficient(part, sat)
        want = _schur_brute(part, sat.alphas)
        assert abs(got - want) < 1e-9, part
    sat2 = satake_gl2(5)
    for part in [(1,), (4,), (3, 2)]:
        got = schur_coefficient(part, sat2)
        want = _schur_brute(part, sat2.alphas)
        assert abs(got - want) < 1e-10, part


def test_schur_single_row_is_complete_homogeneous():
    sat = satake_gl2(3)
    a, b = sat.alphas
    for k in range(1, 6):
        hk = sum(a**i * b**(k - i) for i in range(k + 1))
        assert abs(schur_coefficient((k,), sat) - hk) < 1e-10, k


def test_schur_edge_cases():
    sat = satake_gl2(2)
    assert schur_coefficient((), sat) == 1 + 0j
    assert schur_coefficient((0, 0), sat) == 1 + 0j
    assert schur_coefficient((1, 1, 1), sat) == 0j   # more rows than parameters
    with pytest.raises(ValueError):
        schur_coefficient((1, 2), sat)
    with pytest.raises(ValueError):
        schur_coefficient((2, -1), sat)


def test_sym2_known_value():
    # a(1,2) = tau(4)/2^11
    assert abs(sym2_coefficient(1, 2) - (-1472.0 / 2048.0)) < 1e-12
    assert abs(sym2_coefficient(1, 1) - 1.0) < 1e-12


def test_sym2_symmetry_and_reality():
    for k1, k2 in [(1, 2), (2, 3), (4, 6), (5, 5), (12, 1)]:
        v = sym2_coefficient(k1, k2)
        w = sym2_coefficient(k2, k1)
        assert abs(v - w) < 1e-10
        assert abs(complex(v).imag) < 1e-10


def test_sym2_multiplicative():
    # coprime index pairs factor
    for (a1, a2), (b1, b2) in [((2, 1), (3, 1)), ((1, 2), (9, 1)),
                               ((4, 1), (1, 5)), ((2, 2), (5, 3))]:
        lhs = sym2_coefficient(a1 * b1, a2 * b2)
        rhs = sym2_coefficient(a1, a2) * sym2_coefficient(b1, b2)
        assert abs(lhs - rhs) < 1e-10


@given(st.integers(1, 40), st.integers(1, 40))
@settings(deadline=None, max_examples=30)
def test_sym2_symmetry_property(k1, k2):
    assert abs(sym2_coefficient(k1, k2) - sym2_coefficient(k2, k1)) < 1e-9


def test_a_to_c_roundtrip():
    p = ArchParams((1.0, 0.0, -1.0), (0, 0, 0), singular=True)
    c = a_to_c(12.0, (2, 3), p)
    assert abs(c - 2.0) < 1e-12
    back = c_to_a(c, (2, 3), p)
    assert abs(back - 12.0) < 1e-11
    with pytest.raises(ValueError):
        a_to_c(1.0, (0, 3), p)


def test_coefficient_table_roundtrip(tmp_path):
    t = CoefficientTable(normalization="hecke")
    t.put((2, 3), 1.5 + 0.25j)
    t.put((-4, 1), -0.75 + 0j)
    assert t.get((2, 3)) == 1.5 + 0.25j
    assert t.get((-2, 3)) == 1.5 + 0.25j      # keys are absolute values
    assert t.get((4, 1)) == -0.75 + 0j
    with pytest.raises(KeyError):
        t.get((5, 7))
    path = tmp_path / "coeffs.csv"
    t.export_csv(path)
    t2 = CoefficientTable.import_csv(path)
    assert t2.normalization == "hecke"
    assert t2.values == t.values


def test_delta_form_contract():
    form = DeltaForm()
    assert form.label == "delta"
    assert form.n == 2
    t = ramanujan_tau(10)
    for r in (1, 2, -2, 7):
        want = t[abs(r)] / abs(r) ** 5.5
        got = form.coefficient(r)
        assert abs(got - want) < 1e-12
    # rounding-noise bound: tiny, positive, grows with divisor count
    assert 0 < form.coefficient_bound(1) < 1e-12
    assert form.coefficient_bound(12) > form.coefficient_bound(7)
    with pytest.raises(ValueError):
        form.coefficient(0)
    assert form.params.n == 2


def test_sym2_form_contract():
    form = Sym2DeltaForm()
    assert form.n == 3
    assert abs(form.coefficient(2, 1) - sym2_coefficient(2, 1)) < 1e-14
    for k in [(1, 1), (3, 2), (10, 7)]:
        assert 0 < form.coefficient_bound(*k) < 1e-10
    assert form.params.lam == (-11.0, 0.0, 11.0)
    assert form.params.delta == (0, 1, 1)


def test_forms_registry():
    assert set(FORMS) == {"delta", "sym2delta"}
    assert FORMS["delta"]().n == 2
    assert FORMS["sym2delta"]().n == 3
