"""Acceptance gate.

One test per shipped guarantee; every comparison is exact (integers and
Fractions, never floats).  These are intentionally end-to-end: they use
the same entry points a user would.
"""

import math
from fractions import Fraction

import pytest

from psi_ehrhart.cache_store import HEADER
from psi_ehrhart.cli import main
from psi_ehrhart.ehrhart_geom import (
    HPolytope,
    InsideOutPolytope,
    builtin_fixture,
    ehrhart_interpolate,
    lattice_count_insideout,
    product_insideout,
    verify_triangulation,
)
from psi_ehrhart.exact_arith import (
    from_fstar,
    poly_eval,
    poly_from_coeffs,
    poly_shift,
    to_fstar,
)
from psi_ehrhart.intersection_core import (
    PsiKey,
    dilaton_step,
    psi_intersection,
    string_step,
    virasoro_step,
)
from psi_ehrhart.lvalue_poly import (
    enumerate_dvectors,
    fstar_of_shifted,
    l_polynomial,
)

F = Fraction


def test_criterion_01_one_point_closed_form(capsys):
    # psi --g g --d (3g-2) prints 1/(24^g g!) for g = 1..20
    for g in range(1, 21):
        assert main(["psi", "--g", str(g), "--d", str(3 * g - 2)]) == 0
        out = capsys.readouterr().out.strip()
        assert Fraction(out) == F(1, 24**g * math.factorial(g))


def test_criterion_02_base_polynomials():
    assert l_polynomial((1,)).poly == poly_from_coeffs([-3, 6])
    assert l_polynomial((1, 1)).poly == poly_from_coeffs([0, -18, 36])
    assert l_polynomial((2,)).poly == poly_from_coeffs([15, -36, 36])


def test_criterion_03_fstar_vectors():
    assert fstar_of_shifted((0,)) == (1,)
    assert fstar_of_shifted((1,)) == (3, 6)
    assert fstar_of_shifted((1, 1)) == (18, 90, 72)
    assert fstar_of_shifted((2,)) == (15, 72, 72)


def _scan_range():
    for d in enumerate_dvectors(6, 4):
        rec = l_polynomial(d)
        for g in range(rec.shift_m + 1, rec.shift_m + sum(d) + 3):
            yield rec, g


def test_criterion_04_dual_route_oracle():
    pairs = 0
    for rec, g in _scan_range():
        completion = 3 * g - 2 + len(rec.d) - sum(rec.d)
        assert completion >= 0
        numeric = (24**g * math.factorial(g) * rec.normalizer
                   * psi_intersection(g, rec.d + (completion,)))
        assert poly_eval(rec.poly, g) == numeric, (rec.d, g)
        pairs += 1
    assert pairs > 400


def test_criterion_05_leading_coefficient_is_volume():
    for d in enumerate_dvectors(6, 4):
        rec = l_polynomial(d)
        assert rec.poly, d
        assert rec.poly[-1] == 6**sum(d)
        assert len(rec.poly) - 1 == sum(d)


def test_criterion_06_fstar_nonnegative_and_violations_exit_3(
        tmp_path, capsys, isolated_memos):
    for d in enumerate_dvectors(6, 4):
        fstar = fstar_of_shifted(d)
        assert all(isinstance(f, int) or f.denominator == 1 for f in fstar)
        assert all(f >= 0 for f in fstar), d
    # a violated invariant must surface as exit code 3: plant a wrong
    # polynomial through the cache and let the scan catch it
    poisoned = tmp_path / "poisoned.cache"
    poisoned.write_text(f"{HEADER}\nLPOLY d=1 m=0 c=0;6\n")
    code = main(["--cache", str(poisoned), "scan",
                 "--max-total", "1", "--max-parts", "1"])
    captured = capsys.readouterr()
    assert code == 3
    assert "d=(1)" in captured.err or "(1,)" in captured.err


def test_criterion_07_fixture_counts_match_polynomials():
    for name in ("P1", "P1t", "P11", "P11t", "P2", "P2t"):
        fx = builtin_fixture(name)
        rec = l_polynomial(fx.d)
        for g in range(1, 9):
            count = lattice_count_insideout(fx.insideout, g)
            assert fx.multiplier * count == poly_eval(rec.poly, g + rec.shift_m), \
                (name, g)


def test_criterion_08_triangulations_verified():
    expected = {"P1": (3, 6), "P11": (18, 90, 72), "P2t": (5, 24, 24)}
    for name, fstar in expected.items():
        fx = builtin_fixture(name)
        report = verify_triangulation(fx.complex, fx.insideout, 6)
        assert report.fstar == fstar
        assert report.verified_dilates == 6


def test_criterion_09_simplex_interpolation():
    simplex = InsideOutPolytope(
        HPolytope((((1, 1), 1), ((-1, 0), 0), ((0, -1), 0)), 2))
    counts = [lattice_count_insideout(simplex, g) for g in (1, 2, 3)]
    assert counts == [3, 6, 10]
    poly = ehrhart_interpolate(lambda g: lattice_count_insideout(simplex, g), 2)
    assert poly == poly_from_coeffs([1, F(3, 2), F(1, 2)])


def test_criterion_10_property_suites():
    # permutation symmetry
    for d in ((2, 1, 0), (3, 0, 1), (1, 1, 2)):
        assert psi_intersection(1, d) == psi_intersection(1, tuple(sorted(d)))
    # dimension vanishing
    for g in range(0, 4):
        for n in range(1, 4):
            target = 3 * g - 3 + n
            for total in range(0, target + 3):
                if total == target:
                    continue
                d = (total,) + (0,) * (n - 1)
                assert psi_intersection(g, d) == 0
    # path independence: all applicable reductions agree on every key with
    # n <= 4 and sum(d) <= 9
    keys = 0
    for g in range(0, 5):
        for n in range(1, 5):
            total = 3 * g - 3 + n
            if total < 0 or total > 9:
                continue
            for d in _partitions_into(total, n):
                key = PsiKey(g, d)
                reference = psi_intersection(key)
                if 2 * g - 2 + (n - 1) > 0:
                    if 0 in d:
                        assert string_step(key) == reference
                    if 1 in d:
                        assert dilaton_step(key) == reference
                for i, e in enumerate(key.exponents):
                    if e >= 2:
                        assert virasoro_step(key, i) == reference
                keys += 1
    assert keys >= 50
    # f* round trip
    for fstar in ((1,), (3, 6), (18, 90, 72), (0, 0, 5), (2, 0, 0, 7)):
        assert to_fstar(from_fstar(fstar)) == tuple(
            fstar[:len(fstar) - _trailing_zeros(fstar)])
    # product rule: counts of a product are products of counts
    a = builtin_fixture("P1t").insideout
    b = builtin_fixture("P1").insideout
    prod = product_insideout(a, b)
    for g in range(1, 7):
        assert (lattice_count_insideout(prod, g)
                == lattice_count_insideout(a, g) * lattice_count_insideout(b, g))
    # shift rule: poly_shift evaluates the original at the offset argument
    for coeffs in ([-3, 6], [15, -36, 36], [0, 0, 0, 216]):
        p = poly_from_coeffs(coeffs)
        for k in (-2, -1, 1, 3):
            q = poly_shift(p, k)
            for g in range(-3, 4):
                assert poly_eval(q, g) == poly_eval(p, g + k)


def _partitions_into(total, n):
    def rec(remaining, parts, cap):
        if parts == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            for rest in rec(remaining - first, parts - 1, first):
                yield (first,) + rest

    yield from rec(total, n, total)


def _trailing_zeros(seq):
    count = 0
    for value in reversed(seq):
        if value != 0:
            break
        count += 1
    return count
