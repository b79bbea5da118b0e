"""Normalized intersection numbers as integer-valued polynomials.

L_d(g) := 24^g g! C(d) <tau_d tau_D>_g with the completion exponent
D = 3g-2+n-|d| and normalizer C(d) = prod (2d_i+1)!!.  The polynomial is
built by structural recursion on d entirely at the polynomial level:
String and Dilaton forms remove 0 and 1 entries, and a Virasoro form
pivots on the largest entry once all entries are >= 2.  The numeric
psi-recursion never enters the construction; it serves as an independent
oracle in scan() and the test suite.

The shifted polynomial L_d(g + m(d)) with m(d) = ceil((2-n+|d|)/3) - 1
starts its nonvanishing dilates at g = 1; its coordinates over the basis
C(g-1, k) form the f*-vector, which is nonnegative and hence realizable
as the Ehrhart polynomial of a partial polytopal complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial, gcd
from typing import Iterable, Optional, Tuple

from .errors import DomainError, InconsistencyError
from .exact_arith import (
    POLY_ONE,
    POLY_ZERO,
    Poly,
    binomial_poly,
    double_factorial,
    poly_add,
    poly_degree,
    poly_eval,
    poly_mul,
    poly_scale,
    poly_shift,
    to_fstar,
)
from .intersection_core import psi_intersection

DTuple = Tuple[int, ...]


def _canonical(d: Iterable[int]) -> DTuple:
    d = tuple(sorted((int(x) for x in d), reverse=True))
    if d and d[-1] < 0:
        raise DomainError(f"d-vector entries must be >= 0, got {d}")
    return d


def m_shift(d: Iterable[int]) -> int:
    """m(d) = ceil((2 - n + |d|)/3) - 1; the dilate offset that makes
    g = 1 the first dilate with a nonnegative completion exponent."""
    d = _canonical(d)
    return ceil(Fraction(2 - len(d) + sum(d), 3)) - 1


def c_normalizer(d: Iterable[int]) -> int:
    """C(d) = prod (2d_i+1)!!, empty product 1."""
    result = 1
    for e in _canonical(d):
        result *= double_factorial(2 * e + 1)
    return result


@dataclass(frozen=True)
class LPolyRecord:
    """L_d(g) with its derived views: m(d), the f*-vector of the shifted
    polynomial L_d(g+m), and the normalizer C(d)."""
    d: DTuple
    poly: Poly
    shift_m: int
    fstar: tuple
    normalizer: int


_LPOLY_MEMO: dict = {}


def lpoly_memo_items():
    """Snapshot of the polynomial memo as (d, poly) pairs."""
    return list(_LPOLY_MEMO.items())


def lpoly_memo_install(items) -> None:
    for d, poly in items:
        _LPOLY_MEMO[_canonical(d)] = tuple(Fraction(c) for c in poly)


def lpoly_memo_clear() -> None:
    _LPOLY_MEMO.clear()


def _lpoly(d: DTuple) -> Poly:
    """Core polynomial recursion on a canonical (sorted nonincreasing)
    d-vector."""
    cached = _LPOLY_MEMO.get(d)
    if cached is not None:
        return cached
    if not d:
        value = POLY_ONE
    elif d[-1] == 0:
        value = _string_form(d)
    elif d[-1] == 1:
        value = _dilaton_form(d)
    else:
        value = _virasoro_form(d)
    _LPOLY_MEMO[d] = value
    return value


def _string_form(d: DTuple) -> Poly:
    # L_{d' u {0}} = sum_i (2d'_i+1) L_{d' with d'_i - 1} + L_{d'};
    # entries that would drop to -1 contribute the zero polynomial.
    rest = d[:-1]
    total = _lpoly(rest)
    for i, e in enumerate(rest):
        if e == 0:
            continue
        lowered = _canonical(rest[:i] + (e - 1,) + rest[i + 1:])
        total = poly_add(total, poly_scale(_lpoly(lowered), 2 * e + 1))
    return total


def _dilaton_form(d: DTuple) -> Poly:
    # L_{d' u {1}} = (6g - 3 + 3n') L_{d'} with n' = len before appending
    rest = d[:-1]
    return poly_mul((Fraction(3 * len(rest) - 3), Fraction(6)), _lpoly(rest))


def _virasoro_form(d: DTuple) -> Poly:
    """All entries >= 2; pivot on d_1 = d[0].  Four groups:

    T1  sum_i (2d_i+1) L_{d(i)}              (exponent transfer)
    T2  prod_{k=1..d_1} (6g-4+2n-2|d|+2k-1) * L_{d minus pivot}
    T3  12g * sum_{a+b=d_1-2} L_{rest u {a,b}}(g-1)
    T4  sum_{a+b=d_1-2} sum_{I subset rest} (2a+1)!! L_{d_I}(g_1)
            * L_{d_J u {b}}(g-g_1) * C(g, g_1)
        with the constant g_1 = (a+|d_I|+2-|I|)/3, dropped unless that
        is a nonnegative integer with the left factor stable.

    a, b range over ordered pairs; the 1/2 of the underlying recursion
    is already absorbed (T3's 24g -> 12g, T4's completion slot fixed in
    the right factor)."""
    d1, rest = d[0], d[1:]
    n, total = len(d), sum(d)
    k = len(rest)

    acc = POLY_ZERO
    for i, e in enumerate(rest):
        raised = _canonical(rest[:i] + (e + d1 - 1,) + rest[i + 1:])
        acc = poly_add(acc, poly_scale(_lpoly(raised), 2 * e + 1))

    t2 = _lpoly(rest)
    for j in range(1, d1 + 1):
        t2 = poly_mul(t2, (Fraction(2 * n - 2 * total - 5 + 2 * j), Fraction(6)))
    acc = poly_add(acc, t2)

    t3 = POLY_ZERO
    for a in range(d1 - 1):
        b = d1 - 2 - a
        t3 = poly_add(t3, poly_shift(_lpoly(_canonical(rest + (a, b))), -1))
    acc = poly_add(acc, poly_mul((Fraction(0), Fraction(12)), t3))

    for a in range(d1 - 1):
        b = d1 - 2 - a
        w = double_factorial(2 * a + 1)
        for mask in range(1 << k):
            d_i = tuple(rest[j] for j in range(k) if mask >> j & 1)
            d_j = tuple(rest[j] for j in range(k) if not mask >> j & 1)
            num = a + sum(d_i) + 2 - len(d_i)
            if num % 3 or num < 0:
                continue
            g1 = num // 3
            if 2 * g1 - 2 + len(d_i) + 1 <= 0:
                continue
            left = poly_eval(_lpoly(_canonical(d_i)), g1)
            if left == 0:
                continue
            right = poly_shift(_lpoly(_canonical(d_j + (b,))), -g1)
            term = poly_mul(right, binomial_poly(0, g1))
            acc = poly_add(acc, poly_scale(term, w * left))
    return acc


def l_polynomial(d: Iterable[int]) -> LPolyRecord:
    """L_d(g) with m(d), the f*-vector of L_d(g+m), and C(d)."""
    d = _canonical(d)
    poly = _lpoly(d)
    m = m_shift(d)
    return LPolyRecord(
        d=d,
        poly=poly,
        shift_m=m,
        fstar=to_fstar(poly_shift(poly, m)),
        normalizer=c_normalizer(d),
    )


def fstar_of_shifted(d: Iterable[int]) -> tuple:
    """f*-vector of L_d(g + m(d))."""
    d = _canonical(d)
    return to_fstar(poly_shift(_lpoly(d), m_shift(d)))


@dataclass(frozen=True)
class BreuerVerdict:
    """Outcome of Breuer's criterion: an integer-valued polynomial is
    the Ehrhart polynomial of a partial polytopal complex exactly when
    its f*-vector is nonnegative."""
    kind: str  # EhrhartOfPartialComplex | NotIntegerValued | NegativeFStar
    fstar: Optional[tuple] = None
    negative_index: Optional[int] = None


def breuer_check(p: Poly) -> BreuerVerdict:
    try:
        fstar = to_fstar(p)
    except InconsistencyError:
        return BreuerVerdict(kind="NotIntegerValued")
    for i, f in enumerate(fstar):
        if f < 0:
            return BreuerVerdict(kind="NegativeFStar", fstar=fstar, negative_index=i)
    return BreuerVerdict(kind="EhrhartOfPartialComplex", fstar=fstar)


def linear_product_fstar(d: Iterable[int]) -> tuple:
    """f*-vector of the shifted linear product
    prod_{k=1..d_1} (6(g+m) - 4 + 2n - 2|d| + 2k - 1), the exponent-free
    group of the Virasoro form.  Requires every entry >= 2."""
    d = _canonical(d)
    if not d or d[-1] < 2:
        raise DomainError("linear product factor needs all entries >= 2")
    m, n, total = m_shift(d), len(d), sum(d)
    p = POLY_ONE
    for j in range(1, d[0] + 1):
        p = poly_mul(p, (Fraction(6 * m + 2 * n - 2 * total - 5 + 2 * j), Fraction(6)))
    return to_fstar(p)


def fstar_gcd(fstar: Iterable[int]) -> int:
    """gcd of the f*-entries; 0 for an all-zero or empty vector."""
    result = 0
    for f in fstar:
        result = gcd(result, int(f))
    return result


def enumerate_dvectors(max_total: int, max_parts: int):
    """Canonical d-vectors with |d| <= max_total, n <= max_parts, ordered
    by length, then total, then reverse-lexicographically."""
    if max_total < 0:
        raise DomainError("max_total must be >= 0")
    if max_parts < 0:
        raise DomainError("max_parts must be >= 0")

    def partitions(total, parts, cap):
        # nonincreasing sequences of exactly `parts` entries <= cap
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(total, cap), -1, -1):
            for tail in partitions(total - first, parts - 1, first):
                yield (first,) + tail

    for n in range(max_parts + 1):
        for total in range(max_total + 1):
            yield from partitions(total, n, total)


def scan(max_total: int, max_parts: int):
    """Records for every d-vector in range, each validated against the
    structural invariants and the numeric recursion:

    - degree L_d = |d| and leading coefficient 6^{|d|}
    - f*-vector of the shifted polynomial integral and nonnegative
    - polynomial value at the first two legal dilates matches
      24^g g! C(d) <tau_d tau_D>_g computed independently

    Any violation aborts with the offending d-vector."""
    records = []
    for d in enumerate_dvectors(max_total, max_parts):
        rec = l_polynomial(d)
        n, total = len(d), sum(d)
        if poly_degree(rec.poly) != total:
            raise InconsistencyError(
                f"d={d}: degree {poly_degree(rec.poly)} != |d| = {total}")
        if total and rec.poly[-1] != 6 ** total:
            raise InconsistencyError(
                f"d={d}: leading coefficient {rec.poly[-1]} != 6^{total}")
        for i, f in enumerate(rec.fstar):
            if f < 0:
                raise InconsistencyError(
                    f"d={d}: negative f*-entry {f} at index {i}")
        g0 = max(0, rec.shift_m + 1)
        for g in (g0, g0 + 1):
            completion = 3 * g - 2 + n - total
            oracle = (24 ** g * factorial(g) * rec.normalizer
                      * psi_intersection(g, d + (completion,)))
            if poly_eval(rec.poly, g) != oracle:
                raise InconsistencyError(
                    f"d={d}: L(g={g}) = {poly_eval(rec.poly, g)} but the "
                    f"numeric recursion gives {oracle}")
        records.append(rec)
    return records
