"""Exact psi-class intersection numbers by memoized recursion.

psi_intersection(g, d) evaluates <tau_{d_1} ... tau_{d_n}>_g, the integral
of psi_1^{d_1} ... psi_n^{d_n} over the moduli space of genus-g stable
curves with n marked points.  Degenerate inputs (negative exponent,
unstable (g, n), dimension mismatch sum(d) != 3g-3+n) give 0, never an
error.  Dispatch: genus 0 closed form, one-point closed form, String on a
0-exponent, Dilaton on a 1-exponent, else the Virasoro recursion pivoted
on a largest exponent.  Values are memoized on the canonical
(genus, sorted-nonincreasing exponents) key.

kappa_reduce eliminates kappa-class factors one at a time through the
pushforward identity, terminating in pure psi integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Tuple, Union

from .errors import DomainError
from .exact_arith import double_factorial, multinomial

DTuple = Tuple[int, ...]


def _canonical(exponents: Iterable[int]) -> DTuple:
    return tuple(sorted((int(e) for e in exponents), reverse=True))


@dataclass(frozen=True)
class PsiKey:
    """Canonical index of an intersection number: genus plus the
    exponent multiset, stored sorted nonincreasing."""
    genus: int
    exponents: DTuple

    def __post_init__(self):
        if self.genus < 0:
            raise DomainError(f"genus must be >= 0, got {self.genus}")
        exps = _canonical(self.exponents)
        if exps and exps[-1] < 0:
            raise DomainError(f"exponents must be >= 0, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class KappaPsiMonomial:
    """A monomial kappa_{m_1}...kappa_{m_r} psi_1^{d_1}...psi_n^{d_n} on
    the moduli space of genus-g curves with n marked points.  kappa_0 is
    rejected: substitute kappa_0 = 2g-2+n before constructing."""
    genus: int
    kappa_exponents: DTuple
    psi_exponents: DTuple

    def __post_init__(self):
        if self.genus < 0:
            raise DomainError(f"genus must be >= 0, got {self.genus}")
        kappas = _canonical(self.kappa_exponents)
        if kappas and kappas[-1] < 1:
            raise DomainError(
                "kappa indices must be >= 1; eliminate kappa_0 with the "
                "identity kappa_0 = 2g-2+n before reducing")
        psis = _canonical(self.psi_exponents)
        if psis and psis[-1] < 0:
            raise DomainError(f"psi exponents must be >= 0, got {psis}")
        object.__setattr__(self, "kappa_exponents", kappas)
        object.__setattr__(self, "psi_exponents", psis)


_PSI_MEMO: dict = {}


def psi_memo_items():
    """Snapshot of the memo table as (genus, exponents, value) triples."""
    return [(g, d, v) for (g, d), v in _PSI_MEMO.items()]


def psi_memo_install(items) -> None:
    """Seed the memo table, e.g. from a loaded cache file."""
    for g, d, v in items:
        _PSI_MEMO[(int(g), _canonical(d))] = Fraction(v)


def psi_memo_clear() -> None:
    _PSI_MEMO.clear()


def genus0_closed_form(d: Iterable[int]) -> Fraction:
    """<tau_d>_0 = multinomial(n-3; d); 0 on any degeneracy."""
    d = tuple(int(x) for x in d)
    n = len(d)
    if n < 3 or any(x < 0 for x in d) or sum(d) != n - 3:
        return Fraction(0)
    return Fraction(multinomial(n - 3, d))


def one_point_closed_form(g: int, n: int) -> Fraction:
    """<tau_{3g-3+n} tau_0^{n-1}>_g = 1/(24^g g!) for g >= 1, n >= 1."""
    if g < 1:
        raise DomainError("one-point closed form needs g >= 1 (genus 0 is "
                          "covered by the multinomial formula)")
    if n < 1:
        raise DomainError(f"need n >= 1 marked points, got {n}")
    return Fraction(1, 24 ** g * factorial(g))


def psi_intersection(genus, exponents=None) -> Fraction:
    """<tau_d>_g for the literal insertion list; accepts (g, d) or a
    PsiKey.  All degenerate inputs return 0."""
    if exponents is None:
        if not isinstance(genus, PsiKey):
            raise DomainError("psi_intersection needs (genus, exponents) or a PsiKey")
        genus, exponents = genus.genus, genus.exponents
    g = int(genus)
    d = _canonical(exponents)
    if g < 0 or (d and d[-1] < 0):
        return Fraction(0)
    n = len(d)
    if 2 * g - 2 + n <= 0:
        return Fraction(0)
    if sum(d) != 3 * g - 3 + n:
        return Fraction(0)
    return _psi(g, d)


def _psi(g: int, d: DTuple) -> Fraction:
    """Core dispatch on a stable, dimension-correct, canonical key."""
    key = (g, d)
    cached = _PSI_MEMO.get(key)
    if cached is not None:
        return cached
    if g == 0:
        value = genus0_closed_form(d)
    elif len(d) == 1:
        value = one_point_closed_form(g, 1)
    elif d[-1] == 0:
        value = _string_value(g, d)
    elif d[-1] == 1:
        value = _dilaton_value(g, d)
    else:
        value = _virasoro_value(g, d, 0)
    _PSI_MEMO[key] = value
    return value


def _string_value(g: int, d: DTuple) -> Fraction:
    # d[-1] == 0 since d is sorted; remove that insertion and lower each
    # remaining exponent in turn, dropping the ones that would hit -1.
    rest = d[:-1]
    total = Fraction(0)
    for i, e in enumerate(rest):
        if e == 0:
            continue
        total += psi_intersection(g, rest[:i] + (e - 1,) + rest[i + 1:])
    return total


def _dilaton_value(g: int, d: DTuple) -> Fraction:
    rest = d[:-1]  # d[-1] == 1
    return (2 * g - 2 + len(rest)) * psi_intersection(g, rest)


def _virasoro_value(g: int, d: DTuple, pivot: int) -> Fraction:
    """Virasoro recursion on insertion tau_{m+1} at position pivot,
    m = d[pivot] - 1 >= 1.  Three groups: exponent transfer, genus drop,
    and stable splittings; the latter two carry a global 1/2 and run over
    ordered pairs a + b = m - 1 and ordered splittings."""
    m = d[pivot] - 1
    rest = d[:pivot] + d[pivot + 1:]
    k = len(rest)

    transfer = Fraction(0)
    for i, e in enumerate(rest):
        # (2e+1+2m)!! / (2e-1)!! is exact: both arguments are odd
        coeff = double_factorial(2 * e + 1 + 2 * m) // double_factorial(2 * e - 1)
        transfer += coeff * psi_intersection(g, rest[:i] + (e + m,) + rest[i + 1:])

    genus_drop = Fraction(0)
    splitting = Fraction(0)
    for a in range(m):
        b = m - 1 - a
        w = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
        genus_drop += w * psi_intersection(g - 1, rest + (a, b))
        for mask in range(1 << k):
            left = tuple(rest[i] for i in range(k) if mask >> i & 1)
            right = tuple(rest[i] for i in range(k) if not mask >> i & 1)
            for g1 in range(g + 1):
                lv = psi_intersection(g1, left + (a,))
                if lv == 0:
                    continue
                splitting += w * lv * psi_intersection(g - g1, right + (b,))

    total = transfer + (genus_drop + splitting) / 2
    return total / double_factorial(2 * m + 3)


def string_step(key: PsiKey) -> Fraction:
    """Value of <key> computed by removing one tau_0 insertion.  Valid
    only when the space left after removal is stable; <tau_0^3>_0 has no
    String reduction and is a domain error here (the dispatcher reaches
    it through the genus-0 closed form instead)."""
    if 0 not in key.exponents:
        raise DomainError("String step needs a zero exponent")
    if 2 * key.genus - 2 + (key.n - 1) <= 0:
        raise DomainError("String step needs the reduced space to be stable")
    if sum(key.exponents) != 3 * key.genus - 3 + key.n:
        return Fraction(0)
    return _string_value(key.genus, key.exponents)


def dilaton_step(key: PsiKey) -> Fraction:
    """Value of <key> computed by removing one tau_1 insertion.  Valid
    only when the space left after removal is stable; <tau_1>_1 has no
    Dilaton reduction and is a domain error here (the dispatcher reaches
    it through the one-point closed form instead)."""
    exps = key.exponents
    if 1 not in exps:
        raise DomainError("Dilaton step needs an exponent equal to 1")
    if 2 * key.genus - 2 + (key.n - 1) <= 0:
        raise DomainError("Dilaton step needs the reduced space to be stable")
    if sum(exps) != 3 * key.genus - 3 + key.n:
        return Fraction(0)
    i = exps.index(1)
    rest = exps[:i] + exps[i + 1:]
    return (2 * key.genus - 2 + len(rest)) * psi_intersection(key.genus, rest)


def virasoro_step(key: PsiKey, pivot_index: int) -> Fraction:
    """Value of <key> computed by the Virasoro rule on the given pivot."""
    exps = key.exponents
    if not 0 <= pivot_index < len(exps):
        raise DomainError(f"pivot index {pivot_index} out of range")
    if exps[pivot_index] < 2:
        raise DomainError(f"Virasoro pivot needs exponent >= 2, got {exps[pivot_index]}")
    if sum(exps) != 3 * key.genus - 3 + key.n:
        return Fraction(0)
    return _virasoro_value(key.genus, exps, pivot_index)


def kappa_reduce(mono: Union[KappaPsiMonomial, None] = None, *,
                 genus: Optional[int] = None,
                 kappa_exponents: Iterable[int] = (),
                 psi_exponents: Iterable[int] = ()) -> Fraction:
    """Integral of the kappa/psi monomial over the moduli space, via
    repeated elimination: integrating kappa_{m} Q over n points equals
    integrating psi_{n+1}^{m+1} Q' over n+1 points, where Q' substitutes
    kappa_i -> kappa_i - psi_{n+1}^i in Q.  Degree mismatch gives 0."""
    if mono is None:
        mono = KappaPsiMonomial(genus, tuple(kappa_exponents), tuple(psi_exponents))
    g, kappas, psis = mono.genus, mono.kappa_exponents, mono.psi_exponents
    n = len(psis)
    if sum(kappas) + sum(psis) != 3 * g - 3 + n:
        return Fraction(0)
    return _kappa_value(g, kappas, psis)


def _kappa_value(g: int, kappas: DTuple, psis: DTuple) -> Fraction:
    if not kappas:
        return psi_intersection(g, psis)
    m1, remaining = kappas[0], kappas[1:]
    r = len(remaining)
    total = Fraction(0)
    # expand the product of (kappa_{m_j} - psi_new^{m_j}) over subsets of
    # the remaining kappa factor positions; sign is (-1)^|subset|
    for mask in range(1 << r):
        chosen = [remaining[j] for j in range(r) if mask >> j & 1]
        kept = tuple(remaining[j] for j in range(r) if not mask >> j & 1)
        new_exp = m1 + 1 + sum(chosen)
        sign = -1 if len(chosen) % 2 else 1
        total += sign * _kappa_value(g, kept, _canonical(psis + (new_exp,)))
    return total
