"""Exact rational arithmetic and integer-valued polynomial algebra.

A polynomial in g is a tuple of Fractions in the monomial basis,
index k holding the coefficient of g^k, with no trailing zeros;
the zero polynomial is the empty tuple.  Integer-valued polynomials
additionally expand over the binomial basis C(g-1, k) with integer
coordinates (the f*-vector); to_fstar checks this rather than
assuming it.

All functions are pure and all values immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence, Union

from .errors import DomainError, NotIntegerValuedError

Scalar = Union[int, Fraction]
Poly = tuple  # tuple[Fraction, ...]

POLY_ZERO: Poly = ()
POLY_ONE: Poly = (Fraction(1),)


def double_factorial(k: int) -> int:
    """k!! with (-1)!! = 0!! = 1; the empty-product convention for
    (2d-1)!! at d = 0 is load-bearing in the Virasoro coefficients."""
    if k < -1:
        raise DomainError(f"double factorial undefined for {k} < -1")
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def multinomial(total: int, parts: Sequence[int]) -> int:
    """total! / prod(parts!); parts must sum to total exactly."""
    if total < 0 or any(p < 0 for p in parts):
        raise DomainError("multinomial arguments must be nonnegative")
    if sum(parts) != total:
        raise DomainError(f"multinomial parts {list(parts)} do not sum to {total}")
    result = factorial(total)
    for p in parts:
        result //= factorial(p)
    return result


def poly_from_coeffs(coeffs: Iterable[Scalar]) -> Poly:
    """Normalize to Fractions and strip trailing zeros."""
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_degree(p: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return poly_from_coeffs(out)


def poly_scale(p: Poly, c: Scalar) -> Poly:
    c = Fraction(c)
    if c == 0:
        return POLY_ZERO
    return tuple(coeff * c for coeff in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return POLY_ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_from_coeffs(out)


def poly_eval(p: Poly, x: Scalar) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_shift(p: Poly, k: Scalar) -> Poly:
    """q with q(g) = p(g + k)."""
    k = Fraction(k)
    if k == 0 or not p:
        return p
    out = [Fraction(0)] * len(p)
    for j, c in enumerate(p):
        # (g + k)^j expanded by the binomial theorem
        power = Fraction(1)
        for i in range(j, -1, -1):
            out[i] += c * comb(j, i) * power
            power *= k
    return poly_from_coeffs(out)


def binomial_poly(shift: int, k: int) -> Poly:
    """The degree-k polynomial g -> C(g + shift, k)."""
    if k < 0:
        raise DomainError(f"binomial_poly needs k >= 0, got {k}")
    p = POLY_ONE
    for i in range(k):
        p = poly_mul(p, (Fraction(shift - i), Fraction(1)))
    return poly_scale(p, Fraction(1, factorial(k)))


def to_fstar(p: Poly) -> tuple:
    """Coordinates of p over the basis C(g-1, k): f*_k is the k-th
    forward difference of p at g = 1.  Raises if p is not
    integer-valued (equivalently, if any of p(1..deg+1) is not an
    integer)."""
    vals = [poly_eval(p, g) for g in range(1, len(p) + 1)]
    for g, v in zip(range(1, len(p) + 1), vals):
        if v.denominator != 1:
            raise NotIntegerValuedError(
                f"polynomial takes non-integer value {v} at g={g}")
    fstar = []
    while vals:
        fstar.append(int(vals[0]))
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return tuple(fstar)


def from_fstar(fstar: Sequence[int]) -> Poly:
    """Inverse of to_fstar: sum f*_k * C(g-1, k)."""
    p = POLY_ZERO
    for k, f in enumerate(fstar):
        p = poly_add(p, poly_scale(poly_shift(binomial_poly(0, k), -1), f))
    return p


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_render(p: Poly, var: str = "g") -> str:
    """Human form, descending powers: '36*g^2 - 36*g + 15'."""
    if not p:
        return "0"
    pieces = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            body = _render_coeff(abs(c))
        else:
            gpow = var if k == 1 else f"{var}^{k}"
            body = gpow if abs(c) == 1 else f"{_render_coeff(abs(c))}*{gpow}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
