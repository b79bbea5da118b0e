"""Command handlers shared by the CLI and the HTTP service.

Each handler returns a JSON-compatible dict; render_plain turns the same
payload into the single- or multi-line plain-text form.  Rationals are
encoded as exact "num/den" strings, f*-vectors as integer arrays, so
both output modes carry identical values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .ehrhart_geom import builtin_fixture, lattice_count_insideout, verify_triangulation
from .errors import DomainError, InconsistencyError
from .exact_arith import poly_eval, poly_render, poly_shift
from .intersection_core import KappaPsiMonomial, kappa_reduce, psi_intersection
from .lvalue_poly import breuer_check, fstar_gcd, l_polynomial, scan


def _fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _coeff_strs(poly) -> list:
    return [_fraction_str(Fraction(c)) for c in poly]


def _fstar_str(fstar: Iterable[int]) -> str:
    return "(" + ",".join(str(f) for f in fstar) + ")"


def _d_label(d: Sequence[int]) -> str:
    return "(" + ",".join(str(e) for e in d) + ")"


def run_psi(genus: int, d: Sequence[int]) -> dict:
    value = psi_intersection(genus, tuple(d))
    return {
        "command": "psi",
        "genus": genus,
        "d": list(d),
        "value": _fraction_str(value),
    }


def run_kappa(genus: int, kappa: Sequence[int], d: Sequence[int]) -> dict:
    mono = KappaPsiMonomial(genus, tuple(kappa), tuple(d))
    value = kappa_reduce(mono)
    return {
        "command": "kappa",
        "genus": genus,
        "kappa": list(mono.kappa_exponents),
        "d": list(mono.psi_exponents),
        "value": _fraction_str(value),
    }


def _record_payload(rec) -> dict:
    lead = int(rec.poly[-1]) if rec.poly else 0
    return {
        "d": list(rec.d),
        "coefficients": _coeff_strs(rec.poly),
        "rendered": poly_render(rec.poly),
        "fstar": [int(f) for f in rec.fstar],
        "m": rec.shift_m,
        "C": rec.normalizer,
        "lead": lead,
        "gcd": fstar_gcd(rec.fstar),
    }


def run_lpoly(d: Sequence[int]) -> dict:
    payload = _record_payload(l_polynomial(tuple(d)))
    payload["command"] = "lpoly"
    return payload


def run_fstar(d: Sequence[int]) -> dict:
    rec = l_polynomial(tuple(d))
    verdict = breuer_check(poly_shift(rec.poly, rec.shift_m))
    return {
        "command": "fstar",
        "d": list(rec.d),
        "fstar": [int(f) for f in rec.fstar],
        "m": rec.shift_m,
        "gcd": fstar_gcd(rec.fstar),
        "verdict": verdict.kind,
        "negative_index": verdict.negative_index,
    }


def run_scan(max_total: int, max_parts: int) -> dict:
    records = scan(max_total, max_parts)
    return {
        "command": "scan",
        "max_total": max_total,
        "max_parts": max_parts,
        "count": len(records),
        "records": [_record_payload(rec) for rec in records],
    }


def run_count(fixture: str, g: int) -> dict:
    fx = builtin_fixture(fixture)
    count = lattice_count_insideout(fx.insideout, g)
    rec = l_polynomial(fx.d)
    lvalue = poly_eval(rec.poly, g + rec.shift_m)
    if fx.multiplier * count != lvalue:
        raise InconsistencyError(
            f"{fixture}: {fx.multiplier} * {count} != "
            f"L_{_d_label(fx.d)}({g + rec.shift_m}) = {lvalue}")
    return {
        "command": "count",
        "fixture": fixture,
        "g": g,
        "count": count,
        "multiplier": fx.multiplier,
        "d": list(fx.d),
        "m": rec.shift_m,
        "lvalue": int(lvalue),
    }


def run_interpolate(fixture: str) -> dict:
    from .ehrhart_geom import ehrhart_interpolate  # local to keep imports light
    fx = builtin_fixture(fixture)
    dim = fx.insideout.polytope.dim
    counts = [lattice_count_insideout(fx.insideout, g) for g in range(1, dim + 3)]
    poly = ehrhart_interpolate(lambda g: lattice_count_insideout(fx.insideout, g), dim)
    return {
        "command": "interpolate",
        "fixture": fixture,
        "dim": dim,
        "counts": counts,
        "coefficients": _coeff_strs(poly),
        "rendered": poly_render(poly),
    }


def run_verify(fixture: str, gmax: int) -> dict:
    fx = builtin_fixture(fixture)
    if fx.complex is None:
        raise DomainError(f"fixture {fixture} ships no triangulation")
    report = verify_triangulation(fx.complex, fx.insideout, gmax)
    rec = l_polynomial(fx.d)
    for g in range(1, gmax + 1):
        count = lattice_count_insideout(fx.insideout, g)
        lvalue = poly_eval(rec.poly, g + rec.shift_m)
        if fx.multiplier * count != lvalue:
            raise InconsistencyError(
                f"{fixture}: {fx.multiplier} * {count} != "
                f"L_{_d_label(fx.d)}({g + rec.shift_m}) = {lvalue}")
    return {
        "command": "verify",
        "fixture": fixture,
        "gmax": gmax,
        "fstar": list(report.fstar),
        "verified_dilates": report.verified_dilates,
        "d": list(fx.d),
        "multiplier": fx.multiplier,
    }


def _plain_record(payload: dict) -> str:
    return (f"{payload['rendered']} ; fstar={_fstar_str(payload['fstar'])} ; "
            f"m={payload['m']} ; C={payload['C']} ; lead={payload['lead']}")


def render_plain(payload: dict) -> str:
    command = payload["command"]
    if command in ("psi", "kappa"):
        value = Fraction(payload["value"])
        return str(value)
    if command == "lpoly":
        return _plain_record(payload)
    if command == "fstar":
        text = (f"fstar={_fstar_str(payload['fstar'])} ; m={payload['m']} ; "
                f"verdict={payload['verdict']}")
        if payload["negative_index"] is not None:
            text += f" ; negative_index={payload['negative_index']}"
        return text
    if command == "scan":
        lines = [f"d={_d_label(r['d'])} ; {_plain_record(r)} ; gcd={r['gcd']}"
                 for r in payload["records"]]
        lines.append(f"scanned {payload['count']} d-vectors, all invariants hold")
        return "\n".join(lines)
    if command == "count":
        label = f"L_{_d_label(payload['d'])}({payload['g'] + payload['m']})"
        if payload["multiplier"] == 1:
            return f"{payload['count']} (= {label})"
        return f"{payload['count']} (= {label}/{payload['multiplier']})"
    if command == "interpolate":
        return payload["rendered"]
    if command == "verify":
        return (f"fstar={_fstar_str(payload['fstar'])} ; "
                f"triangulation verified to g={payload['verified_dilates']} ; "
                f"L-identity verified to g={payload['gmax']}")
    raise DomainError(f"unknown command {command!r}")
