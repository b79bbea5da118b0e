"""Persistence for the psi-intersection and L-polynomial memo tables.

Plain-text format, UTF-8 with LF endings, one entry per line after the
mandatory header:

    PSIEHRHART-CACHE v1
    PSI g=<genus> d=<d1,d2,...> v=<num>/<den>
    LPOLY d=<d1,...> m=<m> c=<c0;c1;...>

d-vectors are canonical (sorted nonincreasing, empty allowed as 'd='),
keys unique, coefficients ascending by power and serialized as exact
integers or num/den.  A zero-byte file is an empty table; anything else
must start with the header line.  Writers take an advisory exclusive
lock and refuse to proceed when another writer holds it.
"""

from __future__ import annotations

import fcntl
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import CacheFormatError, CacheLockedError, CacheVersionError
from .intersection_core import psi_memo_install, psi_memo_items
from .lvalue_poly import lpoly_memo_install, lpoly_memo_items, m_shift

HEADER = "PSIEHRHART-CACHE v1"
ENV_VAR = "PSI_EHRHART_CACHE"

PsiTable = Dict[Tuple[int, Tuple[int, ...]], Fraction]
LPolyTable = Dict[Tuple[int, ...], tuple]


@dataclass
class CacheTable:
    """In-memory form of a cache file."""
    psi: PsiTable = field(default_factory=dict)
    lpoly: LPolyTable = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.psi) + len(self.lpoly)


@dataclass(frozen=True)
class CacheFile:
    """A written cache: its location and the canonical key -> value map
    it contains."""
    path: str
    entries: Dict[str, str]


def default_cache_path() -> Optional[str]:
    """Cache location from the environment, if configured."""
    return os.environ.get(ENV_VAR) or None


def snapshot() -> CacheTable:
    """Current contents of the live memo tables."""
    table = CacheTable()
    for g, d, v in psi_memo_items():
        table.psi[(g, d)] = v
    for d, poly in lpoly_memo_items():
        table.lpoly[d] = poly
    return table


def install(table: CacheTable) -> None:
    """Seed the live memo tables from a loaded cache."""
    psi_memo_install((g, d, v) for (g, d), v in table.psi.items())
    lpoly_memo_install(table.lpoly.items())


def _fmt_d(d: Tuple[int, ...]) -> str:
    return ",".join(str(e) for e in d)


def _fmt_fraction(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _fmt_coeff(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else _fmt_fraction(c)


def _entry_lines(table: CacheTable):
    for (g, d) in sorted(table.psi):
        yield (f"PSI g={g} d={_fmt_d(d)}",
               f"v={_fmt_fraction(table.psi[(g, d)])}")
    for d in sorted(table.lpoly, key=lambda d: (len(d), d)):
        coeffs = ";".join(_fmt_coeff(c) for c in table.lpoly[d])
        yield f"LPOLY d={_fmt_d(d)}", f"m={m_shift(d)} c={coeffs}"


def save(table: CacheTable, path: str) -> CacheFile:
    """Write the table, replacing any previous contents.  Holds an
    advisory exclusive lock for the duration; a concurrent writer gets
    CacheLockedError instead of a silent last-writer-wins."""
    entries = {}
    lines = [HEADER]
    for key, value in _entry_lines(table):
        if key in entries:
            raise CacheFormatError(0, f"duplicate cache key {key!r}")
        entries[key] = value
        lines.append(f"{key} {value}")
    payload = "\n".join(lines) + "\n"
    with open(path, "a+", encoding="utf-8", newline="\n") as fh:
        try:
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except OSError as exc:
            raise CacheLockedError(
                f"{path}: another process holds the cache write lock") from exc
        try:
            fh.seek(0)
            fh.truncate()
            fh.write(payload)
            fh.flush()
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
    return CacheFile(path=path, entries=entries)


def _parse_d(text: str, lineno: int) -> Tuple[int, ...]:
    if text == "":
        return ()
    try:
        d = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CacheFormatError(lineno, f"bad d-vector {text!r}") from None
    if any(e < 0 for e in d):
        raise CacheFormatError(lineno, f"negative entry in d-vector {text!r}")
    if list(d) != sorted(d, reverse=True):
        raise CacheFormatError(
            lineno, f"d-vector {text!r} is not canonical (sorted nonincreasing)")
    return d


def _take_field(token: str, prefix: str, lineno: int) -> str:
    if not token.startswith(prefix):
        raise CacheFormatError(lineno, f"expected {prefix}<...>, got {token!r}")
    return token[len(prefix):]


def load(path: str) -> CacheTable:
    """Parse a cache file.  Malformed lines report their 1-based line
    number; a nonempty file without the exact header is incompatible."""
    with open(path, encoding="utf-8") as fh:
        raw = fh.read()
    table = CacheTable()
    lines = raw.splitlines()
    if not lines:
        return table
    if lines[0] != HEADER:
        raise CacheVersionError(
            f"{path}: expected header {HEADER!r}, found {lines[0]!r}")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise CacheFormatError(lineno, "blank line")
        tokens = line.split(" ")
        kind = tokens[0]
        if kind == "PSI":
            if len(tokens) != 4:
                raise CacheFormatError(lineno, f"PSI line needs 3 fields, got {line!r}")
            try:
                g = int(_take_field(tokens[1], "g=", lineno))
                d = _parse_d(_take_field(tokens[2], "d=", lineno), lineno)
                v = Fraction(_take_field(tokens[3], "v=", lineno))
            except (ValueError, ZeroDivisionError):
                raise CacheFormatError(lineno, f"bad PSI entry {line!r}") from None
            if g < 0:
                raise CacheFormatError(lineno, f"negative genus in {line!r}")
            if (g, d) in table.psi:
                raise CacheFormatError(lineno, f"duplicate PSI key g={g} d={_fmt_d(d)}")
            table.psi[(g, d)] = v
        elif kind == "LPOLY":
            if len(tokens) != 4:
                raise CacheFormatError(lineno, f"LPOLY line needs 3 fields, got {line!r}")
            d = _parse_d(_take_field(tokens[1], "d=", lineno), lineno)
            try:
                m = int(_take_field(tokens[2], "m=", lineno))
                ctext = _take_field(tokens[3], "c=", lineno)
                coeffs = tuple(Fraction(t) for t in ctext.split(";")) if ctext else ()
            except (ValueError, ZeroDivisionError):
                raise CacheFormatError(lineno, f"bad LPOLY entry {line!r}") from None
            if m != m_shift(d):
                raise CacheFormatError(
                    lineno, f"m={m} inconsistent with d={_fmt_d(d)} "
                    f"(expected {m_shift(d)})")
            if d in table.lpoly:
                raise CacheFormatError(lineno, f"duplicate LPOLY key d={_fmt_d(d)}")
            table.lpoly[d] = coeffs
        else:
            raise CacheFormatError(lineno, f"unknown record type {kind!r}")
    return table
