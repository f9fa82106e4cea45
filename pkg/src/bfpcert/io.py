"""Text and JSON file formats.

Chirotope file::

    <n> <r>
    <C(n,r) characters over + - 0, lexicographic sorted-subset order>

Configuration file::

    <n> <r>
    <r rationals "p/q" separated by spaces>      (n lines, one per point)

Certificate file: a JSON object with ``n``, ``r``, ``chirotope_digest``,
``inequalities`` and ``equations``; each constraint entry records the
pair ``(tau, lambda)`` it comes from, which ``side`` of the pair is meant
and its ``multiplicity``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from pathlib import Path

from .biquadratic import SIDES_EQ, SIDES_INEQ, NormalizedPair, make_constraint
from .certify import BfpCertificate
from .chirotope import SIGN_CHARS, Chirotope, VectorConfiguration
from .exceptions import InputError, ParseError


def _header(lines, path):
    if not lines or not lines[0].strip():
        raise ParseError("missing header '<n> <r>'", 1, 1, path)
    parts = lines[0].split()
    if len(parts) != 2:
        raise ParseError(f"header must be '<n> <r>', got {lines[0]!r}", 1, 1, path)
    vals = []
    col = 1
    for p in parts:
        col = lines[0].index(p, col - 1) + 1
        try:
            vals.append(int(p))
        except ValueError:
            raise ParseError(f"expected an integer, got {p!r}", 1, col, path) from None
    n, r = vals
    if not 2 <= r <= n:
        raise ParseError(f"need 2 <= r <= n, got n={n} r={r}", 1, 1, path)
    return n, r


def parse_chirotope(text: str, path=None) -> Chirotope:
    lines = text.splitlines()
    n, r = _header(lines, path)
    if len(lines) < 2:
        raise ParseError("missing sign line", 2, 1, path)
    signs = lines[1].strip()
    for col, ch in enumerate(signs, 1):
        if ch not in SIGN_CHARS:
            raise ParseError(f"bad sign character {ch!r}", 2, col, path)
    if len(signs) != comb(n, r):
        raise ParseError(f"expected {comb(n, r)} signs, got {len(signs)}", 2, len(signs) + 1, path)
    if any(l.strip() for l in lines[2:]):
        extra = next(i for i, l in enumerate(lines[2:], 3) if l.strip())
        raise ParseError("unexpected content after sign line", extra, 1, path)
    try:
        return Chirotope.from_sign_string(n, r, signs)
    except InputError as exc:
        raise ParseError(str(exc), 2, 1, path) from None


def parse_configuration(text: str, path=None) -> VectorConfiguration:
    lines = [l for l in text.splitlines()]
    n, r = _header(lines, path)
    body = [(i, l) for i, l in enumerate(lines[1:], 2) if l.strip()]
    if len(body) != n:
        raise ParseError(f"expected {n} point lines, got {len(body)}", len(lines) + 1, 1, path)
    cols = []
    for lineno, line in body:
        toks = line.split()
        if len(toks) != r:
            raise ParseError(f"expected {r} coordinates, got {len(toks)}", lineno, 1, path)
        coords = []
        pos = 0
        for tok in toks:
            pos = line.index(tok, pos)
            try:
                coords.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {tok!r}", lineno, pos + 1, path) from None
            pos += len(tok)
        cols.append(coords)
    return VectorConfiguration.from_columns(cols)


def load_chirotope(path) -> Chirotope:
    """Read a chirotope file, or a configuration file (converted exactly)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(path)) from None
    lines = text.splitlines()
    if len(lines) >= 2 and len(lines[1].split()) > 1:
        try:
            return Chirotope.from_configuration(parse_configuration(text, str(path)))
        except ParseError:
            raise
        except InputError as exc:
            raise ParseError(str(exc), 2, 1, str(path)) from None
    return parse_chirotope(text, str(path))


def format_chirotope(chi: Chirotope) -> str:
    return f"{chi.n} {chi.r}\n{chi.sign_string()}\n"


def format_configuration(config: VectorConfiguration) -> str:
    lines = [f"{config.n} {config.r}"]
    for col in config.columns:
        lines.append(" ".join(f"{x.numerator}/{x.denominator}" for x in col))
    return "\n".join(lines) + "\n"


# -- certificates -------------------------------------------------------------


def _entry(con, mult):
    return {
        "tau": list(con.origin.tau),
        "lambda": list(con.origin.lam),
        "side": con.side,
        "multiplicity": mult,
    }


def certificate_to_dict(cert: BfpCertificate) -> dict:
    return {
        "n": cert.n,
        "r": cert.r,
        "chirotope_digest": cert.chirotope_digest,
        "inequalities": [_entry(c, m) for c, m in cert.inequalities],
        "equations": [_entry(c, m) for c, m in cert.equations],
    }


def certificate_to_json(cert: BfpCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2, sort_keys=True) + "\n"


def _constraint(entry, allowed, what):
    try:
        tau = tuple(int(x) for x in entry["tau"])
        lam = tuple(int(x) for x in entry["lambda"])
        side = entry["side"]
        mult = entry["multiplicity"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {what} entry {entry!r}: {exc}") from None
    if side not in allowed:
        raise InputError(f"{what} side must be one of {allowed}, got {side!r}")
    if len(lam) != 4 or len(set(tau + lam)) != len(tau) + 4:
        raise InputError(f"{what} entry needs distinct tau and a 4-element lambda: {entry!r}")
    if not isinstance(mult, int) or isinstance(mult, bool):
        raise InputError(f"multiplicity must be an integer: {entry!r}")
    pair = NormalizedPair(tau, lam, None, None, None)
    return make_constraint(pair, side), mult


def certificate_from_dict(d: dict) -> BfpCertificate:
    try:
        ineqs = [_constraint(e, SIDES_INEQ, "inequality") for e in d.get("inequalities", [])]
        eqs = [_constraint(e, SIDES_EQ, "equation") for e in d.get("equations", [])]
    except AttributeError:
        raise InputError("certificate must be a JSON object") from None
    return BfpCertificate(
        ineqs, eqs, chirotope_digest=d.get("chirotope_digest"), n=d.get("n"), r=d.get("r")
    )


def load_certificate(path) -> BfpCertificate:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(path)) from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, str(path)) from None
    if not isinstance(d, dict):
        raise ParseError("certificate must be a JSON object", 1, 1, str(path))
    return certificate_from_dict(d)
