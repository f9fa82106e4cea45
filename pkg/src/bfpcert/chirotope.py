"""Exact chirotopes: construction, evaluation and axiom checks.

A chirotope of rank ``r`` on ``{1..n}`` is stored as its sign table over
sorted ``r``-subsets in lexicographic order.  Evaluation on arbitrary
ordered tuples uses the alternating extension of that table.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exceptions import (
    AllZero,
    BadCharacter,
    IndexOutOfRange,
    InputError,
    LengthMismatch,
    RankDeficient,
)

SIGN_CHARS = {"+": 1, "-": -1, "−": -1, "0": 0}
_SIGN_OUT = {1: "+", -1: "-", 0: "0"}


def sign(x) -> int:
    return (x > 0) - (x < 0)


def permutation_parity(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries)."""
    s = 1
    k = len(seq)
    for i in range(k):
        si = seq[i]
        for j in range(i + 1, k):
            if si > seq[j]:
                s = -s
    return s


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [list(map(Fraction, row)) for row in rows]
    k = len(m)
    result = Fraction(1)
    for col in range(k):
        piv = next((i for i in range(col, k) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for i in range(col + 1, k):
            if m[i][col] != 0:
                factor = m[i][col] / p
                row_i, row_c = m[i], m[col]
                for j in range(col, k):
                    row_i[j] -= factor * row_c[j]
    return result


@dataclass(frozen=True)
class VectorConfiguration:
    """``n`` column vectors in ``Q^r`` with exact rational coordinates."""

    r: int
    n: int
    columns: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(Fraction(x) for x in col) for col in self.columns)
        if len(cols) != self.n:
            raise LengthMismatch(f"expected {self.n} columns, got {len(cols)}")
        for i, col in enumerate(cols, 1):
            if len(col) != self.r:
                raise LengthMismatch(f"column {i} has {len(col)} coordinates, expected {self.r}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable]) -> "VectorConfiguration":
        cols = [tuple(Fraction(x) for x in c) for c in columns]
        if not cols:
            raise LengthMismatch("empty configuration")
        return cls(r=len(cols[0]), n=len(cols), columns=tuple(cols))

    def bracket(self, indices: Sequence[int]) -> Fraction:
        """Determinant of the columns at the given 1-based indices, in order."""
        for i in indices:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"index {i} outside 1..{self.n}")
        # rows of the r x r matrix whose columns are the selected vectors
        return det([[self.columns[i - 1][row] for i in indices] for row in range(self.r)])


@dataclass(frozen=True)
class Chirotope:
    """Sign table of a rank-``r`` chirotope on ``{1..n}``.

    ``signs`` lists ``chi`` over sorted ``r``-subsets in lexicographic order.
    Instances are immutable; :meth:`evaluate` gives the alternating extension.
    """

    n: int
    r: int
    signs: tuple[int, ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not 2 <= self.r <= self.n:
            raise InputError(f"need 2 <= r <= n, got n={self.n} r={self.r}")
        signs = tuple(int(s) for s in self.signs)
        expected = comb(self.n, self.r)
        if len(signs) != expected:
            raise LengthMismatch(
                f"sign table has {len(signs)} entries, C({self.n},{self.r}) = {expected}"
            )
        if any(s not in (-1, 0, 1) for s in signs):
            raise BadCharacter("signs must be -1, 0 or +1")
        if not any(signs):
            raise AllZero("chirotope is identically zero")
        object.__setattr__(self, "signs", signs)
        table = dict(zip(combinations(range(1, self.n + 1), self.r), signs))
        object.__setattr__(self, "_table", table)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_sign_string(cls, n: int, r: int, text: str) -> "Chirotope":
        """Parse ``C(n, r)`` characters over ``+ - 0`` (no axiom check)."""
        expected = comb(n, r)
        if len(text) != expected:
            raise LengthMismatch(f"sign string has length {len(text)}, C({n},{r}) = {expected}")
        try:
            signs = tuple(SIGN_CHARS[ch] for ch in text)
        except KeyError as exc:
            pos = text.index(exc.args[0]) + 1
            raise BadCharacter(f"bad sign character {exc.args[0]!r} at position {pos}") from None
        return cls(n=n, r=r, signs=signs)

    @classmethod
    def from_configuration(cls, config: VectorConfiguration) -> "Chirotope":
        n, r = config.n, config.r
        if r > n:
            raise RankDeficient(f"rank {r} exceeds point count {n}")
        signs = tuple(sign(config.bracket(s)) for s in combinations(range(1, n + 1), r))
        if not any(signs):
            raise RankDeficient("every r-subset of columns is dependent")
        return cls(n=n, r=r, signs=signs)

    # -- queries -----------------------------------------------------------

    def evaluate(self, tup: Sequence[int]) -> int:
        """Alternating evaluation on an ordered ``r``-tuple of elements."""
        if len(tup) != self.r:
            raise LengthMismatch(f"expected {self.r} indices, got {len(tup)}")
        for i in tup:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"index {i} outside 1..{self.n}")
        s = sorted(tup)
        for i in range(1, len(s)):
            if s[i] == s[i - 1]:
                return 0
        return permutation_parity(tup) * self._table[tuple(s)]

    __call__ = evaluate

    def sign_of_subset(self, subset: Sequence[int]) -> int:
        """Stored sign of an already-sorted subset."""
        return self._table[tuple(subset)]

    def is_uniform(self) -> bool:
        return all(self.signs)

    @property
    def ground_set(self) -> range:
        return range(1, self.n + 1)

    def bases(self) -> list[tuple[int, ...]]:
        return [s for s, v in self._table.items() if v]

    def items(self):
        return self._table.items()

    def sign_string(self) -> str:
        return "".join(_SIGN_OUT[s] for s in self.signs)

    def digest(self) -> str:
        """SHA-256 over the canonical text form ``"<n> <r>\\n<signs>\\n"``."""
        canon = f"{self.n} {self.r}\n{self.sign_string()}\n"
        return hashlib.sha256(canon.encode("ascii")).hexdigest()

    def with_sign(self, subset: Sequence[int], value: int) -> "Chirotope":
        """Copy with one stored sign replaced (used to build mutations)."""
        key = tuple(sorted(subset))
        signs = tuple(value if s == key else v for s, v in self._table.items())
        return Chirotope(self.n, self.r, signs)

    def relabel(self, perm: Sequence[int]) -> "Chirotope":
        """Chirotope ``chi'(p(i1),...,p(ir)) = chi(i1,...,ir)``; ``perm[i-1] = p(i)``."""
        inv = {p: i + 1 for i, p in enumerate(perm)}
        signs = tuple(
            self.evaluate([inv[x] for x in s]) for s in combinations(range(1, self.n + 1), self.r)
        )
        return Chirotope(self.n, self.r, signs)

    def __str__(self):
        return f"Chirotope(n={self.n}, r={self.r}, {self.sign_string()})"


def is_uniform(chi: Chirotope) -> bool:
    return chi.is_uniform()


# -- axiom checks ------------------------------------------------------------


@dataclass
class AxiomReport:
    alternating_ok: bool = True
    nonzero_ok: bool = True
    exchange_ok: bool = True
    gp_ok: bool = True
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.alternating_ok and self.nonzero_ok and self.exchange_ok and self.gp_ok

    def summary(self) -> str:
        lines = [
            f"alternating: {'ok' if self.alternating_ok else 'FAIL'}",
            f"nonzero:     {'ok' if self.nonzero_ok else 'FAIL'}",
            f"exchange:    {'ok' if self.exchange_ok else 'FAIL'}",
            f"gp:          {'ok' if self.gp_ok else 'FAIL'}",
        ]
        for v in self.violations[:20]:
            lines.append(f"  violation: {v}")
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)


def gp_term_signs(chi: Chirotope, tau: Sequence[int], lam: Sequence[int]) -> tuple[int, int, int]:
    """Signs ``(a, c, e)`` of the three products in the 3-term GP relation."""
    t = tuple(tau)
    l1, l2, l3, l4 = lam
    ev = chi.evaluate
    a = ev(t + (l1, l2)) * ev(t + (l3, l4))
    c = ev(t + (l1, l3)) * ev(t + (l2, l4))
    e = ev(t + (l1, l4)) * ev(t + (l2, l3))
    return a, c, e


def gp_consistent(a: int, c: int, e: int) -> bool:
    """True unless ``(a, -c, e)`` is weakly one-signed with a nonzero entry."""
    terms = (a, -c, e)
    if all(t >= 0 for t in terms) and any(t > 0 for t in terms):
        return False
    if all(t <= 0 for t in terms) and any(t < 0 for t in terms):
        return False
    return True


def gp_pairs(n: int, r: int):
    """All ``(tau, lambda)`` with ``tau`` a sorted ``(r-2)``-subset and ``lambda``
    a sorted 4-subset disjoint from it."""
    ground = range(1, n + 1)
    for tau in combinations(ground, r - 2):
        rest = [x for x in ground if x not in tau]
        for lam in combinations(rest, 4):
            yield tau, lam


def _exchange_violations(chi: Chirotope):
    bases = chi.bases()
    basis_set = set(map(frozenset, bases))
    for b1 in bases:
        s1 = frozenset(b1)
        for b2 in bases:
            s2 = frozenset(b2)
            if s1 == s2:
                continue
            for x in s1 - s2:
                if not any((s1 - {x}) | {y} in basis_set for y in s2 - s1):
                    yield ("exchange", tuple(sorted(s1)), tuple(sorted(s2)), x)


def check_axioms(chi: Chirotope, max_violations: int | None = None) -> AxiomReport:
    """Check non-triviality, basis exchange and every 3-term GP sign condition.

    Failures are collected into the report rather than raised.
    """
    report = AxiomReport()
    if not any(chi.signs):
        report.nonzero_ok = False
        report.violations.append(("nonzero",))
    for v in _exchange_violations(chi):
        report.exchange_ok = False
        report.violations.append(v)
        if max_violations and len(report.violations) >= max_violations:
            break
    for tau, lam in gp_pairs(chi.n, chi.r):
        a, c, e = gp_term_signs(chi, tau, lam)
        if not gp_consistent(a, c, e):
            report.gp_ok = False
            report.violations.append(("gp", tau, lam, (a, c, e)))
            if max_violations and len(report.violations) >= max_violations:
                break
    return report


def moment_curve(n: int, r: int, ts: Sequence | None = None) -> VectorConfiguration:
    """Points ``(1, t, t^2, ..., t^(r-1))``; every ordered bracket is positive."""
    ts = list(range(1, n + 1)) if ts is None else list(ts)
    return VectorConfiguration.from_columns([[Fraction(t) ** k for k in range(r)] for t in ts])
