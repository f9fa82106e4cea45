"""Biquadratic inequalities and equations derived from 3-term GP relations.

For a pair ``(tau, lam)`` the six ordered brackets are::

    A = (tau, l1, l2)   B = (tau, l3, l4)
    C = (tau, l1, l3)   D = (tau, l2, l4)
    E = (tau, l1, l4)   F = (tau, l2, l3)

and the relation reads ``[A][B] - [C][D] + [E][F] = 0``.  A pair is
chi-normalized when all three products have nonnegative chirotope sign,
which makes ``[C][D]`` the dominant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .chirotope import Chirotope, gp_pairs, permutation_parity
from .exceptions import NoNormalization, RepeatedIndex


@dataclass(frozen=True, order=True)
class Bracket:
    """A bracket variable in normal form: sorted subset plus orientation."""

    subset: tuple[int, ...]
    orientation: int = 1

    def __str__(self):
        s = "[" + " ".join(map(str, self.subset)) + "]"
        return s if self.orientation > 0 else "-" + s


def bracket_normal_form(tup: Sequence[int]) -> Bracket:
    if len(set(tup)) != len(tup):
        raise RepeatedIndex(f"repeated index in bracket {tuple(tup)}")
    return Bracket(tuple(sorted(tup)), permutation_parity(tup))


def _six(tau, lam):
    t = tuple(tau)
    l1, l2, l3, l4 = lam
    return (
        t + (l1, l2),
        t + (l3, l4),
        t + (l1, l3),
        t + (l2, l4),
        t + (l1, l4),
        t + (l2, l3),
    )


@dataclass(frozen=True)
class NormalizedPair:
    tau: tuple[int, ...]
    lam: tuple[int, int, int, int]
    a: int
    c: int
    e: int

    @property
    def brackets(self):
        """Ordered tuples ``(A, B, C, D, E, F)``."""
        return _six(self.tau, self.lam)

    A = property(lambda self: self.brackets[0])
    B = property(lambda self: self.brackets[1])
    C = property(lambda self: self.brackets[2])
    D = property(lambda self: self.brackets[3])
    E = property(lambda self: self.brackets[4])
    F = property(lambda self: self.brackets[5])


def term_signs(chi: Chirotope, tau, lam) -> tuple[int, int, int]:
    A, B, C, D, E, F = _six(tau, lam)
    ev = chi.evaluate
    return ev(A) * ev(B), ev(C) * ev(D), ev(E) * ev(F)


def normalized_pairs(chi: Chirotope, tau: Sequence[int], lam: Sequence[int]):
    """Every chi-normalized ordering of ``lam``, lexicographically."""
    tau = tuple(sorted(tau))
    base = tuple(sorted(lam))
    if len(set(tau) | set(base)) != len(tau) + 4:
        raise RepeatedIndex(f"tau={tau} and lambda={base} must be disjoint and distinct")
    for perm in permutations(base):
        a, c, e = term_signs(chi, tau, perm)
        if a >= 0 and c >= 0 and e >= 0:
            yield NormalizedPair(tau, perm, a, c, e)


def normalize_pair(chi: Chirotope, tau: Sequence[int], lam: Sequence[int]) -> NormalizedPair:
    """Permute ``lam`` so that all three term products are nonnegative.

    The lexicographically least qualifying permutation of ``sorted(lam)``
    is returned.
    """
    pair = next(normalized_pairs(chi, tau, lam), None)
    if pair is None:
        raise NoNormalization(f"no permutation of {sorted(lam)} normalizes tau={tuple(sorted(tau))}")
    return pair


SIDES_INEQ = ("AB<CD", "EF<CD")
SIDES_EQ = ("AB=CD", "EF=CD")


@dataclass(frozen=True)
class _Constraint:
    lhs: tuple[Bracket, Bracket]
    rhs: tuple[Bracket, Bracket]
    origin: NormalizedPair
    side: str

    @property
    def lhs_subsets(self):
        return tuple(sorted(b.subset for b in self.lhs))

    @property
    def rhs_subsets(self):
        return tuple(sorted(b.subset for b in self.rhs))

    @property
    def lhs_orientation(self) -> int:
        return self.lhs[0].orientation * self.lhs[1].orientation

    @property
    def rhs_orientation(self) -> int:
        return self.rhs[0].orientation * self.rhs[1].orientation


@dataclass(frozen=True)
class BiquadraticInequality(_Constraint):
    @property
    def key(self):
        return ("<", self.lhs_subsets, self.rhs_subsets)

    def __str__(self):
        return f"{self.lhs[0]}{self.lhs[1]} < {self.rhs[0]}{self.rhs[1]}"


@dataclass(frozen=True)
class BiquadraticEquation(_Constraint):
    @property
    def key(self):
        return ("=",) + tuple(sorted((self.lhs_subsets, self.rhs_subsets)))

    def __str__(self):
        return f"{self.lhs[0]}{self.lhs[1]} = {self.rhs[0]}{self.rhs[1]}"


def _pair(brackets, names):
    idx = "ABCDEF"
    return tuple(bracket_normal_form(brackets[idx.index(ch)]) for ch in names)


def make_constraint(pair: NormalizedPair, side: str):
    """Build the constraint named by ``side`` (e.g. ``"EF<CD"``) from ``pair``."""
    br = pair.brackets
    left, right = side[:2], side[3:]
    cls = BiquadraticInequality if side[2] == "<" else BiquadraticEquation
    if side not in SIDES_INEQ + SIDES_EQ:
        raise ValueError(f"unknown side {side!r}")
    return cls(_pair(br, left), _pair(br, right), pair, side)


def pair_constraints(pair: NormalizedPair):
    """Constraints contributed by one normalized pair.

    Every emitted constraint references only brackets that are nonzero
    under the chirotope.
    """
    out = []
    a, c, e = pair.a, pair.c, pair.e
    if c == 0:
        return out
    if a > 0 and e > 0:
        out.append(make_constraint(pair, "AB<CD"))
        out.append(make_constraint(pair, "EF<CD"))
    elif a == 0 and e > 0:
        out.append(make_constraint(pair, "EF=CD"))
    elif e == 0 and a > 0:
        out.append(make_constraint(pair, "AB=CD"))
    return out


@dataclass
class BiquadraticSystem:
    chi: Chirotope
    inequalities: list[BiquadraticInequality]
    equations: list[BiquadraticEquation]

    def __post_init__(self):
        self._by_key = {}
        for con in self.inequalities + self.equations:
            self._by_key.setdefault(con.key, con)

    def lookup(self, con):
        """Member of the system with the same bracket subsets, or ``None``."""
        return self._by_key.get(con.key)

    def __contains__(self, con) -> bool:
        return con.key in self._by_key

    def constraints(self):
        return self.inequalities + self.equations

    def dump(self) -> str:
        lines = []
        for con in self.inequalities:
            lines.append("INEQ " + _fmt(con.lhs) + " < " + _fmt(con.rhs))
        for con in self.equations:
            lines.append("EQ " + _fmt(con.lhs) + " = " + _fmt(con.rhs))
        return "\n".join(lines) + ("\n" if lines else "")


def _fmt(pair):
    return "".join("[" + ",".join(map(str, b.subset)) + "]" for b in pair)


def enumerate_system(chi: Chirotope) -> BiquadraticSystem:
    ineqs, eqs = [], []
    for tau, lam in gp_pairs(chi.n, chi.r):
        pair = normalize_pair(chi, tau, lam)
        for con in pair_constraints(pair):
            (ineqs if isinstance(con, BiquadraticInequality) else eqs).append(con)
    return BiquadraticSystem(chi, ineqs, eqs)


def constraint_for_subsets(chi: Chirotope, tau, lam, lhs_subsets, rhs_subsets, strict: bool):
    """The biquadratic constraint on ``(tau, set(lam))`` with the given sides.

    All normalized orderings of ``lam`` are tried, so an equation is found
    in whichever orientation is asked for.  Returns ``None`` if the pair
    yields no such constraint.
    """
    want_l = tuple(sorted(tuple(sorted(s)) for s in lhs_subsets))
    want_r = tuple(sorted(tuple(sorted(s)) for s in rhs_subsets))
    for pair in normalized_pairs(chi, tau, lam):
        for con in pair_constraints(pair):
            if isinstance(con, BiquadraticInequality) != strict:
                continue
            if con.lhs_subsets == want_l and con.rhs_subsets == want_r:
                return con
    return None
