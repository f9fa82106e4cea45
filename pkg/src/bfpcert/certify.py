"""From non-degenerate cycles to biquadratic final polynomials, and back-checking.

Each pivot ``L+a -> L+b`` of a program ``(chi, f, g)`` is turned into the
GP relation with ``tau = sorted(L)`` and ``lambda = (g, f, a, b)``::

    A = (L,g,f)  B = (L,a,b)  C = (L,g,a)  D = (L,f,b)  E = (L,g,b)  F = (L,f,a)

Along a cycle the brackets ``C, E`` (bases joined with ``g``) and ``D, F``
(bases joined with ``f``) telescope, which is what makes the collected
constraints cancel.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

from .biquadratic import (
    BiquadraticEquation,
    BiquadraticInequality,
    constraint_for_subsets,
    enumerate_system,
)
from .chirotope import Chirotope, gp_consistent
from .exceptions import (
    CancellationFailed,
    NoNormalization,
    TypeClassificationFailed,
    UnlistedPattern,
)
from .omp import (
    NonDegenerateCycle,
    OMProgram,
    Pivot,
    PivotKind,
    affine_bases,
    build_pivot_graph,
    iter_nondegenerate_cycles,
    programs,
)

# (sign of A*B, C, D, E, F) for strictly increasing pivots
UNPRIMED_TYPES = {
    "1": (1, 1, 1, 1, 1),
    "2": (1, 1, 1, 1, -1),
    "3": (1, 1, -1, 1, -1),
    "4": (1, -1, -1, -1, -1),
    "5": (1, -1, -1, -1, 1),
    "6": (1, -1, 1, -1, 1),
    "7": (-1, 1, -1, -1, 1),
    "8": (-1, 1, -1, -1, -1),
    "9": (-1, 1, 1, -1, -1),
    "10": (-1, -1, 1, 1, -1),
    "11": (-1, -1, 1, 1, 1),
    "12": (-1, -1, -1, 1, 1),
}
# degenerate or horizontal pivots: A*B vanishes
PRIMED_TYPES = {
    "1'": (0, 1, 1, 1, 1),
    "2'": (0, 1, 1, -1, -1),
    "3'": (0, 1, -1, 1, -1),
    "4'": (0, 1, -1, -1, 1),
    "5'": (0, -1, 1, 1, -1),
    "6'": (0, -1, 1, -1, 1),
    "7'": (0, -1, -1, 1, 1),
    "8'": (0, -1, -1, -1, -1),
}
GP_TYPES = {**UNPRIMED_TYPES, **PRIMED_TYPES}
_PATTERN_TO_TYPE = {v: k for k, v in GP_TYPES.items()}

# types whose relation yields [E][F] vs [C][D], and [C][D] vs [E][F]
GROUP_EF = frozenset({"1", "4", "7", "10", "1'", "4'", "5'", "8'"})
GROUP_CD = frozenset({"3", "6", "9", "12", "2'", "3'", "6'", "7'"})
TRANSIENT = frozenset({"2", "5", "8", "11"})


def admissible_patterns():
    """Enumerate ``(ab, C, D, E, F)`` in ``{+,0,-} x {+,-}^4`` that satisfy the
    GP sign condition and have ``ab*C*E`` in ``{0, +1}``."""
    out = []
    for ab, C, D, E, F in product((1, 0, -1), (1, -1), (1, -1), (1, -1), (1, -1)):
        if ab * C * E < 0:
            continue
        if gp_consistent(ab, C * D, E * F):
            out.append((ab, C, D, E, F))
    return out


@dataclass(frozen=True)
class GPRelation:
    edge: tuple[int, ...]
    f: int
    g: int
    a: int
    b: int
    signs: tuple[int, int, int, int, int, int]

    @property
    def tuples(self):
        lam, f, g, a, b = self.edge, self.f, self.g, self.a, self.b
        return (
            lam + (g, f),
            lam + (a, b),
            lam + (g, a),
            lam + (f, b),
            lam + (g, b),
            lam + (f, a),
        )

    A = property(lambda self: self.tuples[0])
    B = property(lambda self: self.tuples[1])
    C = property(lambda self: self.tuples[2])
    D = property(lambda self: self.tuples[3])
    E = property(lambda self: self.tuples[4])
    F = property(lambda self: self.tuples[5])

    @property
    def pattern(self) -> tuple[int, int, int, int, int]:
        sA, sB, sC, sD, sE, sF = self.signs
        return (sA * sB, sC, sD, sE, sF)


def gp_relation_for_pivot(prog: OMProgram, pivot: Pivot) -> GPRelation:
    lam = tuple(pivot.edge)
    rel = GPRelation(lam, prog.f, prog.g, pivot.a, pivot.b, (0,) * 6)
    signs = tuple(prog.chi.evaluate(t) for t in rel.tuples)
    return GPRelation(lam, prog.f, prog.g, pivot.a, pivot.b, signs)


def classify_gp(rel: GPRelation) -> str:
    pattern = rel.pattern
    try:
        return _PATTERN_TO_TYPE[pattern]
    except KeyError:
        raise UnlistedPattern(f"sign pattern {pattern} is not one of the 20 listed types") from None


# -- certificates -------------------------------------------------------------


@dataclass
class BfpCertificate:
    inequalities: list[tuple[BiquadraticInequality, int]]
    equations: list[tuple[BiquadraticEquation, int]] = field(default_factory=list)
    chirotope_digest: Optional[str] = None
    n: Optional[int] = None
    r: Optional[int] = None
    # provenance, not checked by the verifier
    types: tuple[str, ...] = ()
    witness: Optional[tuple] = None


@dataclass
class VerificationReport:
    valid: bool
    lhs_multiset: Counter
    rhs_multiset: Counter
    sign_balance: int
    failures: list[str]

    def summary(self) -> str:
        head = "VALID" if self.valid else "INVALID"
        lines = [f"certificate: {head}"]
        lines.append(f"bracket factors per side: {sum(self.lhs_multiset.values())}")
        lines.append(f"sign balance: {'+' if self.sign_balance > 0 else '-'}")
        lines.extend(f"failure: {f}" for f in self.failures)
        return "\n".join(lines)


def verify_certificate(chi: Chirotope, cert: BfpCertificate) -> VerificationReport:
    """Check that ``cert`` is a biquadratic final polynomial for ``chi``.

    Failure reasons: ``DigestMismatch``, ``InvalidChirotope``,
    ``NonEmptyRequired``, ``BadMultiplicity``, ``NotInSystem``,
    ``SignMismatch``, ``MultisetMismatch``.
    """
    failures = []
    if cert.chirotope_digest is not None and cert.chirotope_digest != chi.digest():
        failures.append("DigestMismatch")
    if (cert.n is not None and cert.n != chi.n) or (cert.r is not None and cert.r != chi.r):
        failures.append("DigestMismatch")
    if not cert.inequalities:
        failures.append("NonEmptyRequired")

    try:
        system = enumerate_system(chi)
    except NoNormalization:
        # some GP sign condition fails, so there is no system to be a member of
        failures.append("InvalidChirotope")
        system = None
    lhs, rhs = Counter(), Counter()
    balance = 1
    entries = [(c, m, True) for c, m in cert.inequalities]
    entries += [(c, m, False) for c, m in cert.equations]
    for con, mult, strict in entries:
        if not isinstance(mult, int) or mult <= 0:
            failures.append("BadMultiplicity")
            continue
        if isinstance(con, BiquadraticInequality) != strict or system is None or system.lookup(con) is None:
            failures.append("NotInSystem")
        # orientation of each side must match the chirotope-determined sign
        try:
            side_signs = [
                br.orientation * chi.sign_of_subset(br.subset) for br in con.lhs + con.rhs
            ]
        except KeyError:
            failures.append("NotInSystem")
        else:
            if side_signs[0] * side_signs[1] != 1 or side_signs[2] * side_signs[3] != 1:
                failures.append("SignMismatch")
        for br in con.lhs:
            lhs[br.subset] += mult
        for br in con.rhs:
            rhs[br.subset] += mult
        if mult % 2:
            balance *= con.lhs_orientation * con.rhs_orientation
    if lhs != rhs:
        failures.append("MultisetMismatch")
    if balance != 1:
        failures.append("SignMismatch")
    failures = list(dict.fromkeys(failures))
    return VerificationReport(not failures, lhs, rhs, balance, failures)


def _aggregate(items):
    """Merge ``(constraint, multiplicity)`` pairs with identical sides."""
    counts = Counter()
    first = {}
    for con, mult in items:
        k = (con.key, con.lhs_subsets)
        counts[k] += mult
        first.setdefault(k, con)
    return [(first[k], counts[k]) for k in sorted(counts, key=repr)]


def cycle_types(prog: OMProgram, cycle: NonDegenerateCycle) -> list[str]:
    types = []
    for p in cycle.pivots:
        try:
            types.append(classify_gp(gp_relation_for_pivot(prog, p)))
        except UnlistedPattern as exc:
            raise TypeClassificationFailed(f"pivot {p}: {exc}") from None
    return types


def cycle_to_bfp(prog: OMProgram, cycle: NonDegenerateCycle) -> BfpCertificate:
    """Assemble and verify the biquadratic final polynomial of a cycle.

    Types 1,4,7,10 give ``[E][F] < [C][D]``, types 3,6,9,12 give
    ``[C][D] < [E][F]`` (read in the pivot's own labelling).  Primed types
    give the equation between the same two products, oriented like the
    inequalities of their group.  Types 2,5,8,11 give ``[E][F] < [A][B]``;
    they never occur in a closed cycle, and if they did the cancellation
    check would reject the result.
    """
    chi = prog.chi
    types = cycle_types(prog, cycle)
    ineqs, eqs = [], []
    for p, t in zip(cycle.pivots, types):
        rel = gp_relation_for_pivot(prog, p)
        tau = tuple(p.edge)
        lam = (prog.g, prog.f, p.a, p.b)
        if t in PRIMED_TYPES:
            if t in GROUP_EF:
                lhs, rhs = (rel.E, rel.F), (rel.C, rel.D)
            else:
                lhs, rhs = (rel.C, rel.D), (rel.E, rel.F)
            con = constraint_for_subsets(chi, tau, lam, lhs, rhs, strict=False)
            target = eqs
        else:
            if t in GROUP_EF:
                lhs, rhs = (rel.E, rel.F), (rel.C, rel.D)
            elif t in GROUP_CD:
                lhs, rhs = (rel.C, rel.D), (rel.E, rel.F)
            else:
                lhs, rhs = (rel.E, rel.F), (rel.A, rel.B)
            con = constraint_for_subsets(chi, tau, lam, lhs, rhs, strict=True)
            target = ineqs
        if con is None:
            raise CancellationFailed(f"pivot {p} (type {t}) has no matching system constraint")
        target.append(con)
    cert = BfpCertificate(
        _aggregate((c, 1) for c in ineqs),
        _aggregate((c, 1) for c in eqs),
        chirotope_digest=chi.digest(),
        n=chi.n,
        r=chi.r,
        types=tuple(types),
        witness=(prog.f, prog.g),
    )
    report = verify_certificate(chi, cert)
    if not report.valid:
        raise CancellationFailed("assembled certificate fails verification: " + ", ".join(report.failures))
    return cert


def type_groups_ok(types) -> bool:
    """True when the types stay inside one of the two closed groups."""
    s = set(types)
    return bool(s) and (s <= GROUP_EF or s <= GROUP_CD) and bool(s - set(PRIMED_TYPES))


def f_independent_bases(prog: OMProgram) -> list[tuple[int, ...]]:
    """Affine bases ``B`` for which ``B + f`` is also a basis."""
    ev, f = prog.chi.evaluate, prog.f
    return [B for B in affine_bases(prog) if ev(B + (f,)) != 0]


def candidate_cycles(prog: OMProgram) -> Iterator[NonDegenerateCycle]:
    """Cycles avoiding ``f``-dependent bases first, then the unrestricted ones."""
    seen = set()
    nodes = f_independent_bases(prog)
    for graph in (build_pivot_graph(prog, nodes), build_pivot_graph(prog)):
        for cyc in iter_nondegenerate_cycles(prog, graph):
            if cyc.bases not in seen:
                seen.add(cyc.bases)
                yield cyc


@dataclass
class CertifyAttempt:
    f: int
    g: int
    cycle: NonDegenerateCycle
    error: str


def certify(chi: Chirotope, f: Optional[int] = None, g: Optional[int] = None):
    """Search programs and cycles for a verified certificate.

    Returns ``(certificate, prog, cycle, attempts)``; ``certificate`` is
    ``None`` when no cycle could be converted (``attempts`` lists why).
    """
    attempts = []
    for prog in programs(chi, f, g):
        for cyc in candidate_cycles(prog):
            try:
                cert = cycle_to_bfp(prog, cyc)
            except (TypeClassificationFailed, CancellationFailed) as exc:
                attempts.append(CertifyAttempt(prog.f, prog.g, cyc, f"{type(exc).__name__}: {exc}"))
                continue
            return cert, prog, cyc, attempts
    return None, None, None, attempts
