"""Exact rational feasibility for the log-linearized biquadratic system.

A bracket ``[T]`` that is nonzero under the chirotope gets a variable
``x_T`` standing for ``log |[T]|``.  Then ``[A][B] < [C][D]`` becomes
``x_A + x_B - x_C - x_D <= -1`` and an equation becomes the same row with
``= 0``.  Any realization gives a solution, so infeasibility (certified
by Farkas multipliers) proves non-realizability, and the multipliers are
exactly the exponents of a biquadratic final polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Union

from gmpy2 import mpq as _Q

from .biquadratic import BiquadraticInequality, BiquadraticSystem, constraint_for_subsets
from .certify import BfpCertificate, _aggregate, verify_certificate
from .exceptions import CancellationFailed, EmptyInequalitySupport, ZeroBracket

log = logging.getLogger(__name__)

LE, EQ = "<=", "="


@dataclass
class Row:
    coefficients: dict[int, Fraction]
    relation: str
    rhs: Fraction
    origin: object = None

    def lhs_value(self, x) -> Fraction:
        return sum((c * x[v] for v, c in self.coefficients.items()), Fraction(0))


@dataclass
class LinearSystem:
    variables: list[tuple[int, ...]]
    rows: list[Row] = field(default_factory=list)

    def var_name(self, v: int) -> str:
        return "x_" + "_".join(map(str, self.variables[v]))

    def to_lp(self) -> str:
        """CPLEX LP text with a zero objective."""
        out = ["\\ log-linearized biquadratic system", "Minimize", " obj: 0 " + (self.var_name(0) if self.variables else ""), "Subject To"]
        for i, row in enumerate(self.rows, 1):
            terms = []
            for v, c in sorted(row.coefficients.items()):
                coef = "+" if c == 1 else "-" if c == -1 else f"{'+' if c > 0 else '-'} {abs(c)}"
                terms.append(f"{coef} {self.var_name(v)}")
            expr = " ".join(terms).lstrip("+ ") if terms else "0"
            rel = "<=" if row.relation == LE else "="
            out.append(f" c{i}: {expr} {rel} {row.rhs}")
        out.append("Bounds")
        out.extend(f" {self.var_name(v)} free" for v in range(len(self.variables)))
        out.append("End")
        return "\n".join(out) + "\n"


@dataclass
class FarkasCertificate:
    """Row multipliers: nonnegative on ``<=`` rows, signed on ``=`` rows."""

    multipliers: dict[int, Fraction]


@dataclass
class Feasible:
    assignment: list[Fraction]


@dataclass
class Infeasible:
    certificate: FarkasCertificate


def encode_system(system: BiquadraticSystem) -> LinearSystem:
    chi = system.chi
    constraints = system.constraints()
    subsets = set()
    for con in constraints:
        for br in con.lhs + con.rhs:
            if chi.sign_of_subset(br.subset) == 0:
                raise ZeroBracket(f"constraint {con} uses zero bracket {br}")
            subsets.add(br.subset)
    variables = sorted(subsets)
    index = {s: i for i, s in enumerate(variables)}
    ls = LinearSystem(variables)
    for con in constraints:
        coeffs: dict[int, Fraction] = {}
        for br in con.lhs:
            coeffs[index[br.subset]] = coeffs.get(index[br.subset], 0) + 1
        for br in con.rhs:
            coeffs[index[br.subset]] = coeffs.get(index[br.subset], 0) - 1
        coeffs = {v: Fraction(c) for v, c in coeffs.items() if c}
        if isinstance(con, BiquadraticInequality):
            ls.rows.append(Row(coeffs, LE, Fraction(-1), con))
        else:
            ls.rows.append(Row(coeffs, EQ, Fraction(0), con))
    return ls


def check_assignment(ls: LinearSystem, x) -> bool:
    for row in ls.rows:
        val = row.lhs_value(x)
        if row.relation == LE and not val <= row.rhs:
            return False
        if row.relation == EQ and val != row.rhs:
            return False
    return True


def check_farkas(ls: LinearSystem, cert: FarkasCertificate) -> bool:
    """Multipliers combine the rows into ``0 <= c`` with ``c < 0``."""
    combo: dict[int, Fraction] = {}
    total = Fraction(0)
    for i, y in cert.multipliers.items():
        row = ls.rows[i]
        if row.relation == LE and y < 0:
            return False
        for v, c in row.coefficients.items():
            combo[v] = combo.get(v, 0) + y * c
        total += y * row.rhs
    return all(c == 0 for c in combo.values()) and total < 0


class _RevisedSimplex:
    """Phase-I revised simplex on ``A y = b, y >= 0``.

    Columns are sparse dicts.  One artificial per row forms the starting
    basis; ``Binv`` is kept explicitly as dense rational rows.
    """

    def __init__(self, columns: list[dict[int, Fraction]], b: list[Fraction]):
        self.m = len(b)
        self.ncols = len(columns)
        self.columns = [{k: _Q(c) for k, c in col.items()} for col in columns]
        m = self.m
        self.zero = _Q(0)
        self.basis = [self.ncols + i for i in range(m)]  # artificials
        self.xB = [_Q(x) for x in b]
        self.Binv = [[_Q(int(i == j)) for j in range(m)] for i in range(m)]
        self.iterations = 0

    def _cost(self, j):
        return 1 if j >= self.ncols else 0

    def _column(self, j):
        return self.columns[j] if j < self.ncols else {j - self.ncols: _Q(1)}

    def duals(self):
        m = self.m
        pi = [self.zero] * m
        for i, j in enumerate(self.basis):
            if self._cost(j):
                row = self.Binv[i]
                for k in range(m):
                    if row[k]:
                        pi[k] += row[k]
        return pi

    def solve(self):
        """Run to optimality (Bland's rule, so no cycling) and return the duals."""
        m = self.m
        zero = self.zero
        in_basis = set(self.basis)
        while True:
            pi = self.duals()
            entering = None
            for j in range(self.ncols):
                if j in in_basis:
                    continue
                d = zero
                for k, c in self.columns[j].items():
                    d -= pi[k] * c
                if d < 0:
                    entering = j
                    break
            if entering is None:
                return pi
            col = self._column(entering)
            u = []
            for i in range(m):
                row = self.Binv[i]
                acc = zero
                for k, c in col.items():
                    acc += row[k] * c
                u.append(acc)
            leave, best = None, None
            for i in range(m):
                if u[i] > 0:
                    ratio = self.xB[i] / u[i]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:  # cannot happen: phase-I objective is bounded below
                raise RuntimeError("unbounded phase-I problem")
            self._pivot(leave, entering, u)
            in_basis.discard(self.basis[leave])
            self.basis[leave] = entering
            in_basis.add(entering)
            self.iterations += 1

    def _pivot(self, r, j, u):
        m = self.m
        ur = u[r]
        prow = [x / ur for x in self.Binv[r]]
        self.Binv[r] = prow
        xr = self.xB[r] / ur
        self.xB[r] = xr
        nz = [k for k in range(m) if prow[k]]
        for i in range(m):
            ui = u[i]
            if i == r or not ui:
                continue
            row = self.Binv[i]
            for k in nz:
                row[k] -= ui * prow[k]
            self.xB[i] -= ui * xr

    def objective(self):
        return sum((x for x, j in zip(self.xB, self.basis) if j >= self.ncols), self.zero)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def solve_feasibility(ls: LinearSystem) -> Union[Feasible, Infeasible]:
    """Exact decision of ``{x : rows}`` with a checked witness either way."""
    nvar = len(ls.variables)
    if not ls.rows:
        return Feasible([Fraction(0)] * nvar)
    # Farkas system: sum_i y_i a_i = 0, -sum_i y_i b_i = 1,
    # y_i >= 0 on <= rows; equality rows split into two nonnegative columns.
    columns, owners = [], []
    for i, row in enumerate(ls.rows):
        col = {v: Fraction(c) for v, c in row.coefficients.items() if c}
        if row.rhs:
            col[nvar] = -Fraction(row.rhs)
        columns.append(col)
        owners.append((i, 1))
        if row.relation == EQ:
            columns.append({k: -c for k, c in col.items()})
            owners.append((i, -1))
    b = [Fraction(0)] * nvar + [Fraction(1)]
    simplex = _RevisedSimplex(columns, b)
    pi = simplex.solve()
    log.debug("phase I finished after %d pivots", simplex.iterations)

    if simplex.objective() == 0:
        mult: dict[int, Fraction] = {}
        for i, j in enumerate(simplex.basis):
            if j < len(columns) and simplex.xB[i]:
                row, s = owners[j]
                mult[row] = mult.get(row, Fraction(0)) + s * _to_fraction(simplex.xB[i])
        cert = FarkasCertificate({k: v for k, v in sorted(mult.items()) if v})
        if not check_farkas(ls, cert):
            raise RuntimeError("internal error: Farkas multipliers fail substitution check")
        return Infeasible(cert)

    t = pi[nvar]
    x = [_to_fraction(pi[v] / t) for v in range(nvar)]
    if not check_assignment(ls, x):
        raise RuntimeError("internal error: dual assignment fails substitution check")
    return Feasible(x)


def bfp_from_farkas(system: BiquadraticSystem, ls: LinearSystem, cert: FarkasCertificate) -> BfpCertificate:
    """Scale multipliers to integers and read them as constraint exponents."""
    mults = {i: y for i, y in cert.multipliers.items() if y}
    if not mults:
        raise EmptyInequalitySupport("no nonzero multipliers")
    scale = lcm(*(Fraction(y).denominator for y in mults.values()))
    ineqs, eqs = [], []
    for i, y in sorted(mults.items()):
        k = int(y * scale)
        row = ls.rows[i]
        con = row.origin
        if row.relation == LE:
            ineqs.append((con, k))
        elif k > 0:
            eqs.append((con, k))
        else:
            # swapping lambda_3, lambda_4 of the pair always yields the mirrored equation
            flipped = constraint_for_subsets(
                system.chi,
                con.origin.tau,
                con.origin.lam,
                [b.subset for b in con.rhs],
                [b.subset for b in con.lhs],
                strict=False,
            )
            if flipped is None:
                raise CancellationFailed(f"no mirrored form of equation {con}")
            eqs.append((flipped, -k))
    if not ineqs:
        raise EmptyInequalitySupport("all inequality multipliers vanish")
    chi = system.chi
    out = BfpCertificate(
        _aggregate(ineqs), _aggregate(eqs), chirotope_digest=chi.digest(), n=chi.n, r=chi.r
    )
    report = verify_certificate(chi, out)
    if not report.valid:
        raise CancellationFailed("certificate from Farkas multipliers fails: " + ", ".join(report.failures))
    return out
