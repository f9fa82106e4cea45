"""Acceptance criteria 1-8, one test each.

Every test records PASS, FAIL or SKIP under its criterion number; the
terminal summary (see conftest) prints one line per criterion.  Run alone
with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
import warnings
from contextlib import contextmanager
from dataclasses import replace
from itertools import combinations, permutations
from pathlib import Path

import pytest

from bfpcert.biquadratic import BiquadraticInequality, Bracket, enumerate_system
from bfpcert.certify import (
    PRIMED_TYPES,
    UNPRIMED_TYPES,
    admissible_patterns,
    certify,
    type_groups_ok,
    verify_certificate,
)
from bfpcert.chirotope import check_axioms
from bfpcert.io import load_chirotope
from bfpcert.omp import (
    PivotKind,
    affine_bases,
    build_pivot_graph,
    classify_pivot,
    find_nondegenerate_cycle,
    is_euclidean,
    lemma_product,
    pivot_direction,
    programs,
)
from bfpcert.rational_lp import Feasible, Infeasible, bfp_from_farkas, encode_system, solve_feasibility
from oracles import Brackets, brute_gp_violations, sign_table
from test_certify import PUBLISHED_PRIMED, PUBLISHED_UNPRIMED, parse_table

RESULTS = {}
TITLES = {
    1: "axiom soundness (50 realizable pass, 50 GP-breaking mutations rejected)",
    2: "3-term GP polynomials vanish exactly on realizations",
    3: "sign-type tables: exactly 12 + 8 admissible rows",
    4: "realizable => Euclidean => LP feasible",
    5: "uniform inputs: no equations, no degenerate/horizontal pivots",
    6: "pivot sign product and direction oracle agree on every pivot",
    7: "catalog: cycle certificate valid, two-group types, LP infeasible",
    8: "verifier rejects perturbed certificates with the designated reason",
}
ADVERSARIAL_INPUT = Path(__file__).parent / "data" / "catalog" / "noneuclid_n8_r4_uniform_seed1.chi"


@contextmanager
def criterion(n):
    RESULTS[n] = "FAIL"
    try:
        yield
    except pytest.skip.Exception:
        RESULTS[n] = "SKIP"
        raise
    RESULTS[n] = "PASS"


def summary_lines():
    return [f"criterion {n}: {RESULTS[n]} - {TITLES[n]}" for n in sorted(RESULTS)]


# -- 1 ----------------------------------------------------------------------------


def mutations(corpus, count, seed=1):
    """Single-sign changes that the ordered brute-force scan flags."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        _, chi = corpus[rng.randrange(len(corpus))]
        subset = rng.choice([s for s, _ in chi.items()])
        old = chi.sign_of_subset(subset)
        new = rng.choice([v for v in (1, 0, -1) if v != old])
        mutant = chi.with_sign(subset, new)
        if not any(mutant.signs):
            continue
        table = sign_table(mutant.n, mutant.r, mutant.sign_string())
        if next(brute_gp_violations(mutant.n, mutant.r, table), None) is not None:
            found.append(mutant)
    return found


def test_criterion_1_axiom_soundness(corpus):
    with criterion(1):
        start = time.perf_counter()
        assert len(corpus) == 50
        assert all(chi.r in (3, 4) and chi.n <= 8 for _, chi in corpus)
        for _, chi in corpus:
            assert check_axioms(chi).ok
        bad = mutations(corpus, 50)
        assert len(bad) == 50
        for mutant in bad:
            rep = check_axioms(mutant)
            assert not rep.ok and not rep.gp_ok
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"{elapsed:.1f}s"


# -- 2 ----------------------------------------------------------------------------


def test_criterion_2_gp_identity(corpus):
    with criterion(2):
        checked = 0
        for cfg, chi in corpus:
            br = Brackets(cfg.columns)
            ground = range(1, chi.n + 1)
            for tau in combinations(ground, chi.r - 2):
                rest = [x for x in ground if x not in tau]
                for lam in combinations(rest, 4):
                    for l1, l2, l3, l4 in permutations(lam):
                        v = br(tau + (l1, l2)) * br(tau + (l3, l4))
                        v -= br(tau + (l1, l3)) * br(tau + (l2, l4))
                        v += br(tau + (l1, l4)) * br(tau + (l2, l3))
                        assert v == 0
                        checked += 1
        assert checked > 0


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3_table_reproduction():
    with criterion(3):
        rows = admissible_patterns()
        unprimed = [p for p in rows if p[0] != 0]
        primed = [p for p in rows if p[0] == 0]
        assert len(rows) == len(set(rows)) == 20
        assert len(unprimed) == 12 and len(primed) == 8
        assert set(unprimed) == set(parse_table(PUBLISHED_UNPRIMED).values())
        assert set(primed) == set(parse_table(PUBLISHED_PRIMED).values())
        assert UNPRIMED_TYPES == parse_table(PUBLISHED_UNPRIMED)
        assert PRIMED_TYPES == parse_table(PUBLISHED_PRIMED)


# -- 4 ----------------------------------------------------------------------------


def test_criterion_4_realizable_euclidean_feasible(corpus):
    with criterion(4):
        for _, chi in corpus:
            start = time.perf_counter()
            for prog in programs(chi):
                assert find_nondegenerate_cycle(prog) is None, (prog.f, prog.g)
            assert is_euclidean(chi) == (True, None)
            res = solve_feasibility(encode_system(enumerate_system(chi)))
            assert isinstance(res, Feasible)
            elapsed = time.perf_counter() - start
            assert elapsed < 60, f"n={chi.n} r={chi.r}: {elapsed:.1f}s"


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5_uniform_specialization(corpus):
    with criterion(5):
        uniform = [chi for _, chi in corpus if chi.is_uniform()]
        assert uniform
        for chi in uniform:
            assert enumerate_system(chi).equations == []
            for prog in programs(chi):
                for p in build_pivot_graph(prog).edges:
                    assert p.kind not in (PivotKind.DEGENERATE, PivotKind.HORIZONTAL)


# -- 6 ----------------------------------------------------------------------------


def test_criterion_6_lemma_suite(corpus):
    with criterion(6):
        seen = set()
        for _, chi in corpus:
            for prog in programs(chi):
                nodes = affine_bases(prog)
                for B1, B2 in combinations(nodes, 2):
                    L = tuple(sorted(set(B1) & set(B2)))
                    if len(L) != chi.r - 2:
                        continue
                    (x,) = set(B1) - set(L)
                    (y,) = set(B2) - set(L)
                    for a, b in ((x, y), (y, x)):
                        kind = classify_pivot(prog, L, a, b).kind
                        gf, ab, ga, gb = lemma_product(prog, L, a, b)
                        product_ = gf * ab * ga * gb
                        assert (product_ == 1) == (kind is PivotKind.INCREASING)
                        assert (product_ == 0) == (kind in (PivotKind.DEGENERATE, PivotKind.HORIZONTAL))
                        seen.add(kind)
                        if ab == 0:
                            assert kind is PivotKind.DEGENERATE
                            continue
                        df = pivot_direction(prog, L, a, b)[prog.f]
                        oracle = {1: PivotKind.INCREASING, 0: PivotKind.HORIZONTAL, -1: PivotKind.DECREASING}[df]
                        assert kind is oracle
        assert seen == set(PivotKind)


# -- 7 ----------------------------------------------------------------------------


def test_criterion_7_catalog_certificates(catalog):
    with criterion(7):
        if not catalog:
            warnings.warn("no non-Euclidean catalog files found; criterion 7 skipped")
            pytest.skip("no catalog files")
        for name, chi in catalog:
            assert check_axioms(chi).ok, name
            cert, prog, cycle, _ = certify(chi)
            assert cert is not None, name
            assert cycle.is_valid()
            assert verify_certificate(chi, cert).valid, name
            assert type_groups_ok(cert.types), (name, cert.types)
            system = enumerate_system(chi)
            ls = encode_system(system)
            res = solve_feasibility(ls)
            assert isinstance(res, Infeasible), name
            second = bfp_from_farkas(system, ls, res.certificate)
            assert verify_certificate(chi, second).valid, name


# -- 8 ----------------------------------------------------------------------------


def test_criterion_8_verifier_adversarial():
    with criterion(8):
        if not ADVERSARIAL_INPUT.exists():
            warnings.warn(f"{ADVERSARIAL_INPUT} missing; criterion 8 skipped")
            pytest.skip("adversarial input missing")
        chi = load_chirotope(ADVERSARIAL_INPUT)
        cert = certify(chi)[0]
        assert verify_certificate(chi, cert).valid

        def reasons(c):
            rep = verify_certificate(chi, c)
            assert not rep.valid
            return rep.failures

        assert "NonEmptyRequired" in reasons(replace(cert, inequalities=[]))

        (con, m), *rest = cert.inequalities
        assert "MultisetMismatch" in reasons(replace(cert, inequalities=[(con, m + 1)] + rest))
        used = set(con.lhs_subsets) | set(con.rhs_subsets)
        other = next(s for s, v in chi.items() if v and s not in used)
        moved = BiquadraticInequality((Bracket(other, con.lhs[0].orientation), con.lhs[1]), con.rhs, con.origin, con.side)
        assert "MultisetMismatch" in reasons(replace(cert, inequalities=[(moved, m)] + rest))

        flipped = Bracket(con.lhs[0].subset, -con.lhs[0].orientation)
        signed = BiquadraticInequality((flipped, con.lhs[1]), con.rhs, con.origin, con.side)
        assert "SignMismatch" in reasons(replace(cert, inequalities=[(signed, m)] + rest))

        assert "DigestMismatch" in reasons(replace(cert, chirotope_digest="0" * 64))
