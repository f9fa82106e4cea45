"""Search for non-Euclidean chirotopes by random sign mutations.

Starts from a random uniform realizable configuration, walks through
single-sign flips that keep every 3-term Grassmann-Pluecker sign condition,
and records the first non-Euclidean chirotopes it meets.  With
``--zeros`` it then tries to set signs to zero (keeping the axioms and
non-Euclideanness) to obtain non-uniform examples.

    python scripts/find_non_euclidean.py --n 8 --seed 2 --out tests/data/catalog
"""

import argparse
import random
from itertools import combinations
from pathlib import Path

from bfpcert.chirotope import Chirotope, check_axioms, gp_consistent, gp_term_signs
from bfpcert.generate import random_configuration
from bfpcert.io import format_chirotope
from bfpcert.omp import is_euclidean


def gp_ok_near(chi, subset):
    """GP sign conditions of every relation that mentions ``subset``."""
    S = set(subset)
    for tau in combinations(sorted(S), chi.r - 2):
        rest = [x for x in chi.ground_set if x not in tau]
        for lam in combinations(rest, 4):
            if (S - set(tau)) <= set(lam) and not gp_consistent(*gp_term_signs(chi, tau, lam)):
                return False
    return True


def walk(n, r, rng, steps):
    while True:
        chi = Chirotope.from_configuration(random_configuration(n, r, rng, 9))
        if chi.is_uniform():
            break
    subsets = list(combinations(range(1, n + 1), r))
    for _ in range(steps):
        s = rng.choice(subsets)
        cand = chi.with_sign(s, -chi.sign_of_subset(s))
        if gp_ok_near(cand, s):
            chi = cand
            if not is_euclidean(chi)[0]:
                return chi
    return None


def add_zeros(chi, rng, tries):
    subsets = [s for s, v in chi.items() if v]
    for _ in range(tries):
        s = rng.choice(subsets)
        cand = chi.with_sign(s, 0)
        if gp_ok_near(cand, s) and check_axioms(cand).ok and not is_euclidean(cand)[0]:
            chi = cand
            subsets.remove(s)
    return chi


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--r", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--zeros", type=int, default=0, help="zeroing attempts after the walk")
    ap.add_argument("--out", type=Path, required=True)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    chi = walk(args.n, args.r, rng, args.steps)
    if chi is None:
        raise SystemExit("no non-Euclidean chirotope found; try more steps or another seed")
    if args.zeros:
        chi = add_zeros(chi, rng, args.zeros)
    assert check_axioms(chi).ok
    kind = "uniform" if chi.is_uniform() else "nonuniform"
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"noneuclid_n{args.n}_r{args.r}_{kind}_seed{args.seed}.chi"
    path.write_text(format_chirotope(chi))
    print(path)


if __name__ == "__main__":
    main()
