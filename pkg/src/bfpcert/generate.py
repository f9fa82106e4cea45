"""Seeded generators for realizable test chirotopes."""

from __future__ import annotations

import random
from fractions import Fraction

from .chirotope import Chirotope, VectorConfiguration, moment_curve
from .exceptions import RankDeficient


def random_configuration(n: int, r: int, rng: random.Random, spread: int = 5) -> VectorConfiguration:
    """Integer coordinates drawn from ``[-spread, spread]``, redrawn until some
    ``r``-subset is independent.  Small spreads produce non-uniform examples."""
    while True:
        cols = [[Fraction(rng.randint(-spread, spread)) for _ in range(r)] for _ in range(n)]
        config = VectorConfiguration.from_columns(cols)
        try:
            Chirotope.from_configuration(config)
        except RankDeficient:
            continue
        return config


def corpus(seed: int = 0, count: int = 50, ranks=(3, 4), max_n: int = 8):
    """``count`` realizable chirotopes from random rational configurations.

    Returns ``(config, chirotope)`` pairs; ranks cycle through ``ranks`` and
    the point count is drawn from ``r+2 .. max_n``.
    """
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = ranks[i % len(ranks)]
        n = rng.randint(r + 2, max_n)
        spread = rng.choice((1, 2, 5, 9))
        config = random_configuration(n, r, rng, spread)
        out.append((config, Chirotope.from_configuration(config)))
    return out


def moment_chirotope(n: int, r: int) -> Chirotope:
    return Chirotope.from_configuration(moment_curve(n, r))
