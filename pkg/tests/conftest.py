import math
import random
from pathlib import Path

import pytest

from splicecert import SpliceDiagram, parse

FIXTURE_DIR = Path(__file__).parent / "fixtures"

EXCEPTIONAL_TRIPLES = {(2, 3, 5), (2, 3, 7), (2, 3, 11)}


def fixture_path(name: str) -> str:
    return str(FIXTURE_DIR / name)


def fixture_text(name: str) -> str:
    return (FIXTURE_DIR / name).read_text()


def load(name: str) -> SpliceDiagram:
    return parse(fixture_text(name)).diagram


def all_fixture_names():
    return sorted(p.name for p in FIXTURE_DIR.glob("*.sd"))


@pytest.fixture
def cabled_345() -> SpliceDiagram:
    return load("m345_cabled.sd")


def coprime_weights(rng: random.Random, count: int, lo: int = 2, hi: int = 50):
    """Pairwise coprime integers in [lo, hi], sorted ascending."""
    while True:
        out = []
        attempts = 0
        while len(out) < count and attempts < 400:
            attempts += 1
            w = rng.randint(lo, hi)
            if all(math.gcd(w, x) == 1 for x in out):
                out.append(w)
        if len(out) == count:
            return sorted(out)


def random_one_node(rng: random.Random, leaf_counts=(3, 4, 5, 6)) -> SpliceDiagram:
    """Valid minimal non-exceptional star diagram."""
    while True:
        weights = coprime_weights(rng, rng.choice(leaf_counts))
        if tuple(weights) not in EXCEPTIONAL_TRIPLES:
            return SpliceDiagram.one_node(weights)


def _internal_weight(rng: random.Random, leaf_weights, at_least: int) -> int:
    """Smallest weight >= at_least coprime to leaf_weights, plus a random
    coprime offset so the fuzz is not always tight against the determinant."""
    w = max(1, at_least) + rng.randint(0, 40)
    while any(math.gcd(w, x) != 1 for x in leaf_weights):
        w += 1
    return w


def random_two_node(rng: random.Random) -> SpliceDiagram:
    """Valid minimal two-node diagram with positive internal determinant.

    Mirror-symmetric samples (identical leaf multiset and internal weight on
    both sides) are rejected: the diagram automorphism swapping the sides
    makes the paired knots indistinguishable, so no single cabling can both
    certify and separate them.
    """
    while True:
        left = coprime_weights(rng, rng.choice((2, 3)))
        right = coprime_weights(rng, rng.choice((2, 3)))
        pl = math.prod(left)
        pr = math.prod(right)
        ev = _internal_weight(rng, left, 1)
        ew = _internal_weight(rng, right, pl * pr // ev + 1)
        if ev * ew <= pl * pr:
            continue
        if sorted(left) == sorted(right) and ev == ew:
            continue
        edges = [("v", "w", ev, ew)]
        leaves = []
        for i, weight in enumerate(left, start=1):
            leaves.append(f"A{i}")
            edges.append(("v", f"A{i}", weight, None))
        for i, weight in enumerate(right, start=1):
            leaves.append(f"B{i}")
            edges.append(("w", f"B{i}", weight, None))
        return SpliceDiagram(["v", "w"], leaves, edges)


def random_valid_diagram(rng: random.Random) -> SpliceDiagram:
    if rng.random() < 0.5:
        return random_one_node(rng)
    return random_two_node(rng)
