import random
from itertools import combinations

import pytest

from sailfree.core import Triple, make_system, pair_mask


SAIL7_EDGES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5)]


@pytest.fixture
def sail7():
    """Seven vertices realizing the forbidden configuration itself."""
    return make_system(7, SAIL7_EDGES)


@pytest.fixture
def quad6():
    """Four edges on six vertices, pairwise sharing one vertex."""
    return make_system(6, [(0, 2, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4)])


def random_linear_system(n, rng, tries=None):
    """Random accepted-edge process enforcing linearity only.

    Sails may appear; that is the point for detector-equivalence tests.
    """
    if tries is None:
        tries = 3 * n
    covered = 0
    edges = []
    for _ in range(tries):
        t = Triple.of(rng.sample(range(n), 3))
        pm = pair_mask(n, t)
        if covered & pm == 0:
            covered |= pm
            edges.append(t)
    return make_system(n, edges)


def sail_exists_4subset(system):
    """Literal oracle: scan every 4-subset of edges for a sail role assignment."""
    edges = system.edges
    for quad in combinations(range(len(edges)), 4):
        for gi in quad:
            g = edges[gi]
            fans = [edges[i] for i in quad if i != gi]
            apexes = set(fans[0]) & set(fans[1]) & set(fans[2])
            if len(apexes) != 1:
                continue
            v = next(iter(apexes))
            if v in g:
                continue
            if all(len(set(f) & set(g)) == 1 for f in fans):
                return True
    return False
