import random
from fractions import Fraction

import pytest

from mmtensor import Matrix


def rand_matrix(rng, n, span=9):
    return Matrix([[Fraction(rng.randint(-span, span), rng.randint(1, 5))
                    for _ in range(n)] for _ in range(n)])


def canonical_terms(t):
    """Multiset key of a tensor's nonzero terms up to per-term rescaling."""
    keyed = []
    for tm in t.nonzero_terms():
        a, b, c = tm.canonical()
        keyed.append((tuple(map(tuple, a.row_list())),
                      tuple(map(tuple, b.row_list())),
                      tuple(map(tuple, c.row_list()))))
    return sorted(keyed)


@pytest.fixture
def rng():
    return random.Random(20230817)
