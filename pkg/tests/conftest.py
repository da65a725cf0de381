import itertools

import pytest

from pspaces.permgrp import Permutation, Subgroup, builtin_group

# (name, primes dividing the order) for the whole builtin catalog
CATALOG = [
    ("S3", (2, 3)),
    ("S4", (2, 3)),
    ("S5", (2, 3, 5)),
    ("A4", (2, 3)),
    ("A5", (2, 3, 5)),
    ("A6", (2, 3, 5)),
    ("D8", (2,)),
    ("GL32", (2, 3, 7)),
    ("S3wrC2", (2, 3)),
]

CATALOG_PAIRS = [(name, p) for name, primes in CATALOG for p in primes]


def cyc(degree, *cycles):
    """1-based cycle shorthand used throughout the tests."""
    return Permutation.from_cycles(degree, cycles, base=1)


@pytest.fixture(scope="session")
def s4():
    return builtin_group("S4")


@pytest.fixture(scope="session")
def paper_d8(s4):
    """The dihedral Sylow 2-subgroup <(1 3), (1 2 3 4)> of S4."""
    return Subgroup.generated(s4, [cyc(4, (1, 3)), cyc(4, (1, 2, 3, 4))])


def raw_group(degree, gen_images):
    """Independent oracle: closure over raw image tuples, no library code."""
    def mul(a, b):
        return tuple(b[x] for x in a)
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gen_images]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = mul(a, g)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        frontier = new
    return seen


def raw_sym(n):
    return set(itertools.permutations(range(n)))
