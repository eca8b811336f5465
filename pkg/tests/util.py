"""Shared random generators for the test suite (seeded, deterministic)."""

from fractions import Fraction

from isocone.ordgroup import LexVec
from isocone.lamtree import MetricTree


def random_fraction(rng, lo=-3, hi=3, maxden=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def random_positive_lexvec(rng, rank):
    """Lexicographically positive tuple with a random leading support."""
    k = rng.randrange(rank)
    coords = [Fraction(0)] * rank
    coords[k] = Fraction(rng.randint(1, 3), rng.randint(1, 3))
    for i in range(k + 1, rank):
        coords[i] = random_fraction(rng)
    return LexVec(coords)


def random_lexvec(rng, rank):
    return LexVec([random_fraction(rng) for _ in range(rank)])


def random_tree(rng, n_vertices, rank, with_end=False):
    """Random tree by uniform parent attachment, positive random lengths."""
    vertices = list(range(n_vertices))
    edges = {}
    for i in range(1, n_vertices):
        parent = rng.randrange(i)
        edges[f"e{i}"] = (parent, i, random_positive_lexvec(rng, rank))
    end = rng.randrange(n_vertices) if with_end else None
    return MetricTree(vertices, edges, end=end)
