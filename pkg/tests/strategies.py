"""Hypothesis strategies for small magmas, relations and words."""

from itertools import permutations
from typing import Sequence

from hypothesis import strategies as st

from src.algebra.magma_core import build_magma, direct_product, magma_from_function
from src.models.base_models import AbstractRel


@st.composite
def partial_magmas(draw, min_size: int = 1, max_size: int = 3, full: bool = False):
    """A random table on 0..n-1; cells drawn as None are left out of the domain."""
    n = draw(st.integers(min_size, max_size))
    cell = st.integers(0, n - 1) if full else st.one_of(st.none(), st.integers(0, n - 1))
    cells = draw(st.lists(cell, min_size=n * n, max_size=n * n))
    return build_magma(n, None, [((k // n, k % n), v) for k, v in enumerate(cells) if v is not None])


def full_magmas(min_size: int = 1, max_size: int = 3):
    return partial_magmas(min_size=min_size, max_size=max_size, full=True)


@st.composite
def relabelled(draw, P):
    """P with its carrier permuted, so the result is isomorphic to P."""
    perm = draw(st.permutations(range(P.size)))
    entries = [((perm[a], perm[b]), perm[c]) for (a, b), c in P.table.items()]
    return build_magma(P.size, None, entries)


@st.composite
def relations(draw, max_size: int = 5):
    n = draw(st.integers(1, max_size))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return AbstractRel(size=n, edges=draw(st.frozensets(pair, max_size=n * n)))


def words(alphabet: Sequence[str], max_length: int = 6):
    return st.lists(st.sampled_from(list(alphabet)), max_size=max_length).map(tuple)


def _cyclic(n: int):
    return magma_from_function(list(range(n)), lambda a, b: (a + b) % n)


def _symmetric3():
    perms = list(permutations(range(3)))
    return magma_from_function(perms, lambda p, q: tuple(p[q[i]] for i in range(3)),
                               [str(i) for i in range(len(perms))])


@st.composite
def small_groups(draw):
    """A relabelled group of order at most 6: cyclic, Klein four or S3."""
    G = draw(st.one_of(st.integers(1, 6).map(_cyclic),
                       st.builds(lambda: direct_product(_cyclic(2), _cyclic(2))),
                       st.builds(_symmetric3)))
    return draw(relabelled(G))
