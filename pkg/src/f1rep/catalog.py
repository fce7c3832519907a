"""Indecomposable representations and isomorphism classes up to a size bound."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from .f1 import enumerate_maps
from .quiver import (
    Quiver,
    Representation,
    canonical_form,
    canonical_key,
    direct_sum_all,
    element_components,
    support_representation,
)


def connected_subquivers(q: Quiver) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Connected (vertex set, arrow-index set) pairs of a tree quiver.

    On a tree, a connected subquiver is determined by its vertex set: it must
    contain every arrow between its vertices.
    """
    out = []
    for r in range(1, q.vertex_count + 1):
        for vs in itertools.combinations(q.vertices, r):
            vset = frozenset(vs)
            arrows = frozenset(i for i, a in enumerate(q.arrows) if a.source in vset and a.target in vset)
            if _connected(vset, [q.arrows[i] for i in arrows]):
                out.append((vset, arrows))
    return out


def _connected(vset, arrows) -> bool:
    vs = sorted(vset)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        x = stack.pop()
        for a in arrows:
            for s, t in ((a.source, a.target), (a.target, a.source)):
                if s == x and t not in seen:
                    seen.add(t)
                    stack.append(t)
    return len(seen) == len(vs)


def is_indecomposable(M: Representation) -> bool:
    return len(element_components(M)) == 1


def all_representations(q: Quiver, dims: Sequence[int]) -> Iterator[Representation]:
    """Every labelled representation with the given dimension vector."""
    choices = [list(enumerate_maps(dims[a.source - 1], dims[a.target - 1])) for a in q.arrows]
    for maps in itertools.product(*choices):
        yield Representation(q, tuple(dims), tuple(maps))


def dimension_vectors(q: Quiver, max_total: int, per_vertex: Sequence[int] | None = None):
    bounds = per_vertex or [max_total] * q.vertex_count
    for dims in itertools.product(*(range(b + 1) for b in bounds)):
        if 0 < sum(dims) <= max_total:
            yield dims


@lru_cache(maxsize=None)
def indecomposables(q: Quiver, max_total: int) -> tuple[Representation, ...]:
    """Canonical indecomposables of total dimension at most ``max_total``.

    Trees use the connected-subquiver classification; other quivers are
    searched exhaustively, which is only practical for small bounds.
    """
    if q.is_tree():
        reps = [support_representation(q, vs, arrows) for vs, arrows in connected_subquivers(q)]
        reps = [canonical_form(R)[0] for R in reps if R.total_dim <= max_total]
    else:
        found = {}
        for dims in dimension_vectors(q, max_total):
            for R in all_representations(q, dims):
                if is_indecomposable(R):
                    C, _ = canonical_form(R)
                    found.setdefault(canonical_key(C), C)
        reps = list(found.values())
    reps.sort(key=lambda R: (R.total_dim, canonical_key(R)))
    return tuple(reps)


def isoclasses(q: Quiver, per_vertex: Sequence[int]) -> list[Representation]:
    """Canonical representatives of every isomorphism class with ``dims <= per_vertex``."""
    per_vertex = tuple(per_vertex)
    blocks = [B for B in indecomposables(q, sum(per_vertex)) if all(d <= b for d, b in zip(B.dims, per_vertex))]
    out = []

    def rec(start: int, chosen: list, dims: list):
        out.append(canonical_form(direct_sum_all(chosen, q))[0])
        for i in range(start, len(blocks)):
            nd = [a + b for a, b in zip(dims, blocks[i].dims)]
            if all(d <= b for d, b in zip(nd, per_vertex)):
                rec(i, chosen + [blocks[i]], nd)

    rec(0, [], [0] * q.vertex_count)
    out.sort(key=lambda R: (R.total_dim, canonical_key(R)))
    return out
