"""Exact sequences of F1-representations and Yoneda Ext as pointed sets.

An n-extension of N by L is an exact chain ``L >-> M_1 -> ... -> M_n ->> N``.
Two extensions are related by ``ε ⇝ ε'`` when a ladder of morphisms between the
middle terms commutes with identities on both ends; ``Ext^n(N, L)`` is the set
of classes of the equivalence relation this generates.

Enumeration works on *gluing data*.  Writing ``K_i`` for the image of the
i-th map (``K_0 = L``, ``K_n = N``), every middle term is ``K_{i-1} ⊔ K_i`` as
vertex-wise sets, and the only freedom left is where arrows send elements of
``K_i`` that ``K_i`` itself kills: they may land on elements of ``K_{i-1}``
outside the image of that arrow.  Sequences are grown one indecomposable block
at a time and deduplicated by a canonical form that keeps both ends fixed.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .catalog import indecomposables
from .errors import ContractError
from .f1 import F1Map
from .quiver import (
    Quiver,
    Representation,
    RepMorphism,
    compose_morphisms,
    direct_sum,
    enumerate_morphisms,
    identity_morphism,
    is_epi,
    is_mono,
    subrepresentation,
    traversal_code,
    traverse,
    zero_morphism,
)
from .search import Structure, class_allowed, components, find_maps
from .unionfind import UnionFind

DEFAULT_CAP_SLACK = 2


# -- kernels, cokernels, images ---------------------------------------------


def kernel(phi: RepMorphism) -> tuple[Representation, RepMorphism]:
    M = phi.source
    keep = [(v, j) for v, j in M.elements if phi(v, j) == 0]
    return subrepresentation(M, keep)


def image(phi: RepMorphism) -> Representation:
    return image_inclusion(phi)[0]


def image_inclusion(phi: RepMorphism) -> tuple[Representation, RepMorphism]:
    N = phi.target
    hit = {(v, y) for v in N.quiver.vertices for y in phi.component(v).image_of if y}
    return subrepresentation(N, hit)


def cokernel(phi: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Collapse the image of ``phi`` to the basepoint."""
    N = phi.target
    q = N.quiver
    hit = {(v, y) for v in q.vertices for y in phi.component(v).image_of if y}
    labels: dict[tuple[int, int], int] = {}
    dims = []
    for v in q.vertices:
        c = 0
        for j in range(1, N.dims[v - 1] + 1):
            if (v, j) not in hit:
                c += 1
                labels[(v, j)] = c
        dims.append(c)
    maps = []
    for a, Na in zip(q.arrows, N.maps):
        imgs = []
        for j in range(1, N.dims[a.source - 1] + 1):
            if (a.source, j) in hit:
                continue
            y = Na(j)
            imgs.append(labels.get((a.target, y), 0) if y else 0)
        # collisions can only happen at the basepoint; F1Map re-checks this
        maps.append(F1Map.from_list(dims[a.source - 1], dims[a.target - 1], imgs))
    C = Representation(q, tuple(dims), tuple(maps))
    proj = RepMorphism.from_lists(
        N, C, [[labels.get((v, j), 0) for j in range(1, N.dims[v - 1] + 1)] for v in q.vertices]
    )
    return C, proj


# -- exact sequences ---------------------------------------------------------


def _chain_defect(maps: Sequence[RepMorphism]) -> str | None:
    if not maps:
        return "empty chain"
    for f, g in zip(maps, maps[1:]):
        if f.target != g.source:
            return "maps are not composable"
    if not is_mono(maps[0]):
        return "first map is not a monomorphism"
    if not is_epi(maps[-1]):
        return "last map is not an epimorphism"
    for i, (f, g) in enumerate(zip(maps, maps[1:]), start=1):
        M = f.target
        for v in M.quiver.vertices:
            im = set(f.component(v).image_of) - {0}
            ker = {j for j in range(1, M.dims[v - 1] + 1) if g(v, j) == 0}
            if im != ker:
                return f"image differs from kernel at middle term {i}, vertex {v}"
    return None


def is_exact(maps: Sequence[RepMorphism]) -> bool:
    """Whether ``L -> M_1 -> ... -> M_n -> N`` (given by its maps) is exact."""
    return _chain_defect(maps) is None


@dataclass(frozen=True)
class ExactSequence:
    maps: tuple[RepMorphism, ...]
    _structure: Structure | None = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        problem = _chain_defect(self.maps)
        if problem:
            raise ContractError(f"not an exact sequence: {problem}")
        if len(self.maps) < 2:
            raise ContractError("an n-extension needs n >= 1 middle terms")

    @property
    def degree(self) -> int:
        return len(self.maps) - 1

    @property
    def left(self) -> Representation:
        return self.maps[0].source

    @property
    def right(self) -> Representation:
        return self.maps[-1].target

    @property
    def middles(self) -> tuple[Representation, ...]:
        return tuple(f.target for f in self.maps[:-1])

    @property
    def objects(self) -> tuple[Representation, ...]:
        return (self.left,) + self.middles + (self.right,)

    @property
    def quiver(self) -> Quiver:
        return self.left.quiver

    def is_zero(self) -> bool:
        return all(X.is_zero() for X in self.objects)

    @property
    def structure(self) -> Structure:
        if self._structure is None:
            object.__setattr__(self, "_structure", _sequence_structure(self))
        return self._structure

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "left": self.left.to_json(),
            "middles": [M.to_json() for M in self.middles],
            "right": self.right.to_json(),
            "maps": [f.to_json() for f in self.maps],
        }

    @classmethod
    def from_json(cls, quiver: Quiver, data) -> "ExactSequence":
        objs = [Representation.from_json(quiver, data["left"])]
        objs += [Representation.from_json(quiver, m) for m in data["middles"]]
        objs.append(Representation.from_json(quiver, data["right"]))
        if len(data["maps"]) != len(objs) - 1:
            raise ContractError("one map between each pair of consecutive objects expected")
        maps = [RepMorphism.from_json(a, b, m) for a, b, m in zip(objs, objs[1:], data["maps"])]
        return cls(tuple(maps))


def _sequence_structure(seq: ExactSequence) -> Structure:
    """All elements of ``L, M_1, ..., M_n, N`` with arrow labels plus one chain label."""
    objs = seq.objects
    q = seq.quiver
    offsets, acc = [], 0
    for X in objs:
        offsets.append(acc)
        acc += X.total_dim
    classes = []
    for k, X in enumerate(objs):
        classes.extend((k, v) for v, _ in X.elements)
    funcs = np.full((len(q.arrows) + 1, acc), -1, dtype=np.int64)
    for k, X in enumerate(objs):
        st = X.structure
        for lab in range(len(q.arrows)):
            row = st.funcs[lab]
            for x in range(X.total_dim):
                if row[x] >= 0:
                    funcs[lab, offsets[k] + x] = offsets[k] + row[x]
        if k < len(objs) - 1:
            f, Y = seq.maps[k], objs[k + 1]
            for x, (v, j) in enumerate(X.elements):
                y = f(v, j)
                if y:
                    funcs[-1, offsets[k] + x] = offsets[k + 1] + Y.flat(v, y)
    return Structure(classes, funcs)


def morphism_sum(f: RepMorphism, g: RepMorphism) -> RepMorphism:
    """Block-diagonal ``f ⊕ g``."""
    src = direct_sum(f.source, g.source).rep
    tgt = direct_sum(f.target, g.target).rep
    comps = []
    for v in src.quiver.vertices:
        shift = f.target.dims[v - 1]
        imgs = list(f.component(v).image_of) + [y + shift if y else 0 for y in g.component(v).image_of]
        comps.append(imgs)
    return RepMorphism.from_lists(src, tgt, comps)


def sequence_direct_sum(eps: ExactSequence, other: ExactSequence) -> ExactSequence:
    if eps.degree != other.degree:
        raise ContractError(f"degrees differ: {eps.degree} vs {other.degree}")
    if eps.quiver != other.quiver:
        raise ContractError("sequences live on different quivers")
    return ExactSequence(tuple(morphism_sum(f, g) for f, g in zip(eps.maps, other.maps)))


def zero_sequence(n: int, N: Representation, L: Representation) -> ExactSequence:
    """The distinguished zero of ``Ext^n(N, L)``.

    Degree 1: the split sequence ``L -> L ⊕ N -> N``.  Degree n >= 2:
    ``L = L -> 0 -> ... -> 0 -> N = N``.
    """
    if n < 1:
        raise ContractError("degree must be at least 1")
    if n == 1:
        ds = direct_sum(L, N)
        return ExactSequence((ds.inclusions[0], ds.projections[1]))
    zero = Representation.zero(L.quiver)
    objs = [L, L] + [zero] * (n - 2) + [N, N]
    maps = [identity_morphism(L)]
    maps += [zero_morphism(a, b) for a, b in zip(objs[1:-2], objs[2:-1])]
    maps.append(identity_morphism(N))
    return ExactSequence(tuple(maps))


def sequence_components(seq: ExactSequence) -> list[list[int]]:
    st = seq.structure
    if st.size == 0:
        return []
    labels = components(st.size, st.funcs)
    groups: dict[int, list[int]] = {}
    for x, r in enumerate(labels):
        groups.setdefault(int(r), []).append(x)
    return [groups[r] for r in sorted(groups)]


def _object_of(seq: ExactSequence, x: int) -> tuple[int, int, int]:
    """(object index, vertex, element label) of a flat sequence element."""
    acc = 0
    for k, X in enumerate(seq.objects):
        if x < acc + X.total_dim:
            v, j = X.elements[x - acc]
            return k, v, j
        acc += X.total_dim
    raise IndexError(x)


def subsequence(seq: ExactSequence, keep: set[int]) -> ExactSequence:
    """Restrict every object to the listed flat elements (a union of components)."""
    objs = seq.objects
    per_obj: list[set] = [set() for _ in objs]
    for x in keep:
        k, v, j = _object_of(seq, x)
        per_obj[k].add((v, j))
    subs = [subrepresentation(X, s) for X, s in zip(objs, per_obj)]
    maps = []
    for k, f in enumerate(seq.maps):
        (A, inc_a), (B, inc_b) = subs[k], subs[k + 1]
        back = {}
        for v in B.quiver.vertices:
            for j, y in enumerate(inc_b.component(v).image_of, start=1):
                back[(v, y)] = j
        comps = []
        for v in A.quiver.vertices:
            imgs = []
            for y in inc_a.component(v).image_of:
                z = f(v, y)
                imgs.append(back[(v, z)] if z else 0)
            comps.append(imgs)
        maps.append(RepMorphism.from_lists(A, B, comps))
    return ExactSequence(tuple(maps))


def decompose_sequence(seq: ExactSequence) -> list[ExactSequence]:
    """Split into primitive summands (components of the element graph)."""
    return [subsequence(seq, set(c)) for c in sequence_components(seq)]


def is_primitive(seq: ExactSequence) -> bool:
    """No decomposition ``ε = ε1 ⊕ ε2`` with both summands nonzero."""
    if seq.is_zero():
        raise ContractError("the zero sequence is neither primitive nor decomposable")
    return len(sequence_components(seq)) == 1


def strip_inert(seq: ExactSequence) -> ExactSequence:
    """Drop the summands whose two ends are both zero.

    ``ε ⊕ Z ⇝ ε`` (project Z away) and ``ε ⇝ ε ⊕ Z`` (include), so the class of
    a sequence is unchanged.
    """
    st = seq.structure
    n_end = seq.left.total_dim
    start_n = st.size - seq.right.total_dim
    keep = set()
    for comp in sequence_components(seq):
        if any(x < n_end or x >= start_n for x in comp):
            keep.update(comp)
    if len(keep) == st.size:
        return seq
    return subsequence(seq, keep)


# -- ladders -----------------------------------------------------------------


def _end_allowed(eps: ExactSequence, other: ExactSequence) -> np.ndarray:
    a, b = eps.structure, other.structure
    allowed = class_allowed(a, b)
    nl = eps.left.total_dim
    nr = eps.right.total_dim
    for x in range(nl):
        allowed[x, :] = False
        allowed[x, x + 1] = True
    for r in range(nr):
        x, y = a.size - nr + r, b.size - nr + r
        allowed[x, :] = False
        allowed[x, y + 1] = True
    return allowed


def _check_same_ends(eps: ExactSequence, other: ExactSequence) -> None:
    if eps.degree != other.degree:
        raise ContractError("sequences have different degrees")
    if eps.left != other.left or eps.right != other.right:
        raise ContractError("sequences must share both end terms exactly")


def ladders(eps: ExactSequence, other: ExactSequence, limit: int = 0) -> list[tuple[RepMorphism, ...]]:
    """Middle morphisms ``f_i: M_i -> M'_i`` commuting with identities at the ends."""
    _check_same_ends(eps, other)
    rows = find_maps(eps.structure, other.structure, _end_allowed(eps, other), limit=limit)
    out = []
    for row in rows:
        out.append(_ladder_from_row(eps, other, row))
    return out


def _ladder_from_row(eps, other, row) -> tuple[RepMorphism, ...]:
    mids, omids = eps.middles, other.middles
    off = eps.left.total_dim
    ooff = other.left.total_dim
    result = []
    for M, Mo in zip(mids, omids):
        comps = []
        for v in M.quiver.vertices:
            imgs = []
            for j in range(1, M.dims[v - 1] + 1):
                t = int(row[off + M.flat(v, j)])
                imgs.append(0 if t < 0 else t - ooff - Mo.offsets[v - 1] + 1)
            comps.append(imgs)
        result.append(RepMorphism.from_lists(M, Mo, comps))
        off += M.total_dim
        ooff += Mo.total_dim
    return tuple(result)


def leadsto(eps: ExactSequence, other: ExactSequence) -> bool:
    """``ε ⇝ ε'``."""
    _check_same_ends(eps, other)
    return len(find_maps(eps.structure, other.structure, _end_allowed(eps, other), limit=1)) > 0


def isomorphic_sequences(eps: ExactSequence, other: ExactSequence) -> bool:
    _check_same_ends(eps, other)
    if [M.dims for M in eps.middles] != [M.dims for M in other.middles]:
        return False
    return sequence_key(eps) == sequence_key(other)


# -- canonical form of a sequence with fixed ends ------------------------------


def canonical_sequence(seq: ExactSequence) -> tuple[ExactSequence, tuple]:
    """Relabel the middle terms canonically; ends keep their labels."""
    st = seq.structure
    nl, nr = seq.left.total_dim, seq.right.total_dim
    pinned = set(range(nl)) | set(range(st.size - nr, st.size))
    comps = sequence_components(seq)
    anchored, free = [], []
    for comp in comps:
        p = [x for x in comp if x in pinned]
        if p:
            anchored.append((min(p), traverse(min(p), st.funcs, st.pre)))
        else:
            best = None
            for s in comp:
                order = traverse(s, st.funcs, st.pre)
                code = traversal_code(order, st.classes, st.funcs)
                if best is None or code < best[0]:
                    best = (code, order)
            free.append(best)
    anchored.sort()
    free.sort(key=lambda b: b[0])
    orders = [o for _, o in anchored] + [o for _, o in free]

    counters: dict[tuple[int, int], int] = {}
    new_label: dict[int, int] = {}
    for order in orders:
        for x in order:
            if x in pinned:
                continue
            cls = st.classes[x]
            counters[cls] = counters.get(cls, 0) + 1
            new_label[x] = counters[cls]

    objs = seq.objects
    offsets, acc = [], 0
    for X in objs:
        offsets.append(acc)
        acc += X.total_dim
    q = seq.quiver

    def lab(k: int, v: int, j: int) -> int:
        if j == 0:
            return 0
        if k == 0 or k == len(objs) - 1:
            return j
        return new_label[offsets[k] + objs[k].flat(v, j)]

    new_objs = [objs[0]]
    for k in range(1, len(objs) - 1):
        X = objs[k]
        maps = []
        for a, Xa in zip(q.arrows, X.maps):
            imgs = [0] * X.dims[a.source - 1]
            for j in range(1, X.dims[a.source - 1] + 1):
                imgs[lab(k, a.source, j) - 1] = lab(k, a.target, Xa(j))
            maps.append(F1Map.from_list(X.dims[a.source - 1], X.dims[a.target - 1], imgs))
        new_objs.append(Representation(q, X.dims, tuple(maps)))
    new_objs.append(objs[-1])
    new_maps = []
    for k, f in enumerate(seq.maps):
        X = objs[k]
        comps = []
        for v in q.vertices:
            imgs = [0] * X.dims[v - 1]
            for j in range(1, X.dims[v - 1] + 1):
                imgs[lab(k, v, j) - 1] = lab(k + 1, v, f(v, j))
            comps.append(imgs)
        new_maps.append(RepMorphism.from_lists(new_objs[k], new_objs[k + 1], comps))
    canon = ExactSequence(tuple(new_maps))
    key = (
        tuple(M.dims for M in canon.middles),
        tuple(tuple(m.image_of for m in M.maps) for M in canon.middles),
        tuple(f.key for f in canon.maps),
    )
    return canon, key


def sequence_key(seq: ExactSequence) -> tuple:
    return canonical_sequence(seq)[1]


# -- gluing data -------------------------------------------------------------


@dataclass(frozen=True)
class Gluing:
    """Images ``K_0 = L, K_1, ..., K_n = N`` plus, per level, where killed elements land.

    ``glue[i-1][arrow][y-1]`` is the element of ``K_{i-1}`` (at the arrow's
    target) hit by element ``y`` of ``K_i``; 0 when ``y`` is killed outright or
    not killed by ``K_i`` at all.
    """

    levels: tuple[Representation, ...]
    glue: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def degree(self) -> int:
        return len(self.levels) - 1


def _free_targets(K: Representation, arrow_idx: int, used: Sequence[int]) -> list[int]:
    a = K.quiver.arrows[arrow_idx]
    hit = set(K.maps[arrow_idx].image_of) | set(used)
    return [w for w in range(1, K.dims[a.target - 1] + 1) if w not in hit]


def _killed(K: Representation, arrow_idx: int) -> list[int]:
    return [y for y, img in enumerate(K.maps[arrow_idx].image_of, start=1) if img == 0]


def gluing_to_sequence(data: Gluing) -> ExactSequence:
    levels = data.levels
    q = levels[0].quiver
    n = data.degree
    mids = []
    for i in range(1, n + 1):
        A, B = levels[i - 1], levels[i]
        dims = tuple(a + b for a, b in zip(A.dims, B.dims))
        maps = []
        for idx, (arr, Aa, Ba) in enumerate(zip(q.arrows, A.maps, B.maps)):
            shift = A.dims[arr.target - 1]
            imgs = list(Aa.image_of)
            for y, img in enumerate(Ba.image_of, start=1):
                imgs.append(img + shift if img else data.glue[i - 1][idx][y - 1])
            maps.append(F1Map.from_list(dims[arr.source - 1], dims[arr.target - 1], imgs))
        mids.append(Representation(q, dims, tuple(maps)))
    objs = [levels[0]] + mids + [levels[-1]]
    maps = [RepMorphism.from_lists(objs[0], objs[1], [list(range(1, d + 1)) for d in levels[0].dims])]
    for i in range(1, n):
        A, B = levels[i - 1], levels[i]
        maps.append(
            RepMorphism.from_lists(
                objs[i], objs[i + 1], [[0] * a + list(range(1, b + 1)) for a, b in zip(A.dims, B.dims)]
            )
        )
    A, B = levels[n - 1], levels[n]
    maps.append(RepMorphism.from_lists(objs[n], objs[n + 1], [[0] * a + list(range(1, b + 1)) for a, b in zip(A.dims, B.dims)]))
    return ExactSequence(tuple(maps))


def sequence_to_gluing(seq: ExactSequence) -> Gluing:
    q = seq.quiver
    n = seq.degree
    objs = seq.objects
    # K_i as a subrepresentation of objs[i+1] (the image of maps[i]); K_n = N
    levels = [seq.left]
    img_labels = []  # per level i: dict (v, element of objs[i+1]) -> label in K_i
    for i in range(n + 1):
        f = seq.maps[i]
        hit = {(v, y) for v in q.vertices for y in f.component(v).image_of if y}
        labels = {}
        for v in q.vertices:
            c = 0
            for y in range(1, objs[i + 1].dims[v - 1] + 1):
                if (v, y) in hit:
                    c += 1
                    labels[(v, y)] = c
        if i == 0:
            labels = {(v, f(v, j)): j for v, j in seq.left.elements}
        img_labels.append(labels)
        if 1 <= i < n:
            levels.append(subrepresentation(objs[i + 1], hit)[0])
    levels.append(seq.right)
    glue = []
    for i in range(1, n + 1):
        M = objs[i]
        K_prev_labels = img_labels[i - 1]  # elements of M (=objs[i]) in K_{i-1}
        K_cur = levels[i]
        per_arrow = []
        for idx, (a, Ma) in enumerate(zip(q.arrows, M.maps)):
            row = [0] * K_cur.dims[a.source - 1]
            for j in range(1, M.dims[a.source - 1] + 1):
                if (a.source, j) in K_prev_labels:
                    continue
                z = seq.maps[i](a.source, j)
                y_label = img_labels[i][(a.source, z)] if i < n else z
                w = Ma(j)
                if w and (a.target, w) in K_prev_labels:
                    row[y_label - 1] = K_prev_labels[(a.target, w)]
            per_arrow.append(tuple(row))
        glue.append(tuple(per_arrow))
    return Gluing(tuple(levels), tuple(glue))


def _partial_injections(sources: list, targets: list) -> Iterator[dict]:
    """All partial injections between two lists, as dicts source -> target."""
    for k in range(min(len(sources), len(targets)) + 1):
        for dom in itertools.combinations(sources, k):
            for img in itertools.permutations(targets, k):
                yield dict(zip(dom, img))


def _append_block(K: Representation, B: Representation) -> Representation:
    return direct_sum(K, B).rep


def _grow(data: Gluing, blocks: Sequence[Representation], cap: int, attached: bool) -> Iterator[Gluing]:
    """All gluing data obtained by adding one block to one inner level."""
    levels = data.levels
    q = levels[0].quiver
    n = data.degree
    narrows = len(q.arrows)
    for i in range(1, n):
        below, here, above = levels[i - 1], levels[i], levels[i + 1]
        for B in blocks:
            if below.total_dim + here.total_dim + B.total_dim > cap:
                continue
            if here.total_dim + B.total_dim + above.total_dim > cap:
                continue
            new_here = _append_block(here, B)
            # downward: killed elements of B land on free elements of K_{i-1}
            down_opts = []
            for idx in range(narrows):
                a = q.arrows[idx]
                used = [w for w in data.glue[i - 1][idx] if w]
                shift = here.dims[a.source - 1]
                srcs = [shift + y for y in _killed(B, idx)]
                down_opts.append(list(_partial_injections(srcs, _free_targets(below, idx, used))))
            # upward: still-unglued killed elements of K_{i+1} land on free elements of B
            up_opts = []
            for idx in range(narrows):
                a = q.arrows[idx]
                row = data.glue[i][idx]
                srcs = [y for y in _killed(above, idx) if row[y - 1] == 0]
                shift = here.dims[a.target - 1]
                tg = [shift + w for w in _free_targets(B, idx, [])]
                up_opts.append(list(_partial_injections(srcs, tg)))
            for down in itertools.product(*down_opts):
                for up in itertools.product(*up_opts):
                    if attached and not any(down) and not any(up):
                        continue
                    glue = list(data.glue)
                    glue[i - 1] = tuple(
                        tuple(data.glue[i - 1][idx]) + tuple(
                            down[idx].get(here.dims[q.arrows[idx].source - 1] + y, 0)
                            for y in range(1, B.dims[q.arrows[idx].source - 1] + 1)
                        )
                        for idx in range(narrows)
                    )
                    glue[i] = tuple(
                        tuple(up[idx].get(y, w) for y, w in enumerate(data.glue[i][idx], start=1))
                        for idx in range(narrows)
                    )
                    new_levels = levels[:i] + (new_here,) + levels[i + 1 :]
                    yield Gluing(new_levels, tuple(glue))


def _degree_one_gluings(N: Representation, L: Representation) -> Iterator[Gluing]:
    q = L.quiver
    opts = []
    for idx in range(len(q.arrows)):
        opts.append(list(_partial_injections(_killed(N, idx), _free_targets(L, idx, []))))
    for choice in itertools.product(*opts):
        glue = tuple(
            tuple(choice[idx].get(y, 0) for y in range(1, N.dims[q.arrows[idx].source - 1] + 1))
            for idx in range(len(q.arrows))
        )
        yield Gluing((L, N), (glue,))


def _empty_gluing(n: int, N: Representation, L: Representation) -> Gluing:
    q = L.quiver
    zero = Representation.zero(q)
    levels = (L,) + (zero,) * (n - 1) + (N,)
    glue = []
    for i in range(1, n + 1):
        K = levels[i]
        glue.append(tuple(tuple([0] * K.dims[a.source - 1]) for a in q.arrows))
    return Gluing(levels, tuple(glue))


def forced_minimum(n: int, N: Representation, L: Representation) -> int:
    if n == 1:
        return L.total_dim + N.total_dim
    return max(L.total_dim, N.total_dim)


def default_cap(n: int, N: Representation, L: Representation) -> int:
    env = os.environ.get("F1REP_DEFAULT_CAP")
    if env:
        return max(int(env), forced_minimum(n, N, L))
    return L.total_dim + N.total_dim + DEFAULT_CAP_SLACK


def enumerate_sequences(
    n: int, N: Representation, L: Representation, cap: int, reduced: bool = True
) -> dict[tuple, ExactSequence]:
    """Isomorphism classes of n-extensions of N by L with middle terms of total dim <= cap.

    With ``reduced`` only sequences in which every element is connected to an
    end term are produced; each sequence is ⇝-equivalent to its reduced part.
    """
    if N.quiver != L.quiver:
        raise ContractError("end terms live on different quivers")
    if n < 1:
        raise ContractError("degree must be at least 1")
    if cap < forced_minimum(n, N, L):
        raise ContractError(f"cap {cap} is below the forced minimum {forced_minimum(n, N, L)}")
    found: dict[tuple, ExactSequence] = {}
    if n == 1:
        for g in _degree_one_gluings(N, L):
            seq = gluing_to_sequence(g)
            canon, key = canonical_sequence(seq)
            found[key] = canon
        return found
    blocks = [B for B in indecomposables(L.quiver, cap) if B.total_dim <= cap]
    start = gluing_to_sequence(_empty_gluing(n, N, L))
    canon, key = canonical_sequence(start)
    found[key] = canon
    frontier = [canon]
    while frontier:
        nxt = []
        for seq in frontier:
            for g in _grow(sequence_to_gluing(seq), blocks, cap, attached=reduced):
                canon, key = canonical_sequence(gluing_to_sequence(g))
                if key not in found:
                    found[key] = canon
                    nxt.append(canon)
        frontier = nxt
    return dict(sorted(found.items()))


# -- Ext as a pointed set ----------------------------------------------------


@dataclass
class ExtClassSet:
    degree: int
    N: Representation
    L: Representation
    classes: list[list[ExactSequence]]
    zero_class: int
    cap: int
    saturated: bool
    next_class_count: int | None = None
    keys: dict = field(default_factory=dict, repr=False)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def dim(self) -> int:
        return self.class_count - 1

    @property
    def witnesses(self) -> list[ExactSequence]:
        return [c[0] for c in self.classes]

    def class_of(self, seq: ExactSequence) -> int | None:
        """Index of the class containing ``seq``; None when it exceeds the cap."""
        if seq.left != self.L or seq.right != self.N or seq.degree != self.degree:
            raise ContractError("sequence does not belong to this Ext set")
        return self.keys.get(sequence_key(strip_inert(seq)))

    def to_json(self, witnesses: bool = True) -> dict:
        out = {
            "degree": self.degree,
            "dim": self.dim,
            "class_count": self.class_count,
            "zero_class": self.zero_class,
            "cap": self.cap,
            "saturated": self.saturated,
            "next_cap_class_count": self.next_class_count,
            "sequence_count": sum(len(c) for c in self.classes),
        }
        if witnesses:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        return out


def _map_pairs(fn, pairs, threads: int | None):
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(pairs) < 2:
        return [fn(*p) for p in pairs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: fn(*p), pairs))


def _classes(seqs: list[ExactSequence], threads: int | None) -> list[list[int]]:
    """Components of the undirected ⇝ graph on ``seqs``."""
    uf = UnionFind(range(len(seqs)))
    for a in range(len(seqs)):
        todo = [b for b in range(a + 1, len(seqs)) if uf.find(a) != uf.find(b)]
        if not todo:
            continue

        def linked(x, y):
            return leadsto(seqs[x], seqs[y]) or leadsto(seqs[y], seqs[x])

        for b, ok in zip(todo, _map_pairs(linked, [(a, b) for b in todo], threads)):
            if ok:
                uf.union(a, b)
    return uf.groups()


def _ext_at(n: int, N: Representation, L: Representation, cap: int, reduced: bool, threads):
    found = enumerate_sequences(n, N, L, cap, reduced=reduced)
    keys = list(found)
    seqs = [found[k] for k in keys]
    groups = _classes(seqs, threads)
    zero_key = sequence_key(strip_inert(zero_sequence(n, N, L)))
    zero_idx = keys.index(zero_key)
    groups = [sorted(g) for g in groups]
    groups.sort(key=lambda g: (zero_idx not in g, g[0]))
    classes = [[seqs[i] for i in g] for g in groups]
    index = {}
    for ci, g in enumerate(groups):
        for i in g:
            index[keys[i]] = ci
    return classes, index


def ext(
    n: int,
    N: Representation,
    L: Representation,
    cap: int | None = None,
    *,
    reduced: bool = True,
    check_saturation: bool = True,
    threads: int | None = None,
) -> ExtClassSet:
    """``Ext^n(N, L)``: classes of sequences ``L >-> ... ->> N``.

    Middle terms are bounded by total dimension ``cap``.  ``saturated`` records
    whether ``cap + 1`` gives the same number of classes.  Degree 0 is Hom.
    """
    if N.quiver != L.quiver:
        raise ContractError("end terms live on different quivers")
    if n == 0:
        homs = enumerate_morphisms(N, L)
        return ExtClassSet(0, N, L, [[h] for h in homs], 0, 0, True, len(homs))
    if cap is None:
        cap = max(default_cap(n, N, L), forced_minimum(n, N, L))
    classes, index = _ext_at(n, N, L, cap, reduced, threads)
    next_count = None
    if n == 1:
        saturated = True
        next_count = len(classes)
    elif check_saturation:
        more, _ = _ext_at(n, N, L, cap + 1, reduced, threads)
        next_count = len(more)
        saturated = next_count == len(classes)
    else:
        saturated = False
    return ExtClassSet(n, N, L, classes, 0, cap, saturated, next_count, index)


def ext_dim(n: int, N: Representation, L: Representation, cap: int | None = None, **kw) -> int:
    return ext(n, N, L, cap, **kw).dim


def ladder_compose(f: Sequence[RepMorphism], g: Sequence[RepMorphism]) -> tuple[RepMorphism, ...]:
    return tuple(compose_morphisms(b, a) for a, b in zip(f, g))
