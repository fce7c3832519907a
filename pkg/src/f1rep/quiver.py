"""Quivers, their F1-representations, and morphisms between representations."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ContractError, InputError, UnsupportedShapeError
from .f1 import F1Map, PointedSet, compose, identity_map, zero_map
from .search import Structure, class_allowed, find_maps


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """Vertices are ``1..vertex_count``; arrows keep their input order."""

    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if self.vertex_count < 1:
            raise InputError("vertices", "a quiver needs at least one vertex")
        ids = set()
        for idx, a in enumerate(arrows):
            for end in ("source", "target"):
                v = getattr(a, end)
                if not 1 <= v <= self.vertex_count:
                    raise InputError(f"arrows[{idx}].{end}", f"vertex {v} outside 1..{self.vertex_count}")
            if a.id in ids:
                raise InputError(f"arrows[{idx}].id", f"duplicate arrow id {a.id!r}")
            ids.add(a.id)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def arrow_index(self, arrow_id: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.id == arrow_id:
                return i
        raise KeyError(arrow_id)

    @cached_property
    def linear_order(self) -> int | None:
        """``n`` if this is the linear quiver ``n -> n-1 -> ... -> 1``, else None."""
        n = self.vertex_count
        if len(self.arrows) != n - 1:
            return None
        if sorted((a.source, a.target) for a in self.arrows) != [(i + 1, i) for i in range(1, n)]:
            return None
        return n

    @property
    def is_linear(self) -> bool:
        return self.linear_order is not None

    def linear_arrow(self, i: int) -> int:
        """Index of the arrow ``i+1 -> i`` on a linear quiver."""
        for idx, a in enumerate(self.arrows):
            if a.source == i + 1 and a.target == i:
                return idx
        raise UnsupportedShapeError(f"no arrow {i + 1} -> {i}")

    def is_tree(self) -> bool:
        n = self.vertex_count
        if len(self.arrows) != n - 1:
            return False
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Quiver":
        if "vertices" not in data:
            raise InputError("vertices", "missing field")
        arrows = []
        for idx, a in enumerate(data.get("arrows", [])):
            try:
                arrows.append(Arrow(str(a["id"]), int(a["source"]), int(a["target"])))
            except KeyError as exc:
                raise InputError(f"arrows[{idx}].{exc.args[0]}", "missing field") from None
        return cls(int(data["vertices"]), tuple(arrows))


def linear_quiver(n: int) -> Quiver:
    """``n -> n-1 -> ... -> 1`` with arrow ``a{i}: i+1 -> i``."""
    return Quiver(n, tuple(Arrow(f"a{i}", i + 1, i) for i in range(1, n)))


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[F1Map, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", tuple(self.maps))
        q = self.quiver
        if len(dims) != q.vertex_count:
            raise InputError("dims", f"expected {q.vertex_count} entries, got {len(dims)}")
        for v, d in enumerate(dims, start=1):
            if d < 0:
                raise InputError(f"dims[{v - 1}]", "dimension must be non-negative")
        if len(self.maps) != len(q.arrows):
            raise InputError("maps", f"expected {len(q.arrows)} arrow maps, got {len(self.maps)}")
        for a, m in zip(q.arrows, self.maps):
            if m.source.dim != dims[a.source - 1] or m.target.dim != dims[a.target - 1]:
                raise InputError(
                    f"maps.{a.id}",
                    f"map is {m.source.dim}->{m.target.dim} but arrow needs "
                    f"{dims[a.source - 1]}->{dims[a.target - 1]}",
                )

    @classmethod
    def build(cls, quiver: Quiver, dims: Sequence[int], maps: Mapping[str, Sequence[int]] | None = None):
        maps = maps or {}
        if len(dims) != quiver.vertex_count:
            raise InputError("dims", f"expected {quiver.vertex_count} entries, got {len(dims)}")
        unknown = set(maps) - {a.id for a in quiver.arrows}
        if unknown:
            raise InputError(f"maps.{sorted(unknown)[0]}", "no such arrow")
        arrow_maps = []
        for a in quiver.arrows:
            s, t = dims[a.source - 1], dims[a.target - 1]
            try:
                arrow_maps.append(F1Map.from_list(s, t, maps.get(a.id, [0] * s)))
            except InputError as exc:
                raise exc.nested(f"maps.{a.id}") from None
        return cls(quiver, tuple(dims), tuple(arrow_maps))

    @classmethod
    def zero(cls, quiver: Quiver) -> "Representation":
        return cls.build(quiver, [0] * quiver.vertex_count)

    def space(self, v: int) -> PointedSet:
        return PointedSet(self.dims[v - 1])

    def arrow_map(self, arrow_id: str) -> F1Map:
        return self.maps[self.quiver.arrow_index(arrow_id)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def flat(self, v: int, j: int) -> int:
        """Global index of element ``j >= 1`` at vertex ``v``."""
        return self.offsets[v - 1] + j - 1

    @cached_property
    def elements(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, j) for v in self.quiver.vertices for j in range(1, self.dims[v - 1] + 1))

    @cached_property
    def structure(self) -> Structure:
        funcs = np.full((len(self.maps), self.total_dim), -1, dtype=np.int64)
        for lab, (a, m) in enumerate(zip(self.quiver.arrows, self.maps)):
            for j, y in enumerate(m.image_of, start=1):
                if y:
                    funcs[lab, self.flat(a.source, j)] = self.flat(a.target, y)
        return Structure([v for v, _ in self.elements], funcs)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {a.id: list(m.image_of) for a, m in zip(self.quiver.arrows, self.maps)},
        }

    @classmethod
    def from_json(cls, quiver: Quiver, data) -> "Representation":
        if isinstance(data, str):
            return resolve_name(quiver, data)
        if "dims" not in data:
            raise InputError("dims", "missing field")
        return cls.build(quiver, [int(d) for d in data["dims"]], data.get("maps"))

    def __repr__(self) -> str:
        body = ", ".join(f"{a.id}={list(m.image_of)}" for a, m in zip(self.quiver.arrows, self.maps))
        return f"Representation(dims={list(self.dims)}{', ' + body if body else ''})"


DimensionVector = tuple


def dimension_vector(M: Representation) -> tuple[int, ...]:
    return M.dims


@dataclass(frozen=True)
class RepMorphism:
    source: Representation
    target: Representation
    components: tuple[F1Map, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        M, N = self.source, self.target
        if M.quiver != N.quiver:
            raise ContractError("morphism between representations of different quivers")
        for v, phi in zip(M.quiver.vertices, self.components):
            if phi.source.dim != M.dims[v - 1] or phi.target.dim != N.dims[v - 1]:
                raise ContractError(f"component at vertex {v} has the wrong shape")
        for a, Ma, Na in zip(M.quiver.arrows, M.maps, N.maps):
            phi_i, phi_j = self.components[a.source - 1], self.components[a.target - 1]
            for x in range(1, M.dims[a.source - 1] + 1):
                if phi_j(Ma(x)) != Na(phi_i(x)):
                    raise ContractError(f"square for arrow {a.id} does not commute at element {x}")

    @classmethod
    def from_lists(cls, M: Representation, N: Representation, comps: Sequence[Sequence[int]]):
        return cls(
            M,
            N,
            tuple(F1Map.from_list(M.dims[v - 1], N.dims[v - 1], c) for v, c in zip(M.quiver.vertices, comps)),
        )

    def component(self, v: int) -> F1Map:
        return self.components[v - 1]

    def __call__(self, v: int, x: int) -> int:
        return self.components[v - 1](x)

    @property
    def key(self) -> tuple:
        return tuple(c.image_of for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def to_json(self) -> dict:
        return {"components": [list(c.image_of) for c in self.components]}

    @classmethod
    def from_json(cls, M: Representation, N: Representation, data) -> "RepMorphism":
        comps = data["components"] if isinstance(data, Mapping) else data
        if len(comps) != M.quiver.vertex_count:
            raise InputError("components", "one component per vertex expected")
        return cls.from_lists(M, N, comps)


def identity_morphism(M: Representation) -> RepMorphism:
    return RepMorphism(M, M, tuple(identity_map(d) for d in M.dims))


def zero_morphism(M: Representation, N: Representation) -> RepMorphism:
    return RepMorphism(M, N, tuple(zero_map(a, b) for a, b in zip(M.dims, N.dims)))


def compose_morphisms(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    """``g ∘ f``."""
    if f.target != g.source:
        raise ContractError("morphisms are not composable")
    return RepMorphism(f.source, g.target, tuple(compose(b, a) for a, b in zip(f.components, g.components)))


def is_mono(phi: RepMorphism) -> bool:
    return all(c.is_injective() for c in phi.components)


def is_epi(phi: RepMorphism) -> bool:
    return all(c.is_surjective() for c in phi.components)


def is_iso(phi: RepMorphism) -> bool:
    return is_mono(phi) and is_epi(phi)


def _morphism_from_row(M: Representation, N: Representation, row) -> RepMorphism:
    comps = []
    for v in M.quiver.vertices:
        imgs = []
        for j in range(1, M.dims[v - 1] + 1):
            t = int(row[M.flat(v, j)])
            imgs.append(0 if t < 0 else t - N.offsets[v - 1] + 1)
        comps.append(F1Map.from_list(M.dims[v - 1], N.dims[v - 1], imgs))
    return RepMorphism(M, N, tuple(comps))


def _require_same_quiver(M: Representation, N: Representation) -> None:
    if M.quiver != N.quiver:
        raise ContractError("representations live on different quivers")


def enumerate_morphisms(M: Representation, N: Representation) -> list[RepMorphism]:
    """Every morphism ``M -> N``, zero included, sorted by component arrays."""
    _require_same_quiver(M, N)
    rows = find_maps(M.structure, N.structure)
    out = [_morphism_from_row(M, N, row) for row in rows]
    out.sort(key=lambda phi: phi.key)
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    """Number of nonzero morphisms, i.e. ``|Hom(M, N)| - 1``."""
    _require_same_quiver(M, N)
    return len(find_maps(M.structure, N.structure)) - 1


def find_isomorphism(M: Representation, N: Representation) -> RepMorphism | None:
    _require_same_quiver(M, N)
    if M.dims != N.dims:
        return None
    allowed = class_allowed(M.structure, N.structure)
    allowed[:, 0] = False
    rows = find_maps(M.structure, N.structure, allowed, limit=1)
    return _morphism_from_row(M, N, rows[0]) if len(rows) else None


class DirectSum(NamedTuple):
    rep: Representation
    inclusions: tuple[RepMorphism, RepMorphism]
    projections: tuple[RepMorphism, RepMorphism]


def direct_sum(M: Representation, N: Representation) -> DirectSum:
    """``M ⊕ N`` with N's elements placed after M's at every vertex."""
    _require_same_quiver(M, N)
    q = M.quiver
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    maps = []
    for a, Ma, Na in zip(q.arrows, M.maps, N.maps):
        shift = M.dims[a.target - 1]
        imgs = list(Ma.image_of) + [y + shift if y else 0 for y in Na.image_of]
        maps.append(F1Map.from_list(dims[a.source - 1], dims[a.target - 1], imgs))
    S = Representation(q, dims, tuple(maps))
    inc_m = RepMorphism.from_lists(M, S, [list(range(1, d + 1)) for d in M.dims])
    inc_n = RepMorphism.from_lists(N, S, [list(range(m + 1, m + d + 1)) for m, d in zip(M.dims, N.dims)])
    pr_m = RepMorphism.from_lists(S, M, [list(range(1, m + 1)) + [0] * d for m, d in zip(M.dims, N.dims)])
    pr_n = RepMorphism.from_lists(S, N, [[0] * m + list(range(1, d + 1)) for m, d in zip(M.dims, N.dims)])
    return DirectSum(S, (inc_m, inc_n), (pr_m, pr_n))


def direct_sum_all(reps: Iterable[Representation], quiver: Quiver | None = None) -> Representation:
    reps = list(reps)
    if not reps:
        if quiver is None:
            raise ContractError("empty direct sum needs a quiver")
        return Representation.zero(quiver)
    out = reps[0]
    for R in reps[1:]:
        out = direct_sum(out, R).rep
    return out


def subrepresentation(M: Representation, keep: Iterable[tuple[int, int]]) -> tuple[Representation, RepMorphism]:
    """Restrict M to an arrow-closed set of elements; returns it with its inclusion."""
    keep = set(keep)
    q = M.quiver
    labels: dict[tuple[int, int], int] = {}
    dims = []
    for v in q.vertices:
        count = 0
        for j in range(1, M.dims[v - 1] + 1):
            if (v, j) in keep:
                count += 1
                labels[(v, j)] = count
        dims.append(count)
    maps = []
    for a, Ma in zip(q.arrows, M.maps):
        imgs = []
        for j in range(1, M.dims[a.source - 1] + 1):
            if (a.source, j) not in labels:
                continue
            y = Ma(j)
            if y and (a.target, y) not in labels:
                raise ContractError(f"element set is not closed under arrow {a.id}")
            imgs.append(labels[(a.target, y)] if y else 0)
        maps.append(F1Map.from_list(dims[a.source - 1], dims[a.target - 1], imgs))
    S = Representation(q, tuple(dims), tuple(maps))
    inc = []
    for v in q.vertices:
        back = [j for j in range(1, M.dims[v - 1] + 1) if (v, j) in labels]
        inc.append(F1Map.from_list(dims[v - 1], M.dims[v - 1], back))
    return S, RepMorphism(S, M, tuple(inc))


# -- canonical forms ---------------------------------------------------------


def traverse(start: int, funcs: np.ndarray, pre: np.ndarray) -> list[int]:
    """Deterministic breadth-first order of the component containing ``start``.

    Every element has at most one out- and one in-neighbour per label, so the
    order depends only on the start element and the labelled structure.
    """
    seen = {start}
    order = [start]
    queue = deque([start])
    n_lab = funcs.shape[0]
    while queue:
        x = queue.popleft()
        for lab in range(n_lab):
            for y in (funcs[lab, x], pre[lab, x]):
                y = int(y)
                if y >= 0 and y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
    return order


def traversal_code(order: list[int], classes: Sequence, funcs: np.ndarray) -> tuple:
    pos = {x: i for i, x in enumerate(order)}
    return tuple(
        (classes[x], tuple(pos[int(y)] if y >= 0 else -1 for y in funcs[:, x])) for x in order
    )


def canonical_component(members: Sequence[int], classes, funcs, pre) -> tuple[tuple, list[int]]:
    """Smallest traversal code over all start elements, with its element order."""
    best = None
    for s in members:
        order = traverse(s, funcs, pre)
        code = traversal_code(order, classes, funcs)
        if best is None or code < best[0]:
            best = (code, order)
    return best


def element_components(M: Representation) -> list[list[int]]:
    """Components of the element graph as lists of flat indices (sorted)."""
    st = M.structure
    if st.size == 0:
        return []
    from .search import components

    labels = components(st.size, st.funcs)
    groups: dict[int, list[int]] = {}
    for x, r in enumerate(labels):
        groups.setdefault(int(r), []).append(x)
    return [groups[r] for r in sorted(groups)]


def relabel_by_order(M: Representation, blocks: Sequence[Sequence[int]]) -> tuple[Representation, RepMorphism]:
    """Renumber elements vertex-wise following the concatenated ``blocks`` order."""
    q = M.quiver
    new_label: dict[int, int] = {}
    counters = [0] * q.vertex_count
    for block in blocks:
        for x in block:
            v = M.elements[x][0]
            counters[v - 1] += 1
            new_label[x] = counters[v - 1]
    comps = []
    for v in q.vertices:
        comps.append([new_label[M.flat(v, j)] for j in range(1, M.dims[v - 1] + 1)])
    maps = []
    for a, Ma in zip(q.arrows, M.maps):
        imgs = [0] * M.dims[a.source - 1]
        for j in range(1, M.dims[a.source - 1] + 1):
            y = Ma(j)
            imgs[new_label[M.flat(a.source, j)] - 1] = new_label[M.flat(a.target, y)] if y else 0
        maps.append(F1Map.from_list(M.dims[a.source - 1], M.dims[a.target - 1], imgs))
    C = Representation(q, M.dims, tuple(maps))
    iso = RepMorphism.from_lists(M, C, comps)
    return C, iso


def canonical_blocks(M: Representation) -> list[tuple[tuple, list[int]]]:
    st = M.structure
    blocks = [canonical_component(c, st.classes, st.funcs, st.pre) for c in element_components(M)]
    blocks.sort(key=lambda b: b[0])
    return blocks


def canonical_form(M: Representation) -> tuple[Representation, RepMorphism]:
    """Canonical representative of M's isomorphism class and an iso ``M -> C``."""
    blocks = canonical_blocks(M)
    return relabel_by_order(M, [order for _, order in blocks])


def canonical_key(M: Representation) -> tuple:
    C, _ = canonical_form(M)
    return (C.dims, tuple(m.image_of for m in C.maps))


def isomorphic(M: Representation, N: Representation) -> bool:
    _require_same_quiver(M, N)
    return M.dims == N.dims and canonical_key(M) == canonical_key(N)


def relabel(M: Representation, perms: Mapping[int, Sequence[int]]) -> tuple[Representation, RepMorphism]:
    """Apply vertex-wise permutations (``perms[v][j-1]`` is the new label of j)."""
    q = M.quiver
    comps = []
    for v in q.vertices:
        p = list(perms.get(v, range(1, M.dims[v - 1] + 1)))
        if sorted(p) != list(range(1, M.dims[v - 1] + 1)):
            raise ContractError(f"not a permutation at vertex {v}")
        comps.append(p)
    maps = []
    for a, Ma in zip(q.arrows, M.maps):
        ps, pt = comps[a.source - 1], comps[a.target - 1]
        imgs = [0] * M.dims[a.source - 1]
        for j in range(1, M.dims[a.source - 1] + 1):
            y = Ma(j)
            imgs[ps[j - 1] - 1] = pt[y - 1] if y else 0
        maps.append(F1Map.from_list(M.dims[a.source - 1], M.dims[a.target - 1], imgs))
    R = Representation(q, M.dims, tuple(maps))
    return R, RepMorphism.from_lists(M, R, comps)


# -- named representations ---------------------------------------------------


@dataclass(frozen=True)
class IntervalSpec:
    k: int
    l: int


def build_interval(q: Quiver, spec: IntervalSpec | tuple[int, int]) -> Representation:
    """The interval module ``[k, l]`` on the linear quiver; zero when ``l < k``."""
    k, l = (spec.k, spec.l) if isinstance(spec, IntervalSpec) else spec
    n = q.linear_order
    if n is None:
        raise UnsupportedShapeError("interval modules need the linear quiver n -> ... -> 1")
    if l < k:
        return Representation.zero(q)
    if not 1 <= k <= l <= n:
        raise InputError("interval", f"[{k},{l}] is not inside 1..{n}")
    return support_representation(q, range(k, l + 1))


def support_representation(q: Quiver, vertices: Iterable[int], arrows: Iterable[int] | None = None) -> Representation:
    """F1 on each listed vertex, identity on the listed arrows (default: all arrows inside)."""
    vs = set(vertices)
    if arrows is None:
        arrows = [i for i, a in enumerate(q.arrows) if a.source in vs and a.target in vs]
    arrows = set(arrows)
    dims = [1 if v in vs else 0 for v in q.vertices]
    maps = {a.id: [1] for i, a in enumerate(q.arrows) if i in arrows}
    for a in q.arrows:
        if a.id not in maps:
            maps[a.id] = [0] * dims[a.source - 1]
    return Representation.build(q, dims, maps)


def reachable(q: Quiver, v: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for a in q.arrows:
            if a.source == x and a.target not in seen:
                seen.add(a.target)
                stack.append(a.target)
    return seen


_INTERVAL = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]$")
_NAMED = re.compile(r"^([SP])_?(\d+)$")


def resolve_name(q: Quiver, name: str, named: Mapping[str, Representation] | None = None) -> Representation:
    """Resolve ``[k,l]``, ``S_i``, ``P_i``, ``0``, fixture names and ``+``/``⊕`` sums."""
    text = name.strip()
    parts = [p for p in re.split(r"\s*(?:\+|⊕)\s*", text) if p]
    if len(parts) > 1:
        return direct_sum_all([resolve_name(q, p, named) for p in parts], q)
    if named and text in named:
        return named[text]
    if text == "0":
        return Representation.zero(q)
    m = _INTERVAL.match(text)
    if m:
        return build_interval(q, (int(m.group(1)), int(m.group(2))))
    m = _NAMED.match(text)
    if m:
        kind, v = m.group(1), int(m.group(2))
        if not 1 <= v <= q.vertex_count:
            raise InputError("representation", f"{text}: vertex {v} does not exist")
        if kind == "S":
            return support_representation(q, [v], [])
        if any(a.source == a.target for a in q.arrows) or not q.is_tree():
            raise UnsupportedShapeError(f"{text}: P_i names are only provided on tree quivers")
        return support_representation(q, reachable(q, v))
    raise InputError("representation", f"cannot resolve name {text!r}")
