"""Krull–Schmidt decomposition, tree classification, epi splitting, projectivity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .catalog import connected_subquivers, indecomposables
from .errors import ContractError, UnsupportedShapeError
from .f1 import dual
from .homology import cokernel, gluing_to_sequence, morphism_sum
from .quiver import (
    Quiver,
    Representation,
    RepMorphism,
    build_interval,
    canonical_form,
    canonical_key,
    compose_morphisms,
    direct_sum_all,
    element_components,
    enumerate_morphisms,
    find_isomorphism,
    is_epi,
    subrepresentation,
    support_representation,
)
from .search import class_allowed, find_maps


@dataclass
class DecompositionResult:
    summands: list[Representation]
    witness: RepMorphism  # iso from the direct sum of summands to the input

    def to_json(self) -> dict:
        return {
            "summands": [S.to_json() for S in self.summands],
            "witness": self.witness.to_json(),
        }


def component_subreps(M: Representation) -> list[tuple[Representation, RepMorphism]]:
    """Each element-graph component as a subrepresentation with its inclusion."""
    return [subrepresentation(M, [M.elements[x] for x in comp]) for comp in element_components(M)]


def decompose(M: Representation) -> DecompositionResult:
    summands = [canonical_form(S)[0] for S, _ in component_subreps(M)]
    summands.sort(key=canonical_key)
    total = direct_sum_all(summands, M.quiver)
    iso = find_isomorphism(total, M)
    if iso is None:
        raise AssertionError("direct sum of components is not isomorphic to the input")
    return DecompositionResult(summands, iso)


@dataclass(frozen=True)
class Subquiver:
    vertices: frozenset[int]
    arrows: frozenset[int]


@dataclass
class TreeClassification:
    subquivers: list[Subquiver]
    representations: list[Representation]


def tree_classification(q: Quiver) -> TreeClassification:
    if not q.is_tree():
        raise UnsupportedShapeError("the classification applies to tree quivers only")
    subs = [Subquiver(vs, arrows) for vs, arrows in connected_subquivers(q)]
    reps = [support_representation(q, s.vertices, s.arrows) for s in subs]
    return TreeClassification(subs, reps)


def tree_indecomposables(q: Quiver) -> list[Representation]:
    """One indecomposable per connected subquiver of a tree quiver."""
    return tree_classification(q).representations


def interval_of(M: Representation) -> tuple[int, int]:
    """``(k, l)`` for an interval module on the linear quiver."""
    support = [v for v in M.quiver.vertices if M.dims[v - 1]]
    if not support or any(M.dims[v - 1] != 1 for v in support):
        raise ContractError("not an interval module")
    k, l = min(support), max(support)
    if canonical_key(M) != canonical_key(build_interval(M.quiver, (k, l))):
        raise ContractError("not an interval module")
    return k, l


# -- splitting an epimorphism --------------------------------------------------


@dataclass
class EpiSplitting:
    M1: Representation
    M2: Representation
    f1: RepMorphism
    f2: RepMorphism
    i0: int
    inclusions: tuple[RepMorphism, RepMorphism]
    n_inclusions: tuple[RepMorphism, RepMorphism]


def split_epi(f: RepMorphism, n1: Iterable[tuple[int, int]]) -> EpiSplitting:
    """Split an epi ``f: M ->> N1 ⊕ N2`` along a summand ``N1 ≅ [k, l]``.

    ``n1`` lists the elements ``(vertex, label)`` of N spanning the summand.
    The part of M over N1 is built from the top: the unique preimage of N1's
    top element, then its images under the arrow maps going down.
    """
    M, N = f.source, f.target
    q = M.quiver
    if q.linear_order is None:
        raise UnsupportedShapeError("splitting needs the linear quiver")
    if not is_epi(f):
        raise ContractError("f is not an epimorphism")
    n1 = set(n1)
    N1, inc1 = subrepresentation(N, n1)
    rest = set(N.elements) - n1
    N2, inc2 = subrepresentation(N, rest)
    if len(element_components(N1)) != 1:
        raise ContractError("selected elements do not span an indecomposable summand")
    k, l = interval_of(N1)

    top = next(y for v, y in n1 if v == l)
    m = dual(f.component(l))(top)
    chain = {(l, m)}
    v, x = l, m
    while v > 1:
        x = M.maps[q.linear_arrow(v - 1)](x)
        if not x:
            break
        v -= 1
        chain.add((v, x))
    i0 = min(v for v, _ in chain)
    M1, inc_m1 = subrepresentation(M, chain)
    M2, inc_m2 = subrepresentation(M, set(M.elements) - chain)
    f1 = _restrict(f, inc_m1, inc1)
    f2 = _restrict(f, inc_m2, inc2)
    if not is_epi(f2):
        raise AssertionError("complementary block is not an epimorphism")
    return EpiSplitting(M1, M2, f1, f2, i0, (inc_m1, inc_m2), (inc1, inc2))


def _restrict(f: RepMorphism, inc_src: RepMorphism, inc_tgt: RepMorphism) -> RepMorphism:
    """The morphism between subobjects through which ``f`` restricts."""
    A, B = inc_src.source, inc_tgt.source
    comps = []
    for v in A.quiver.vertices:
        back = {y: j for j, y in enumerate(inc_tgt.component(v).image_of, start=1)}
        imgs = []
        for x in inc_src.component(v).image_of:
            z = f(v, x)
            if z and z not in back:
                raise ContractError("f does not respect the chosen decomposition")
            imgs.append(back.get(z, 0))
        comps.append(imgs)
    return RepMorphism.from_lists(A, B, comps)


# -- projectivity ------------------------------------------------------------

PROJECTIVE = "projective"
NOT_PROJECTIVE = "not_projective"
PROJECTIVE_UP_TO_CAP = "projective_up_to_cap"


@dataclass
class LiftingWitness:
    """An epi ``f: M ->> N`` and ``g: P -> N`` admitting no ``h`` with ``f ∘ h = g``."""

    epi: RepMorphism
    g: RepMorphism

    def to_json(self) -> dict:
        return {
            "M": self.epi.source.to_json(),
            "N": self.epi.target.to_json(),
            "epi": self.epi.to_json(),
            "g": self.g.to_json(),
        }


@dataclass
class ProjectivityVerdict:
    status: str
    method: str
    cap: tuple[int, ...] | None = None
    witness: LiftingWitness | None = None
    cases_checked: int = 0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "cap": list(self.cap) if self.cap is not None else None,
            "cases_checked": self.cases_checked,
            "witness": self.witness.to_json() if self.witness else None,
        }


def find_lift(P: Representation, f: RepMorphism, g: RepMorphism) -> RepMorphism | None:
    """Some ``h: P -> M`` with ``f ∘ h == g``, or None."""
    M, N = f.source, f.target
    if g.source != P or g.target != N:
        raise ContractError("g must go from P to the target of f")
    allowed = class_allowed(P.structure, M.structure)
    for x, (v, j) in enumerate(P.elements):
        want = g(v, j)
        for t in range(1, M.dims[v - 1] + 1):
            allowed[x, M.flat(v, t) + 1] = f(v, t) == want
        allowed[x, 0] = want == 0
    rows = find_maps(P.structure, M.structure, allowed, limit=1)
    if not len(rows):
        return None
    comps = []
    for v in P.quiver.vertices:
        imgs = []
        for j in range(1, P.dims[v - 1] + 1):
            t = int(rows[0][P.flat(v, j)])
            imgs.append(0 if t < 0 else t - M.offsets[v - 1] + 1)
        comps.append(imgs)
    return RepMorphism.from_lists(P, M, comps)


def verify_witness(P: Representation, witness: LiftingWitness) -> bool:
    """Re-check a non-lifting witness by enumerating all of ``Hom(P, M)``."""
    f, g = witness.epi, witness.g
    if not is_epi(f) or g.source != P or g.target != f.target:
        return False
    return all(compose_morphisms(f, h) != g for h in enumerate_morphisms(P, f.source))


def arrows_injective(M: Representation) -> bool:
    return all(m.is_injective() for m in M.maps)


def _subrep_element_sets(P: Representation) -> list[frozenset]:
    """All arrow-closed element sets of P."""
    st = P.structure
    n = st.size
    out = []
    for mask in range(1 << n):
        ok = True
        for x in range(n):
            if mask >> x & 1:
                for lab in range(st.funcs.shape[0]):
                    y = st.funcs[lab, x]
                    if y >= 0 and not mask >> int(y) & 1:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(frozenset(P.elements[x] for x in range(n) if mask >> x & 1))
    return out


def _glued_kernels(Q: Representation, blocks: Sequence[Representation], cap: Sequence[int]):
    """Extensions ``K >-> M ->> Q`` where every block of K is glued to Q."""
    q = Q.quiver
    slots = sum(len([y for y in m.image_of if y == 0]) for m in Q.maps)
    room = [c - d for c, d in zip(cap, Q.dims)]
    if any(r < 0 for r in room):
        return

    def multisets(start, chosen, dims):
        yield chosen
        if len(chosen) == slots:
            return
        for i in range(start, len(blocks)):
            nd = [a + b for a, b in zip(dims, blocks[i].dims)]
            if all(d <= r for d, r in zip(nd, room)):
                yield from multisets(i, chosen + [blocks[i]], nd)

    from .homology import _degree_one_gluings

    for chosen in multisets(0, [], [0] * q.vertex_count):
        K = direct_sum_all(chosen, q)
        owner = {}
        offs = [0] * q.vertex_count
        for b, B in enumerate(chosen):
            for v in q.vertices:
                for j in range(1, B.dims[v - 1] + 1):
                    owner[(v, offs[v - 1] + j)] = b
                offs[v - 1] += B.dims[v - 1]
        for g in _degree_one_gluings(Q, K):
            touched = set()
            for idx, row in enumerate(g.glue[0]):
                t = q.arrows[idx].target
                touched.update(owner[(t, w)] for w in row if w)
            if len(touched) == len(chosen):
                yield gluing_to_sequence(g)


def lifting_search(P: Representation, cap: Sequence[int]) -> tuple[LiftingWitness | None, int]:
    """Look for an epi ``f: M ->> N`` (``dim M <= cap`` vertex-wise) and ``g: P -> N`` with no lift.

    It suffices to take g onto its image (a quotient of P), and to drop the
    summands of the kernel of f that are not glued to that image.
    """
    q = P.quiver
    blocks = [B for B in indecomposables(q, sum(cap)) if all(d <= c for d, c in zip(B.dims, cap))]
    checked = 0
    seen_quotients = set()
    for S in sorted(_subrep_element_sets(P), key=lambda s: (len(s), sorted(s)), reverse=True):
        sub, inc = subrepresentation(P, S)
        Q, g = cokernel(inc)
        key = (canonical_key(Q), tuple(sorted(S)))
        if key in seen_quotients:
            continue
        seen_quotients.add(key)
        for seq in _glued_kernels(Q, blocks, cap):
            f = seq.maps[1]
            checked += 1
            if find_lift(P, f, g) is None:
                return LiftingWitness(f, g), checked
    return None, checked


def _default_cap(P: Representation) -> tuple[int, ...]:
    return (P.total_dim + 2,) * P.quiver.vertex_count


def is_projective(P: Representation, cap: int | Sequence[int] | None = None, method: str = "auto") -> ProjectivityVerdict:
    """Decide projectivity.

    On the linear quiver the answer is exact: P is projective iff every arrow
    map is injective; a non-projective P gets an explicit witness.  Elsewhere
    (or with ``method="search"``) all epimorphisms up to ``cap`` are searched.
    """
    if cap is None:
        cap = _default_cap(P)
    elif isinstance(cap, int):
        cap = (cap,) * P.quiver.vertex_count
    cap = tuple(cap)
    if method not in {"auto", "search", "exact"}:
        raise ContractError(f"unknown method {method!r}")
    linear = P.quiver.linear_order is not None
    if method == "exact" and not linear:
        raise UnsupportedShapeError("the exact criterion is only known on the linear quiver")
    if linear and method != "search":
        if arrows_injective(P):
            return ProjectivityVerdict(PROJECTIVE, "arrow-injectivity")
        return ProjectivityVerdict(NOT_PROJECTIVE, "arrow-injectivity", witness=_linear_witness(P))
    witness, checked = lifting_search(P, cap)
    if witness is not None:
        return ProjectivityVerdict(NOT_PROJECTIVE, "bounded-search", cap, witness, checked)
    return ProjectivityVerdict(PROJECTIVE_UP_TO_CAP, "bounded-search", cap, None, checked)


def _linear_witness(P: Representation) -> LiftingWitness:
    """``[1, l] ->> [i, l]`` against a map from P onto a summand ``[i, l]`` with ``i > 1``."""
    q = P.quiver
    for S in decompose(P).summands:
        k, l = interval_of(S)
        if k == 1:
            continue
        top = build_interval(q, (1, l))
        f = next(h for h in enumerate_morphisms(top, S) if not h.is_zero())
        for g in enumerate_morphisms(P, S):
            if not g.is_zero() and find_lift(P, f, g) is None:
                return LiftingWitness(f, g)
    raise AssertionError("no witness although an arrow map is not injective")


def projective_cover_surjection(M: Representation) -> tuple[Representation, RepMorphism]:
    """A projective P with an epimorphism ``P ->> M`` (sum of ``[1,l] ->> [k,l]``)."""
    q = M.quiver
    if q.linear_order is None:
        raise UnsupportedShapeError("enough projectives is only guaranteed on the linear quiver")
    dec = decompose(M)
    if not dec.summands:
        zero = Representation.zero(q)
        return zero, RepMorphism.from_lists(zero, M, [[] for _ in q.vertices])
    pieces = []
    for S in dec.summands:
        k, l = interval_of(S)
        top = build_interval(q, (1, l))
        pieces.append(next(h for h in enumerate_morphisms(top, S) if not h.is_zero()))
    epi = pieces[0]
    for piece in pieces[1:]:
        epi = morphism_sum(epi, piece)
    epi = compose_morphisms(dec.witness, epi)
    return epi.source, epi
