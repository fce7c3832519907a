import itertools

import numpy as np
import pytest

from conftest import cyclic_quiver
from f1rep.catalog import all_representations, dimension_vectors, isoclasses
from f1rep.errors import ContractError, UnsupportedShapeError
from f1rep.homology import ext
from f1rep.quiver import (
    Quiver,
    build_interval,
    canonical_key,
    direct_sum,
    enumerate_morphisms,
    is_epi,
    is_iso,
    isomorphic,
    linear_quiver,
    resolve_name,
    subrepresentation,
)
from f1rep.structure import (
    NOT_PROJECTIVE,
    PROJECTIVE,
    PROJECTIVE_UP_TO_CAP,
    arrows_injective,
    decompose,
    is_projective,
    lifting_search,
    projective_cover_surjection,
    split_epi,
    tree_indecomposables,
    verify_witness,
)
from f1rep.verification import check_krull_schmidt, check_non_linear_quiver, random_representation


def _closed(M, part):
    return all(
        not Ma(j) or (a.target, Ma(j)) in part
        for a, Ma in zip(M.quiver.arrows, M.maps)
        for j in range(1, M.dims[a.source - 1] + 1)
        if (a.source, j) in part
    )


def finest_split(M, elems):
    """Split an element set into arrow-closed halves until no split exists."""
    elems = sorted(elems)
    for r in range(1, len(elems) // 2 + 1):
        for part in itertools.combinations(elems, r):
            A, B = set(part), set(elems) - set(part)
            if _closed(M, A) and _closed(M, B):
                return finest_split(M, A) + finest_split(M, B)
    return [set(elems)]


def brute_summand_keys(M):
    parts = finest_split(M, M.elements) if M.total_dim else []
    return sorted(canonical_key(subrepresentation(M, p)[0]) for p in parts)


@pytest.mark.parametrize("q", [linear_quiver(2), linear_quiver(3), Quiver(3, (("b", 3, 2), ("c", 1, 2))), cyclic_quiver()])
def test_decompose_matches_exhaustive_splitting(q):
    for dims in dimension_vectors(q, 3):
        for M in all_representations(q, dims):
            res = decompose(M)
            assert sorted(canonical_key(S) for S in res.summands) == brute_summand_keys(M)
            assert is_iso(res.witness) and res.witness.target == M


def test_decompose_examples(A2, A3):
    assert [canonical_key(S) for S in decompose(build_interval(A3, (1, 3))).summands] == [
        canonical_key(build_interval(A3, (1, 3)))
    ]
    from f1rep.quiver import Representation

    M = Representation.build(A2, [2, 2], {"a1": [1, 0]})
    want = sorted(canonical_key(build_interval(A2, s)) for s in ((1, 2), (2, 2), (1, 1)))
    assert sorted(canonical_key(S) for S in decompose(M).summands) == want
    assert len(decompose(resolve_name(A2, "S1+S2+P2")).summands) == 3
    assert decompose(resolve_name(A2, "0")).summands == []


def test_decompose_of_direct_sum_concatenates():
    rng = np.random.default_rng(11)
    q = linear_quiver(3)
    for _ in range(30):
        M, N = random_representation(q, rng), random_representation(q, rng)
        keys = lambda R: sorted(canonical_key(S) for S in decompose(R).summands)
        assert keys(direct_sum(M, N).rep) == sorted(keys(M) + keys(N))


def test_krull_schmidt_relabeling():
    ok, detail = check_krull_schmidt(samples=100)
    assert ok, detail


def test_tree_indecomposables(Q321):
    q, named = Q321
    reps = tree_indecomposables(q)
    assert len(reps) == 6
    assert {canonical_key(R) for R in reps} == {canonical_key(R) for R in named.values()}
    assert len(tree_indecomposables(Quiver(1))) == 1
    for n in range(1, 6):
        reps = tree_indecomposables(linear_quiver(n))
        assert len({canonical_key(R) for R in reps}) == n * (n + 1) // 2
        assert all(len(decompose(R).summands) == 1 for R in reps)
    with pytest.raises(UnsupportedShapeError):
        tree_indecomposables(cyclic_quiver())


def _nonzero(M, N):
    return next(h for h in enumerate_morphisms(M, N) if not h.is_zero())


def test_split_epi_examples(A2, A3):
    f = _nonzero(build_interval(A2, (1, 2)), build_interval(A2, (2, 2)))
    s = split_epi(f, [(2, 1)])
    assert isomorphic(s.M1, build_interval(A2, (1, 2))) and s.M2.is_zero() and s.i0 == 1

    I = build_interval(A3, (2, 3))
    ident = next(h for h in enumerate_morphisms(I, I) if is_iso(h))
    s = split_epi(ident, I.elements)
    assert isomorphic(s.M1, I) and s.M2.is_zero() and s.i0 == 2

    src = resolve_name(A3, "[1,3]+[2,2]")
    tgt = resolve_name(A3, "[2,3]+[2,2]")
    block = [h for h in enumerate_morphisms(src, tgt) if is_epi(h)]
    # the block-diagonal epi: [1,3] onto [2,3] and [2,2] onto [2,2]
    f = next(h for h in block if h(2, 1) == 1 and h(2, 2) == 2)
    s = split_epi(f, [(2, 1), (3, 1)])
    assert isomorphic(s.M1, build_interval(A3, (1, 3)))
    assert isomorphic(s.M2, build_interval(A3, (2, 2)))
    assert s.i0 == 1 and is_epi(s.f2)
    assert not s.f1.is_zero()


def test_split_epi_contract(A3, Q321):
    f = _nonzero(build_interval(A3, (2, 2)), build_interval(A3, (2, 3)))
    with pytest.raises(ContractError):
        split_epi(f, [(2, 1), (3, 1)])  # not an epimorphism
    q, named = Q321
    g = _nonzero(named["P1"], named["S1"])
    with pytest.raises(UnsupportedShapeError):
        split_epi(g, [(1, 1)])


def test_projectivity_examples(A3, Q321):
    assert is_projective(build_interval(A3, (1, 3))).status == PROJECTIVE
    for k, l in ((2, 2), (2, 3), (3, 3)):
        v = is_projective(build_interval(A3, (k, l)))
        assert v.status == NOT_PROJECTIVE and verify_witness(v.witness.g.source, v.witness)
    q, named = Q321
    v = is_projective(named["M"])
    assert v.status == NOT_PROJECTIVE and verify_witness(named["M"], v.witness)
    assert v.to_json()["witness"]["epi"]["components"]


def test_arrow_injective_passes_search():
    for n in (2, 3, 4):
        q = linear_quiver(n)
        for M in isoclasses(q, (1,) * n):
            if arrows_injective(M):
                cap = (M.total_dim + 2,) * n
                assert lifting_search(M, cap)[0] is None


def test_sums_of_projectives_stay_projective():
    q = linear_quiver(4)
    tops = [build_interval(q, (1, l)) for l in range(1, 5)]
    for A, B in itertools.combinations_with_replacement(tops, 2):
        S = direct_sum(A, B).rep
        assert arrows_injective(S)
        assert is_projective(S).status == PROJECTIVE


def test_projectives_have_no_ext1():
    for n in (2, 3, 4):
        q = linear_quiver(n)
        blocks = tree_indecomposables(q)
        for P in isoclasses(q, (1,) * n):
            if is_projective(P).status != PROJECTIVE:
                continue
            assert all(ext(1, P, X).dim == 0 for X in blocks)


def test_projective_cover_examples(A2, A3):
    P, e = projective_cover_surjection(build_interval(A3, (2, 3)))
    assert isomorphic(P, build_interval(A3, (1, 3))) and is_epi(e)
    top = resolve_name(A3, "[1,2]+[1,3]")
    P, e = projective_cover_surjection(top)
    assert isomorphic(P, top)
    P, e = projective_cover_surjection(resolve_name(A2, "S1+S2"))
    assert isomorphic(P, resolve_name(A2, "[1,1]+[1,2]")) and is_epi(e)


def test_projective_cover_rejects_non_linear(Q321):
    q, named = Q321
    with pytest.raises(UnsupportedShapeError):
        projective_cover_surjection(named["M"])


def test_non_linear_checklist():
    ok, detail = check_non_linear_quiver()
    assert ok, detail


def test_search_cross_check_small():
    q = linear_quiver(2)
    for M in isoclasses(q, (2, 2)):
        exact = is_projective(M).status == PROJECTIVE
        assert (is_projective(M, method="search").status == PROJECTIVE_UP_TO_CAP) == exact


def test_exact_method_needs_linear(Q321):
    q, named = Q321
    with pytest.raises(UnsupportedShapeError):
        is_projective(named["S2"], method="exact")
