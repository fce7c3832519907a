import itertools

import numpy as np
import pytest

from conftest import brute_morphisms, cyclic_quiver
from f1rep.catalog import all_representations
from f1rep.errors import ContractError, InputError, UnsupportedShapeError
from f1rep.quiver import (
    Quiver,
    Representation,
    RepMorphism,
    build_interval,
    canonical_form,
    canonical_key,
    compose_morphisms,
    direct_sum,
    enumerate_morphisms,
    find_isomorphism,
    hom_dim,
    identity_morphism,
    is_iso,
    isomorphic,
    linear_quiver,
    relabel,
    resolve_name,
)
from f1rep.verification import random_relabel, random_representation


def test_hom_examples(A2, A3):
    assert hom_dim(build_interval(A3, (1, 2)), build_interval(A3, (2, 3))) == 1
    assert hom_dim(build_interval(A3, (2, 3)), build_interval(A3, (1, 2))) == 0
    assert hom_dim(resolve_name(A2, "S1+S2+P2"), resolve_name(A2, "S1+S2")) == 5
    assert not isomorphic(resolve_name(A2, "P2"), resolve_name(A2, "S1+S2"))


def test_hom_matches_brute_force_random():
    rng = np.random.default_rng(7)
    quivers = [linear_quiver(2), linear_quiver(3), cyclic_quiver(), Quiver(3, (("b", 3, 2), ("c", 1, 2)))]
    for q in quivers:
        for _ in range(25):
            M = random_representation(q, rng, 2)
            N = random_representation(q, rng, 2)
            brute = sorted(h.key for h in brute_morphisms(M, N))
            assert [h.key for h in enumerate_morphisms(M, N)] == brute


def test_morphism_must_commute(A2):
    P2, S1 = resolve_name(A2, "P2"), resolve_name(A2, "S1")
    with pytest.raises(ContractError):
        RepMorphism.from_lists(P2, S1, [[0], [1]][::-1])


def test_canonical_key_detects_isomorphism_exhaustively():
    q = linear_quiver(2)
    reps = list(all_representations(q, (2, 2)))
    for M, N in itertools.combinations(reps[:40], 2):
        brute = any(is_iso(h) for h in brute_morphisms(M, N))
        assert (canonical_key(M) == canonical_key(N)) == brute == (find_isomorphism(M, N) is not None)


def test_canonical_form_comes_with_iso():
    rng = np.random.default_rng(3)
    for q in (linear_quiver(3), cyclic_quiver()):
        for _ in range(20):
            M = random_representation(q, rng, 3)
            C, iso = canonical_form(M)
            assert is_iso(iso) and iso.source == M and iso.target == C
            assert canonical_form(random_relabel(M, rng))[0] == C


def test_relabel_returns_isomorphism(A3):
    M = resolve_name(A3, "[1,2]+[2,3]+S2")
    R, iso = relabel(M, {1: [1], 2: [3, 1, 2], 3: [1]})
    assert is_iso(iso) and isomorphic(R, M)


def test_direct_sum_commutes_up_to_iso(A3):
    M, N = resolve_name(A3, "[1,3]+S2"), resolve_name(A3, "[2,3]")
    s = direct_sum(M, N)
    assert isomorphic(s.rep, direct_sum(N, M).rep)
    for inc, pr in zip(s.inclusions, s.projections):
        assert compose_morphisms(pr, inc) == identity_morphism(inc.source)


def test_resolve_names(A3, Q321):
    q, named = Q321
    assert resolve_name(A3, "P2") == build_interval(A3, (1, 2))
    assert resolve_name(A3, "S_3") == build_interval(A3, (3, 3))
    assert resolve_name(A3, "0").is_zero()
    assert resolve_name(A3, "[1,2] ⊕ [3,3]").dims == (1, 1, 1)
    assert resolve_name(q, "P1") == named["P1"]
    with pytest.raises(InputError):
        resolve_name(A3, "X9")
    with pytest.raises(UnsupportedShapeError):
        resolve_name(cyclic_quiver(), "P1")
    with pytest.raises(UnsupportedShapeError):
        build_interval(q, (1, 2))


def test_json_round_trip(A3):
    M = resolve_name(A3, "[1,3]+[2,2]")
    assert Representation.from_json(A3, M.to_json()) == M
    assert Quiver.from_json(A3.to_json()) == A3
    h = enumerate_morphisms(M, M)[-1]
    assert RepMorphism.from_json(M, M, h.to_json()) == h


def test_input_errors_carry_paths(A2):
    with pytest.raises(InputError) as info:
        Representation.build(A2, [1, 2], {"a1": [1, 1]})
    assert info.value.path == "maps.a1.map[1]"
    with pytest.raises(InputError) as info:
        Representation.build(A2, [1], {})
    assert info.value.path == "dims"
    with pytest.raises(InputError) as info:
        Quiver.from_json({"vertices": 2, "arrows": [{"id": "a", "source": 3, "target": 1}]})
    assert info.value.path == "arrows[0].source"


def test_linear_detection():
    assert linear_quiver(4).is_linear
    assert not Quiver(3, (("b", 3, 2), ("c", 1, 2))).is_linear
    assert Quiver(3, (("b", 3, 2), ("c", 1, 2))).is_tree()
    assert not cyclic_quiver().is_tree()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unique_interval_morphism_shape(n):
    from f1rep.homology import image
    from f1rep.quiver import is_epi, is_mono

    q = linear_quiver(n)
    spans = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    for (i, j), (k, l) in itertools.product(spans, spans):
        if not i <= k <= j <= l:
            continue
        f = next(h for h in enumerate_morphisms(build_interval(q, (i, j)), build_interval(q, (k, l))) if not h.is_zero())
        assert isomorphic(image(f), build_interval(q, (k, j)))  # socle [k,k]
        assert is_epi(f) == (j == l)
        assert is_mono(f) == (i == k)


def test_hom_count_invariant_under_relabeling():
    rng = np.random.default_rng(2)
    q = linear_quiver(3)
    for _ in range(20):
        M, N = random_representation(q, rng), random_representation(q, rng)
        assert hom_dim(M, N) == hom_dim(random_relabel(M, rng), random_relabel(N, rng))
