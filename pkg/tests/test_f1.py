import pytest
from hypothesis import given, strategies as st

from f1rep.errors import ContractError, InputError
from f1rep.f1 import (
    F1Map,
    PointedSet,
    compose,
    dual,
    enumerate_maps,
    identity_map,
    image_elements,
    kernel_elements,
    partial_injection_count,
    zero_map,
)


def test_pointed_set_elements():
    V = PointedSet(3)
    assert list(V.elements) == [0, 1, 2, 3]
    assert list(V.nonzero) == [1, 2, 3]
    with pytest.raises(ContractError):
        PointedSet(-1)


def test_rejects_collision_and_names_elements():
    with pytest.raises(InputError) as info:
        F1Map.from_list(3, 2, [1, 0, 1])
    assert info.value.path == "map[2]"
    assert "elements 1 and 3" in info.value.message


def test_rejects_out_of_range():
    with pytest.raises(InputError) as info:
        F1Map.from_list(2, 1, [0, 2])
    assert info.value.path == "map[1]"


@pytest.mark.parametrize("a", range(6))
@pytest.mark.parametrize("b", range(6))
def test_map_count_formula(a, b):
    maps = list(enumerate_maps(a, b))
    assert len(maps) == partial_injection_count(a, b)
    assert len(set(m.image_of for m in maps)) == len(maps)


def test_small_counts():
    assert partial_injection_count(1, 1) == 2
    assert partial_injection_count(2, 2) == 7
    assert partial_injection_count(3, 3) == 34


def test_compose_examples():
    f = F1Map.from_list(3, 2, [2, 0, 1])
    g = F1Map.from_list(2, 2, [0, 1])
    assert compose(g, f).image_of == (1, 0, 0)
    assert compose(identity_map(2), f) == f
    assert compose(f, identity_map(3)) == f
    assert compose(g, zero_map(3, 2)).is_zero()
    with pytest.raises(ContractError):
        compose(f, g)


def test_dual_examples():
    f = F1Map.from_list(3, 2, [2, 0, 1])
    assert dual(f).image_of == (3, 1)
    assert dual(zero_map(2, 3)) == zero_map(3, 2)
    assert dual(identity_map(4)) == identity_map(4)


@pytest.mark.parametrize("a", range(5))
@pytest.mark.parametrize("b", range(5))
def test_duality_exhaustive(a, b):
    for f in enumerate_maps(a, b):
        t = dual(f)
        assert dual(t) == f
        back = compose(f, t)
        for y in range(1, b + 1):
            assert back(y) == (y if y in image_elements(f) else 0)
        fix = compose(t, f)
        for x in range(1, a + 1):
            assert fix(x) == (0 if x in kernel_elements(f) else x)


def test_kernel_and_image():
    f = F1Map.from_list(4, 3, [0, 3, 0, 1])
    assert kernel_elements(f) == {1, 3}
    assert image_elements(f) == {1, 3}
    assert not f.is_injective() and not f.is_surjective()


@st.composite
def composable(draw):
    a, b, c = (draw(st.integers(0, 4)) for _ in range(3))
    f = draw(st.sampled_from(list(enumerate_maps(a, b))))
    g = draw(st.sampled_from(list(enumerate_maps(b, c))))
    return f, g


@given(composable())
def test_dual_reverses_composition_on_injective_parts(pair):
    f, g = pair
    h = compose(g, f)
    # (g f)^t agrees with f^t g^t wherever the composite is defined
    left, right = dual(h), compose(dual(f), dual(g))
    for z in image_elements(h):
        assert left(z) == right(z)


def test_json_round_trip():
    f = F1Map.from_list(3, 4, [4, 0, 2])
    assert F1Map.from_json(f.to_json()) == f
    with pytest.raises(InputError):
        F1Map.from_json({"source_dim": 1, "map": [0]})
