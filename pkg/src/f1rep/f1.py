"""Vector spaces and linear maps over F1.

A vector space over F1 is a finite pointed set ``{0, 1, ..., dim}`` whose
basepoint is 0.  A linear map is a basepoint-preserving function that is
injective away from the preimage of the basepoint, i.e. a partial injection.
Maps are stored densely: ``image_of[j - 1]`` is the image of element ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import ContractError, InputError

__all__ = [
    "PointedSet",
    "F1Map",
    "compose",
    "dual",
    "kernel_elements",
    "image_elements",
    "identity_map",
    "zero_map",
    "enumerate_maps",
    "partial_injection_count",
]


@dataclass(frozen=True, order=True)
class PointedSet:
    """The pointed set ``{0, 1, ..., dim}`` with basepoint 0."""

    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ContractError(f"dimension must be non-negative, got {self.dim}")

    @property
    def elements(self) -> range:
        return range(self.dim + 1)

    @property
    def nonzero(self) -> range:
        return range(1, self.dim + 1)


@dataclass(frozen=True)
class F1Map:
    source: PointedSet
    target: PointedSet
    image_of: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.image_of)
        object.__setattr__(self, "image_of", images)
        if len(images) != self.source.dim:
            raise InputError(
                "map",
                f"expected {self.source.dim} entries, got {len(images)}",
            )
        seen: dict[int, int] = {}
        for j, v in enumerate(images, start=1):
            if not 0 <= v <= self.target.dim:
                raise InputError(
                    f"map[{j - 1}]",
                    f"image {v} of element {j} outside 0..{self.target.dim}",
                )
            if v:
                if v in seen:
                    raise InputError(
                        f"map[{j - 1}]",
                        f"not injective off the kernel: elements {seen[v]} and {j} "
                        f"both map to {v}",
                    )
                seen[v] = j

    @classmethod
    def from_list(cls, source_dim: int, target_dim: int, images: Sequence[int]) -> "F1Map":
        return cls(PointedSet(source_dim), PointedSet(target_dim), tuple(images))

    @property
    def source_dim(self) -> int:
        return self.source.dim

    @property
    def target_dim(self) -> int:
        return self.target.dim

    def __call__(self, x: int) -> int:
        if x == 0:
            return 0
        return self.image_of[x - 1]

    def is_injective(self) -> bool:
        return all(self.image_of)

    def is_surjective(self) -> bool:
        return len(image_elements(self)) == self.target.dim

    def is_zero(self) -> bool:
        return not any(self.image_of)

    def to_json(self) -> dict:
        return {
            "source_dim": self.source.dim,
            "target_dim": self.target.dim,
            "map": list(self.image_of),
        }

    @classmethod
    def from_json(cls, data: dict) -> "F1Map":
        try:
            return cls.from_list(int(data["source_dim"]), int(data["target_dim"]), data["map"])
        except KeyError as exc:
            raise InputError(str(exc.args[0]), "missing field") from None


def identity_map(dim: int) -> F1Map:
    return F1Map.from_list(dim, dim, range(1, dim + 1))


def zero_map(source_dim: int, target_dim: int) -> F1Map:
    return F1Map.from_list(source_dim, target_dim, [0] * source_dim)


def compose(g: F1Map, f: F1Map) -> F1Map:
    """Return ``g ∘ f``."""
    if f.target.dim != g.source.dim:
        raise ContractError(
            f"cannot compose: f lands in dim {f.target.dim}, g starts at dim {g.source.dim}"
        )
    return F1Map(f.source, g.target, tuple(g(v) for v in f.image_of))


def dual(f: F1Map) -> F1Map:
    """The transpose ``f^t``: each image element goes back to its unique preimage."""
    back = [0] * f.target.dim
    for j, v in enumerate(f.image_of, start=1):
        if v:
            back[v - 1] = j
    return F1Map(f.target, f.source, tuple(back))


def kernel_elements(f: F1Map) -> frozenset[int]:
    return frozenset(j for j, v in enumerate(f.image_of, start=1) if v == 0)


def image_elements(f: F1Map) -> frozenset[int]:
    return frozenset(v for v in f.image_of if v)


def enumerate_maps(source_dim: int, target_dim: int) -> Iterator[F1Map]:
    """Every F1-linear map between the given dimensions (all partial injections)."""
    src, tgt = PointedSet(source_dim), PointedSet(target_dim)
    for k in range(min(source_dim, target_dim) + 1):
        for domain in itertools.combinations(range(source_dim), k):
            for values in itertools.permutations(range(1, target_dim + 1), k):
                images = [0] * source_dim
                for j, v in zip(domain, values):
                    images[j] = v
                yield F1Map(src, tgt, tuple(images))


def partial_injection_count(source_dim: int, target_dim: int) -> int:
    return sum(
        comb(source_dim, k) * comb(target_dim, k) * factorial(k)
        for k in range(min(source_dim, target_dim) + 1)
    )
