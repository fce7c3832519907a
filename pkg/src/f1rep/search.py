"""Array packing around the backtracking kernel.

A :class:`Structure` is a finite set of elements ``0..n-1``, each with a class
(a vertex, or an ``(object, vertex)`` pair for sequences), and a family of
labelled partial injections between elements.  Maps between structures send
each element to an element of the same class or to zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels


@dataclass
class Structure:
    classes: list
    funcs: np.ndarray  # (n_labels, n) int64, -1 = maps to zero
    pre: np.ndarray = field(init=False)

    def __post_init__(self):
        self.funcs = np.asarray(self.funcs, dtype=np.int64)
        if self.funcs.ndim != 2 or self.funcs.shape[1] != len(self.classes):
            raise ValueError("funcs must have shape (n_labels, n_elements)")
        self.pre = np.full_like(self.funcs, -1)
        for lab in range(self.funcs.shape[0]):
            for x, y in enumerate(self.funcs[lab]):
                if y >= 0:
                    if self.pre[lab, y] >= 0:
                        raise ValueError(f"label {lab} is not injective at {y}")
                    self.pre[lab, y] = x

    @property
    def size(self) -> int:
        return len(self.classes)

    def by_class(self) -> dict:
        groups: dict = {}
        for x, c in enumerate(self.classes):
            groups.setdefault(c, []).append(x)
        return groups


def class_allowed(src: Structure, tgt: Structure) -> np.ndarray:
    """Allowed-value matrix permitting zero and every same-class target."""
    allowed = np.zeros((src.size, tgt.size + 1), dtype=np.bool_)
    allowed[:, 0] = True
    groups = tgt.by_class()
    for x, c in enumerate(src.classes):
        for t in groups.get(c, ()):
            allowed[x, t + 1] = True
    return allowed


def _search_order(src: Structure, allowed: np.ndarray) -> np.ndarray:
    n = src.size
    placed = np.zeros(n, dtype=bool)
    order: list[int] = []
    queue: deque[int] = deque()

    def place(x: int) -> None:
        placed[x] = True
        order.append(x)
        for lab in range(src.funcs.shape[0]):
            y = src.funcs[lab, x]
            if y >= 0 and not placed[y]:
                queue.append(int(y))

    pinned = [x for x in range(n) if allowed[x].sum() == 1]
    for x in pinned:
        place(x)
    while len(order) < n:
        while queue:
            x = queue.popleft()
            if not placed[x]:
                place(x)
        if len(order) == n:
            break
        tops = [
            x
            for x in range(n)
            if not placed[x]
            and all(src.pre[lab, x] < 0 or placed[src.pre[lab, x]] for lab in range(src.funcs.shape[0]))
        ]
        place(tops[0] if tops else int(np.flatnonzero(~placed)[0]))
    return np.asarray(order, dtype=np.int64)


def find_maps(
    src: Structure,
    tgt: Structure,
    allowed: np.ndarray | None = None,
    limit: int = 0,
) -> np.ndarray:
    """All admissible maps as rows of an ``(count, src.size)`` array (-1 = zero).

    ``limit > 0`` stops after that many solutions.
    """
    if src.funcs.shape[0] != tgt.funcs.shape[0]:
        raise ValueError("structures carry different label sets")
    if allowed is None:
        allowed = class_allowed(src, tgt)
    allowed = np.ascontiguousarray(allowed, dtype=np.bool_)
    order = _search_order(src, allowed)
    n_lab = src.funcs.shape[0]
    tgt_fun = tgt.funcs if tgt.size else np.zeros((n_lab, 0), dtype=np.int64)
    if src.size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    capacity = limit if limit > 0 else 64
    while True:
        out = np.empty((capacity, src.size), dtype=np.int64)
        count = _kernels.search_maps(allowed, order, src.funcs, src.pre, tgt_fun, limit, out)
        if count <= capacity:
            return out[:count]
        capacity = count


def exists_map(src: Structure, tgt: Structure, allowed: np.ndarray | None = None) -> bool:
    return len(find_maps(src, tgt, allowed, limit=1)) > 0


def components(n: int, funcs: np.ndarray) -> np.ndarray:
    """Component label per element of the graph with edges ``x -- funcs[lab, x]``."""
    funcs = np.asarray(funcs, dtype=np.int64)
    return _kernels.component_labels(funcs)
