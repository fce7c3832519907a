"""Euler form, Grothendieck classes and the descent check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ContractError
from .homology import ext
from .quiver import Quiver, Representation, canonical_key, dimension_vector, hom_dim

LINEAR_MAX_DEGREE = 2


@dataclass(frozen=True)
class EulerTerm:
    degree: int
    dim: int
    saturated: bool
    cap: int | None

    def to_json(self) -> dict:
        return {"degree": self.degree, "dim": self.dim, "saturated": self.saturated, "cap": self.cap}


@dataclass
class EulerReport:
    L: Representation
    N: Representation
    terms: list[EulerTerm]
    exact_truncation: bool  # higher degrees are known to vanish

    @property
    def max_degree(self) -> int:
        return self.terms[-1].degree

    @property
    def value(self) -> int:
        return sum((-1) ** t.degree * t.dim for t in self.terms)

    @property
    def unsigned_value(self) -> int:
        return sum(t.dim for t in self.terms)

    @property
    def saturated(self) -> bool:
        return all(t.saturated for t in self.terms)

    def to_json(self) -> dict:
        return {
            "L": self.L.to_json(),
            "N": self.N.to_json(),
            "terms": [t.to_json() for t in self.terms],
            "value": self.value,
            "unsigned_value": self.unsigned_value,
            "max_degree": self.max_degree,
            "exact_truncation": self.exact_truncation,
            "saturated": self.saturated,
        }

    def to_text(self) -> str:
        lines = ["degree  dim  sign  saturated  cap"]
        for t in self.terms:
            sign = "+" if t.degree % 2 == 0 else "-"
            cap = "-" if t.cap is None else str(t.cap)
            lines.append(f"{t.degree:>6}  {t.dim:>3}  {sign:>4}  {str(t.saturated).lower():>9}  {cap}")
        lines.append(f"<L,N> = {self.value}  (unsigned sum {self.unsigned_value})")
        if not self.exact_truncation:
            lines.append(f"truncated at degree {self.max_degree}")
        return "\n".join(lines)


def euler_form(
    L: Representation,
    N: Representation,
    max_degree: int | None = None,
    cap: int | None = None,
    threads: int | None = None,
) -> EulerReport:
    """Alternating sum of ``dim Ext^i(L, N)`` for ``i <= max_degree``.

    On the linear quiver Ext vanishes above degree 2, so the default there is
    exact.  Other quivers need ``max_degree`` spelled out.
    """
    if L.quiver != N.quiver:
        raise ContractError("arguments live on different quivers")
    linear = L.quiver.linear_order is not None
    if max_degree is None:
        if not linear:
            raise ContractError("max_degree is required off the linear quiver")
        max_degree = LINEAR_MAX_DEGREE
    if max_degree < 1:
        raise ContractError("max_degree must be at least 1")
    terms = [EulerTerm(0, hom_dim(L, N), True, None)]
    for i in range(1, max_degree + 1):
        # classes of sequences N >-> ... ->> L
        e = ext(i, L, N, cap, threads=threads)
        terms.append(EulerTerm(i, e.dim, e.saturated, e.cap))
    return EulerReport(L, N, terms, linear and max_degree >= LINEAR_MAX_DEGREE)


def grothendieck_class(M: Representation) -> tuple[int, ...]:
    return dimension_vector(M)


@dataclass
class DescentViolation:
    first: EulerReport
    second: EulerReport

    @property
    def classes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return grothendieck_class(self.first.L), grothendieck_class(self.first.N)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }


@dataclass
class DescentCheckResult:
    pairs: list[DescentViolation] = field(default_factory=list)
    evaluated: int = 0

    def to_json(self) -> dict:
        return {"violations": [p.to_json() for p in self.pairs], "evaluated_pairs": self.evaluated}


def descent_check(
    q: Quiver,
    universe: Sequence[Representation],
    max_degree: int | None = None,
    cap: int | None = None,
    threads: int | None = None,
) -> DescentCheckResult:
    """Pairs ``(L1, N1), (L2, N2)`` with equal classes but different Euler values."""
    reps = []
    seen = set()
    for R in universe:
        if R.quiver != q:
            raise ContractError("universe member lives on a different quiver")
        key = canonical_key(R)
        if key not in seen:
            seen.add(key)
            reps.append(R)
    groups: dict = {}
    for L in reps:
        for N in reps:
            groups.setdefault((grothendieck_class(L), grothendieck_class(N)), []).append((L, N))
    result = DescentCheckResult()
    for key in sorted(groups):
        members = groups[key]
        if len(members) < 2:
            continue
        reports = [euler_form(L, N, max_degree, cap, threads) for L, N in members]
        result.evaluated += len(reports)
        for a in range(len(reports)):
            for b in range(a + 1, len(reports)):
                if reports[a].value != reports[b].value:
                    result.pairs.append(DescentViolation(reports[a], reports[b]))
    return result
