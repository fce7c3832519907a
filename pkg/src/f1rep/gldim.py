"""Global dimension by scanning Ext over pairs of indecomposables."""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import indecomposables
from .homology import ext
from .quiver import Quiver, Representation

DEFAULT_MAX_DEGREE = 3


@dataclass
class DegreeScan:
    degree: int
    nonzero: tuple[Representation, Representation] | None  # (N, L) with Ext^d(N, L) != 0
    pairs_checked: int
    saturated: bool  # every computed class count was stable

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "nonvanishing": self.nonzero is not None,
            "example": None if self.nonzero is None else [R.to_json() for R in self.nonzero],
            "pairs_checked": self.pairs_checked,
            "saturated": self.saturated,
        }


@dataclass
class GlobalDimensionReport:
    max_degree: int
    scans: list[DegreeScan] = field(default_factory=list)

    @property
    def value(self) -> int:
        """Largest degree with nonvanishing Ext (0 if none)."""
        return max((s.degree for s in self.scans if s.nonzero is not None), default=0)

    @property
    def saturated(self) -> bool:
        """Vanishing above ``value`` holds at stable caps."""
        return all(s.saturated for s in self.scans if s.degree > self.value)

    @property
    def lower_bound_only(self) -> bool:
        return self.value == self.max_degree

    def to_json(self) -> dict:
        return {
            "global_dimension": self.value,
            "saturated": self.saturated,
            "lower_bound_only": self.lower_bound_only,
            "max_degree": self.max_degree,
            "degrees": [s.to_json() for s in self.scans],
        }

    def to_text(self) -> str:
        lines = []
        for s in self.scans:
            state = "nonzero" if s.nonzero is not None else "zero"
            lines.append(f"Ext^{s.degree}: {state} ({s.pairs_checked} pairs, saturated={str(s.saturated).lower()})")
        suffix = " (lower bound)" if self.lower_bound_only else ""
        lines.append(f"global dimension: {self.value}{suffix}, saturated={str(self.saturated).lower()}")
        return "\n".join(lines)


def global_dimension(
    q: Quiver,
    max_degree: int = DEFAULT_MAX_DEGREE,
    cap: int | None = None,
    max_total: int | None = None,
    threads: int | None = None,
) -> GlobalDimensionReport:
    """Scan ``Ext^d(N, L)`` for indecomposable ``N, L`` and ``1 <= d <= max_degree``.

    A nonzero class at any cap certifies nonvanishing, so a degree stops at
    the first hit.  Vanishing is only reported as saturated when every pair's
    class count is stable from ``cap`` to ``cap + 1``.
    """
    if max_total is None:
        max_total = q.vertex_count
    blocks = indecomposables(q, max_total)
    report = GlobalDimensionReport(max_degree)
    for d in range(1, max_degree + 1):
        hit = None
        checked = 0
        stable = True
        for N in blocks:
            for L in blocks:
                e = ext(d, N, L, cap, threads=threads, check_saturation=True)
                checked += 1
                stable &= e.saturated
                if e.dim > 0:
                    hit = (N, L)
                    break
            if hit:
                break
        report.scans.append(DegreeScan(d, hit, checked, stable))
    return report
