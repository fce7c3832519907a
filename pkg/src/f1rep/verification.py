"""Reproducible checks of the published claims, grouped by acceptance criterion.

Each check returns ``(ok, detail)``; :func:`run_claims` adds timing and the
wall-clock budget of its criterion.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable

import numpy as np

from .catalog import connected_subquivers, isoclasses
from .f1 import compose, dual, enumerate_maps, kernel_elements
from .gldim import global_dimension
from .homology import (
    ExactSequence,
    ext,
    sequence_direct_sum,
    zero_sequence,
)
from .euler import descent_check, euler_form, grothendieck_class
from .quiver import (
    Quiver,
    Representation,
    RepMorphism,
    build_interval,
    canonical_key,
    enumerate_morphisms,
    hom_dim,
    is_epi,
    linear_quiver,
    relabel,
)
from .structure import (
    NOT_PROJECTIVE,
    PROJECTIVE,
    PROJECTIVE_UP_TO_CAP,
    LiftingWitness,
    arrows_injective,
    decompose,
    find_lift,
    is_projective,
    projective_cover_surjection,
    tree_indecomposables,
    verify_witness,
)


# -- fixtures ----------------------------------------------------------------


def fixture_names() -> list[str]:
    root = resources.files("f1rep") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture_data(name: str) -> dict:
    root = resources.files("f1rep") / "fixtures"
    return json.loads((root / f"{name}.json").read_text())


def load_quiver(data: dict) -> tuple[Quiver, dict[str, Representation]]:
    """Quiver plus its named representations from quiver JSON."""
    from .errors import InputError

    q = Quiver.from_json(data)
    named = {}
    for name, rep in (data.get("representations") or {}).items():
        try:
            named[name] = Representation.from_json(q, rep)
        except InputError as exc:
            raise exc.nested(f"representations.{name}") from None
    return q, named


def fixture(name: str) -> tuple[Quiver, dict[str, Representation]]:
    return load_quiver(load_fixture_data(name))


def random_representation(q: Quiver, rng: np.random.Generator, max_dim: int = 2) -> Representation:
    dims = [int(rng.integers(0, max_dim + 1)) for _ in q.vertices]
    maps = {}
    for a in q.arrows:
        s, t = dims[a.source - 1], dims[a.target - 1]
        targets = list(rng.permutation(np.arange(1, t + 1)))
        img = []
        for _ in range(s):
            if targets and rng.random() < 0.7:
                img.append(int(targets.pop()))
            else:
                img.append(0)
        maps[a.id] = img
    return Representation.build(q, dims, maps)


def random_relabel(M: Representation, rng: np.random.Generator) -> Representation:
    perms = {v: [int(x) + 1 for x in rng.permutation(M.dims[v - 1])] for v in M.quiver.vertices}
    return relabel(M, perms)[0]


def _summand_keys(M: Representation) -> list:
    return sorted(canonical_key(S) for S in decompose(M).summands)


# -- criterion 1 -------------------------------------------------------------


def check_hom_table() -> tuple[bool, str]:
    bad = []
    count = 0
    for n in range(2, 6):
        q = linear_quiver(n)
        spans = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        for i, j in spans:
            for k, l in spans:
                want = 1 if i <= k <= j <= l else 0
                got = hom_dim(build_interval(q, (i, j)), build_interval(q, (k, l)))
                count += 1
                if got != want:
                    bad.append(f"A{n} [{i},{j}]->[{k},{l}]: {got} != {want}")
    return not bad, f"{count} interval pairs" + (f"; mismatches: {bad[:3]}" if bad else "")


# -- criterion 2 -------------------------------------------------------------


def _classification_ok(q: Quiver, expected: int) -> tuple[bool, str]:
    reps = tree_indecomposables(q)
    keys = {canonical_key(R) for R in reps}
    single = all(len(decompose(R).summands) == 1 for R in reps)
    independent = len(connected_subquivers(q))
    ok = len(reps) == expected == independent and len(keys) == len(reps) and single
    return ok, f"{len(reps)} found, {expected} expected"


def check_classification() -> tuple[bool, str]:
    details = []
    ok = True
    for n in range(1, 6):
        good, msg = _classification_ok(linear_quiver(n), n * (n + 1) // 2)
        ok &= good
        details.append(f"A{n}: {msg}")
    q, _ = fixture("Q3_2_1")
    good, msg = _classification_ok(q, 6)
    details.append(f"3->2<-1: {msg}")
    return ok and good, "; ".join(details)


# -- criterion 3 -------------------------------------------------------------


def _all_pairs_vanish(q: Quiver, degree: int) -> tuple[bool, int]:
    blocks = tree_indecomposables(q)
    for N in blocks:
        for L in blocks:
            e = ext(degree, N, L)
            if e.dim != 0 or not e.saturated:
                return False, 0
    return True, len(blocks) ** 2


def check_ext1_nonzero_A2() -> tuple[bool, str]:
    q = linear_quiver(2)
    e = ext(1, build_interval(q, (2, 2)), build_interval(q, (1, 1)))
    return e.dim >= 1, f"dim Ext^1([2,2],[1,1]) = {e.dim}"


def check_low_vanishing() -> tuple[bool, str]:
    ok1, n1 = _all_pairs_vanish(linear_quiver(1), 1)
    ok2a, n2a = _all_pairs_vanish(linear_quiver(1), 2)
    ok2b, n2b = _all_pairs_vanish(linear_quiver(2), 2)
    return ok1 and ok2a and ok2b, f"Ext^1 on A1 ({n1} pairs), Ext^2 on A1/A2 ({n2a}+{n2b} pairs) vanish saturated"


# -- criterion 4 -------------------------------------------------------------


def interval_witness_sequence(q: Quiver) -> ExactSequence:
    """``[1,1] >-> [1,2] -> [2,3] ->> [3,3]``."""
    objs = [build_interval(q, s) for s in ((1, 1), (1, 2), (2, 3), (3, 3))]
    maps = [next(h for h in enumerate_morphisms(a, b) if not h.is_zero()) for a, b in zip(objs, objs[1:])]
    return ExactSequence(maps)


def check_ext2_A3() -> tuple[bool, str]:
    q = linear_quiver(3)
    e = ext(2, build_interval(q, (3, 3)), build_interval(q, (1, 1)))
    idx = e.class_of(interval_witness_sequence(q))
    ok = e.dim >= 1 and idx is not None and idx != e.zero_class
    return ok, f"dim Ext^2([3,3],[1,1]) = {e.dim} (saturated={e.saturated}); witness in class {idx}"


def check_ext3_vanishing() -> tuple[bool, str]:
    ok3, n3 = _all_pairs_vanish(linear_quiver(3), 3)
    ok4, n4 = _all_pairs_vanish(linear_quiver(4), 3)
    return ok3 and ok4, f"Ext^3 vanishes saturated on A3 ({n3} pairs) and A4 ({n4} pairs)"


def check_gldim() -> tuple[bool, str]:
    values = []
    ok = True
    for n, want in zip(range(1, 5), (0, 1, 2, 2)):
        r = global_dimension(linear_quiver(n))
        values.append(r.value)
        ok &= r.value == want and r.saturated
    return ok, f"gldim A1..A4 = {values}"


# -- criterion 5 -------------------------------------------------------------


def check_projectivity_linear(search_total: int | None = None) -> tuple[bool, str]:
    """Exact verdict vs arrow-injectivity, cross-checked by the bounded search on small inputs."""
    total = searched = 0
    bad = []
    for n in range(1, 5):
        q = linear_quiver(n)
        for M in isoclasses(q, (2,) * n):
            verdict = is_projective(M)
            expect = arrows_injective(M)
            total += 1
            agree = (verdict.status == PROJECTIVE) == expect
            if verdict.status == NOT_PROJECTIVE:
                agree &= verify_witness(M, verdict.witness)
            if search_total is None or M.total_dim <= search_total:
                searched += 1
                s = is_projective(M, method="search")
                agree &= (s.status == PROJECTIVE_UP_TO_CAP) == expect
                if s.status == NOT_PROJECTIVE:
                    agree &= verify_witness(M, s.witness)
            if not agree:
                bad.append(f"A{n} {M!r}")
    return not bad, f"{total} isoclasses, {searched} cross-checked by search" + (f"; bad: {bad[:2]}" if bad else "")


def check_projective_cover(samples: int = 50, seed: int = 0) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    bad = 0
    for n in range(1, 5):
        q = linear_quiver(n)
        for _ in range(samples):
            M = random_representation(q, rng, 3)
            P, epi = projective_cover_surjection(M)
            if not (arrows_injective(P) and is_epi(epi) and epi.source == P and epi.target == M):
                bad += 1
    return bad == 0, f"{4 * samples} random covers, {bad} invalid"


# -- criterion 6 -------------------------------------------------------------


def check_descent_example() -> tuple[bool, str]:
    q, named = fixture("A2")
    A, B = named["S1+S2+P2"], named["S1+S2"]
    C, D = named["P2+P2"], named["P2"]
    h = hom_dim(A, B)
    e1 = ext(1, A, B).dim
    v1 = euler_form(C, D).value
    v2 = euler_form(A, B).value
    res = descent_check(q, [C, A, D, B])
    flagged = any(
        {canonical_key(p.first.L), canonical_key(p.second.L)} == {canonical_key(C), canonical_key(A)}
        and {canonical_key(p.first.N), canonical_key(p.second.N)} == {canonical_key(D), canonical_key(B)}
        and p.classes == ((2, 2), (1, 1))
        and {p.first.value, p.second.value} == {2, 4}
        for p in res.pairs
    )
    classes_ok = grothendieck_class(C) == grothendieck_class(A) == (2, 2) and grothendieck_class(D) == grothendieck_class(B) == (1, 1)
    ok = h == 5 and e1 == 1 and v1 == 2 and v2 == 4 and flagged and classes_ok
    return ok, f"hom={h} ext1={e1} <P2+P2,P2>={v1} <S1+S2+P2,S1+S2>={v2} flagged={flagged}"


# -- criterion 7 -------------------------------------------------------------


def check_non_linear_quiver() -> tuple[bool, str]:
    q, named = fixture("Q3_2_1")
    S1, S2, S3, P1, P3, M = (named[k] for k in ("S1", "S2", "S3", "P1", "P3", "M"))
    notes = []
    item1 = all(is_projective(X, 4).status == PROJECTIVE_UP_TO_CAP for X in (S2, P1, P3))
    notes.append(f"(1) {item1}")
    maps_to_M = {canonical_key(X): hom_dim(X, M) for X in tree_indecomposables(q) if hom_dim(X, M) > 0}
    want = {canonical_key(X): 1 for X in (S2, P1, P3, M)}
    item2 = maps_to_M == want
    notes.append(f"(2) {item2}")
    item3 = hom_dim(M, P1) == 0
    notes.append(f"(3) {item3}")
    to_s1 = [h for h in enumerate_morphisms(P1, S1) if not h.is_zero()]
    item4 = hom_dim(P1, S1) == 1 and is_epi(to_s1[0])
    notes.append(f"(4) {item4}")
    item5 = hom_dim(M, S1) == 1
    notes.append(f"(5) {item5}")
    verdict = is_projective(M)
    g = next(h for h in enumerate_morphisms(M, S1) if not h.is_zero())
    paper_witness = verify_witness(M, LiftingWitness(to_s1[0], g))
    not_proj = verdict.status == NOT_PROJECTIVE and verify_witness(M, verdict.witness) and paper_witness
    notes.append(f"M not projective {not_proj}")
    ext_zero = all(ext(1, M, X).dim == 0 for X in tree_indecomposables(q))
    notes.append(f"Ext^1(M,-)=0 {ext_zero}")
    splits = epis_onto_split(M, (2, 2, 2))
    notes.append(f"epis onto M split {splits}")
    ok = item1 and item2 and item3 and item4 and item5 and not_proj and ext_zero and splits
    return ok, ", ".join(notes)


def epis_onto_split(M: Representation, per_vertex) -> bool:
    """Every epimorphism ``X ->> M`` with ``dims X <= per_vertex`` has a section."""
    ident = RepMorphism.from_lists(M, M, [list(range(1, d + 1)) for d in M.dims])
    for X in isoclasses(M.quiver, per_vertex):
        for f in enumerate_morphisms(X, M):
            if is_epi(f) and find_lift(M, f, ident) is None:
                return False
    return True


# -- criterion 8 -------------------------------------------------------------


def check_duality() -> tuple[bool, str]:
    count = 0
    for a in range(5):
        for b in range(5):
            for f in enumerate_maps(a, b):
                t = dual(f)
                count += 1
                if dual(t) != f:
                    return False, f"involution fails for {f}"
                back = compose(f, t)
                if any(back(y) != y for y in f.image_of if y):
                    return False, f"f∘f^t is not the identity on the image of {f}"
                fix = compose(t, f)
                ker = kernel_elements(f)
                if any(fix(x) != (0 if x in ker else x) for x in range(1, a + 1)):
                    return False, f"f^t∘f misbehaves for {f}"
    return True, f"{count} maps with dims <= 4"


def check_krull_schmidt(samples: int = 100, seed: int = 1) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    quivers = [linear_quiver(n) for n in (2, 3, 4)] + [fixture("Q3_2_1")[0]]
    for q in quivers:
        for _ in range(samples):
            M = random_representation(q, rng, 3)
            if _summand_keys(M) != _summand_keys(random_relabel(M, rng)):
                return False, f"summands differ after relabeling {M!r}"
    return True, f"{samples * len(quivers)} random representations"


def check_zero_sequences() -> tuple[bool, str]:
    """Zero sequences sit in the zero class, and sums of zero-class sequences stay there."""
    q = linear_quiver(3)
    pairs = [((3, 3), (1, 1)), ((2, 3), (1, 2)), ((2, 2), (1, 1)), ((1, 1), (3, 3))]
    reps = [(build_interval(q, a), build_interval(q, b)) for a, b in pairs]
    checked = 0
    for n in (1, 2):
        sets = [ext(n, N, L) for N, L in reps]
        for e in sets:
            if e.class_of(zero_sequence(n, e.N, e.L)) != e.zero_class:
                return False, f"zero sequence outside the zero class in degree {n}"
        for e1 in sets:
            for e2 in sets:
                total = ext(n, _sum(e1.N, e2.N), _sum(e1.L, e2.L), check_saturation=False)
                for s1 in e1.classes[e1.zero_class][:3]:
                    for s2 in e2.classes[e2.zero_class][:3]:
                        checked += 1
                        if total.class_of(sequence_direct_sum(s1, s2)) != total.zero_class:
                            return False, f"sum of zero-class sequences is nonzero (degree {n})"
    return True, f"{checked} sums of zero-class sequences"


def _sum(A: Representation, B: Representation) -> Representation:
    from .quiver import direct_sum

    return direct_sum(A, B).rep


def check_thread_determinism() -> tuple[bool, str]:
    q = linear_quiver(3)
    N, L = build_interval(q, (3, 3)), build_interval(q, (1, 1))
    outputs = {json.dumps(ext(2, N, L, threads=t).to_json(), sort_keys=True) for t in (1, 2, 4)}
    return len(outputs) == 1, f"{len(outputs)} distinct outputs over thread counts 1, 2, 4"


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    id: str
    criterion: int
    description: str
    check: Callable[[], tuple[bool, str]]


@dataclass
class ClaimResult:
    claim: Claim
    ok: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {
            "id": self.claim.id,
            "criterion": self.claim.criterion,
            "description": self.claim.description,
            "ok": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# wall-clock limit per criterion in seconds
BUDGETS = {1: 5, 2: None, 3: None, 4: 600, 5: None, 6: 10, 7: 120, 8: None}

CLAIMS = [
    Claim("hom-table", 1, "Hom dimensions between intervals on A2..A5 follow i<=k<=j<=l", check_hom_table),
    Claim("classification", 2, "tree indecomposables: n(n+1)/2 on An, 6 on 3->2<-1", check_classification),
    Claim("ext1-A2", 3, "Ext^1([2,2],[1,1]) is nonzero on A2", check_ext1_nonzero_A2),
    Claim("low-vanishing", 3, "Ext^1 vanishes on A1 and Ext^2 vanishes on A1, A2", check_low_vanishing),
    Claim("ext2-A3", 4, "Ext^2([3,3],[1,1]) is nonzero on A3 with the interval witness", check_ext2_A3),
    Claim("ext3-vanishing", 4, "Ext^3 vanishes on A3 and A4", check_ext3_vanishing),
    Claim("gldim", 4, "global dimensions of A1..A4 are 0, 1, 2, 2", check_gldim),
    Claim("projective-linear", 5, "projective iff all arrow maps injective on A1..A4", check_projectivity_linear),
    Claim("projective-cover", 5, "projective covers are epimorphisms from projectives", check_projective_cover),
    Claim("euler-descent", 6, "Euler form values 2 and 4 on equal dimension-vector classes", check_descent_example),
    Claim("non-linear-projectives", 7, "projectives and Ext^1 on the quiver 3->2<-1", check_non_linear_quiver),
    Claim("duality", 8, "duality is an involution with the section properties", check_duality),
    Claim("krull-schmidt", 8, "decomposition is invariant under relabeling", check_krull_schmidt),
    Claim("zero-class", 8, "zero sequences and their sums lie in the zero class", check_zero_sequences),
    Claim("threads", 8, "Ext output does not depend on the thread count", check_thread_determinism),
]


def run_claims(ids: list[str] | None = None) -> list[ClaimResult]:
    results = []
    elapsed: dict[int, float] = {}
    for claim in CLAIMS:
        if ids and claim.id not in ids and str(claim.criterion) not in ids:
            continue
        start = time.perf_counter()
        try:
            ok, detail = claim.check()
        except Exception as exc:  # reported as a failed claim
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        seconds = time.perf_counter() - start
        elapsed[claim.criterion] = elapsed.get(claim.criterion, 0.0) + seconds
        budget = BUDGETS.get(claim.criterion)
        if budget is not None and elapsed[claim.criterion] > budget:
            ok = False
            detail += f" (criterion {claim.criterion} over its {budget}s budget)"
        results.append(ClaimResult(claim, ok, detail, seconds))
    return results
