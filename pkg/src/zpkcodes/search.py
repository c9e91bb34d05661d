"""Exhaustive desk-scale sweeps over generator matrices.

Candidates are built from unit-orbit representatives of nonzero columns:
one matrix per non-decreasing multiset of representatives (a set when
projectivity is required).  This only removes equivalence under column
permutation and unit column scaling; row-equivalent duplicates across
different ``l`` remain and are harmless for an existence question.

Candidates carry a global index in a fixed order, so sweeps can be split
into contiguous ranges, merged in ascending order, and resumed from a token.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations, combinations_with_replacement, islice, product

import numpy as np

from .codes import (
    Code,
    GuardExceeded,
    canonical_column,
    check_weight_form,
    default_guard,
    dual_hamming_distance,
    is_projective,
    is_proper_hom,
    is_regular,
    two_weight_profile,
)
from .graph import DEFAULT_VERTEX_GUARD, srg_report
from .report import srg_dict, weight_form_dict
from .ring import RingSpec

log = logging.getLogger(__name__)

DEFAULT_WORK_GUARD = 10**8
COLUMN_GUARD = 10**6


class SearchConfigError(ValueError):
    pass


class WorkGuardExceeded(RuntimeError):
    def __init__(self, resume_token: int, guard: int):
        super().__init__(f"work guard {guard} reached; resume from candidate {resume_token}")
        self.resume_token = resume_token
        self.guard = guard


def column_orbit_reps(spec: RingSpec, ell: int, regular_only: bool = False) -> list[tuple[int, ...]]:
    """Least member of each unit orbit of nonzero columns in R^ell, sorted."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if spec.q**ell > COLUMN_GUARD:
        raise GuardExceeded("column enumeration", spec.q**ell, COLUMN_GUARD)
    reps = set()
    for col in product(range(spec.q), repeat=ell):
        if not any(col):
            continue
        if regular_only and not any(spec.is_unit(x) for x in col):
            continue
        reps.add(canonical_column(col, spec))
    return sorted(reps)


@dataclass(frozen=True)
class SearchSpace:
    spec: RingSpec
    ell_max: int
    n_max: int
    n_min: int = 1
    require_regular: bool = False
    require_projective: bool = False
    dual_distance_min: int = 0
    two_weight_only: bool = False
    work_guard: int = DEFAULT_WORK_GUARD

    def __post_init__(self):
        if self.ell_max < 1 or self.n_min < 1 or self.n_max < self.n_min:
            raise SearchConfigError(
                f"need 1 <= ell_max and 1 <= n_min <= n_max, got ell_max={self.ell_max}, "
                f"n_min={self.n_min}, n_max={self.n_max}"
            )
        if self.require_projective:
            avail = len(self.columns(self.ell_max))
            if self.n_max > avail:
                raise SearchConfigError(
                    f"projective codes need distinct column classes, but only {avail} exist "
                    f"for l={self.ell_max} and n_max={self.n_max}"
                )

    def columns(self, ell: int) -> list[tuple[int, ...]]:
        return column_orbit_reps(self.spec, ell, self.require_regular)

    def blocks(self):
        """(ell, n, columns, count) in sweep order."""
        for ell in range(1, self.ell_max + 1):
            cols = self.columns(ell)
            for n in range(self.n_min, self.n_max + 1):
                m = len(cols)
                count = math.comb(m, n) if self.require_projective else math.comb(m + n - 1, n)
                yield ell, n, cols, count

    def candidate_count(self) -> int:
        return sum(b[3] for b in self.blocks())

    def describe(self) -> dict:
        d = asdict(self)
        d["spec"] = {"p": self.spec.p, "k": self.spec.k, "q": self.spec.q}
        return d


def _matrices(space: SearchSpace, start: int, stop: int | None):
    index = 0
    for ell, n, cols, count in space.blocks():
        if stop is not None and index >= stop:
            return
        if index + count <= start:
            index += count
            continue
        chooser = combinations if space.require_projective else combinations_with_replacement
        it = chooser(range(len(cols)), n)
        skip = max(0, start - index)
        index += skip
        for combo in islice(it, skip, None):
            if stop is not None and index >= stop:
                return
            G = np.array([cols[c] for c in combo], dtype=np.int64).T
            yield index, G
            index += 1


def enumerate_codes(space: SearchSpace, start: int = 0):
    """Yield (index, generator) pairs; raises WorkGuardExceeded with a resume token."""
    for index, G in _matrices(space, start, None):
        if index - start >= space.work_guard:
            raise WorkGuardExceeded(index, space.work_guard)
        yield index, G


@dataclass
class SearchHit:
    index: int | None
    generator: list
    size: int
    shape: list
    hom_distribution: dict
    weights: tuple[int, int] | None
    dual_distance: float | int
    regular: bool
    projective: bool
    proper: bool
    weight_form: dict | None = None
    srg: dict | None = None
    srg_checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "generator": self.generator,
            "size": self.size,
            "shape": self.shape,
            "hom_distribution": {str(w): m for w, m in sorted(self.hom_distribution.items())},
            "weights": list(self.weights) if self.weights else None,
            "dual_distance": self.dual_distance,
            "regular": self.regular,
            "projective": self.projective,
            "proper": self.proper,
            "weight_form": self.weight_form,
            "srg": self.srg,
        }


def classify(G, spec: RingSpec, index: int | None = None, guard: int | None = None,
             vertex_guard: int = DEFAULT_VERTEX_GUARD) -> SearchHit:
    """Run the full code pipeline on one generator; two-weight codes get their coset-graph report."""
    C = Code(G, spec, guard=default_guard() if guard is None else guard)
    C.require_distributions()
    weights = two_weight_profile(C)
    hit = SearchHit(
        index=index,
        generator=C.generator.tolist(),
        size=C.size,
        shape=list(C.form.shape),
        hom_distribution=dict(C.hom_distribution),
        weights=weights,
        dual_distance=dual_hamming_distance(C),
        regular=is_regular(C.generator, spec).holds,
        projective=is_projective(C.generator, spec).holds,
        proper=is_proper_hom(C),
    )
    if weights:
        hit.weight_form = weight_form_dict(check_weight_form(weights[0], weights[1], C.size, spec.p))
        rep = srg_report(C.dual(), vertex_guard=vertex_guard)
        hit.srg = srg_dict(rep)
    return hit


HYPOTHESES = ("two_weight", "regular", "dual_distance")


def _flags(hit: SearchHit, space: SearchSpace) -> dict[str, bool]:
    return {
        "two_weight": hit.weights is not None,
        "regular": hit.regular,
        "dual_distance": hit.dual_distance >= space.dual_distance_min,
    }


def _is_hit(flags: dict[str, bool], space: SearchSpace) -> bool:
    if space.two_weight_only and not flags["two_weight"]:
        return False
    if space.require_regular and not flags["regular"]:
        return False
    return flags["dual_distance"]


def _empty_acc() -> dict:
    return {
        "examined": 0,
        "combo": [0] * 8,
        "hits": [],
        "two_weight": [],
        "skipped": [],
        "srg_count": 0,
        "eq_checked": 0,
        "eq_failures": [],
        "eq_not_applicable": 0,
        "relation_failures": [],
        "weight_form_checked": 0,
        "weight_form_failures": [],
        "consistency_failures": [],
        "collision_graphs": 0,
    }


def _combo_index(flags: dict[str, bool], mask: int) -> bool:
    return all(flags[h] for i, h in enumerate(HYPOTHESES) if mask >> i & 1)


def _record(acc: dict, hit: SearchHit, space: SearchSpace, keep_two_weight: bool) -> None:
    flags = _flags(hit, space)
    acc["examined"] += 1
    for mask in range(8):
        if _combo_index(flags, mask):
            acc["combo"][mask] += 1
    if hit.weights:
        if hit.regular and hit.projective:
            acc["weight_form_checked"] += 1
            if not hit.weight_form["holds"]:
                acc["weight_form_failures"].append(hit.index)
        srg = hit.srg
        # without connection-set collisions, two weights must give exactly two restricted
        # eigenvalues and an SRG, unless the graph is SRG-undefined (complete or edgeless);
        # with collisions the simple graph is a different graph and may or may not be an SRG
        if srg["degree_formula"]["holds"]:
            if srg["verdict"] == "not-srg":
                acc["consistency_failures"].append(hit.index)
        else:
            acc["collision_graphs"] += 1
        if srg["verdict"] == "srg":
            acc["srg_count"] += 1
            rel = srg["relations"]
            if rel is None or not all(rel.values()):
                acc["relation_failures"].append(hit.index)
            eqs = srg["lambda_mu_identities"]
            if eqs is None:
                acc["eq_not_applicable"] += 1
            else:
                acc["eq_checked"] += 1
                if not (eqs["lambda_minus_mu"] and eqs["gap_squared"] and eqs["gap_squared_via_mu"]):
                    acc["eq_failures"].append(hit.index)
        if keep_two_weight and hit.regular:
            acc["two_weight"].append(hit.to_dict())
    if _is_hit(flags, space):
        acc["hits"].append(hit)


def _sweep_range(args) -> dict:
    space, start, stop, guard, vertex_guard, keep_two_weight = args
    acc = _empty_acc()
    for index, G in _matrices(space, start, stop):
        try:
            hit = classify(G, space.spec, index=index, guard=guard, vertex_guard=vertex_guard)
        except GuardExceeded as exc:
            log.warning("candidate %d skipped: %s", index, exc)
            acc["skipped"].append({"index": index, "reason": str(exc)})
            continue
        _record(acc, hit, space, keep_two_weight)
    return acc


def _merge(parts: list[dict]) -> dict:
    acc = _empty_acc()
    for part in parts:
        for key, val in part.items():
            if key == "combo":
                acc["combo"] = [a + b for a, b in zip(acc["combo"], val)]
            elif isinstance(val, list):
                acc[key].extend(val)
            else:
                acc[key] += val
    return acc


def _revalidate(hit: SearchHit, spec: RingSpec, guard, vertex_guard) -> bool:
    again = classify(hit.generator, spec, index=hit.index, guard=guard, vertex_guard=vertex_guard)
    return again.to_dict() == hit.to_dict()


def sweep(space: SearchSpace, start: int = 0, workers: int = 1, guard: int | None = None,
          vertex_guard: int = DEFAULT_VERTEX_GUARD, keep_two_weight: bool = False) -> dict:
    """Classify every candidate in the space and tabulate the hypothesis combinations."""
    total = space.candidate_count()
    stop = min(total, start + space.work_guard)
    complete = stop >= total
    if workers > 1 and stop - start > workers:
        step = math.ceil((stop - start) / workers)
        ranges = [(a, min(stop, a + step)) for a in range(start, stop, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_range, [(space, a, b, guard, vertex_guard, keep_two_weight)
                                                 for a, b in ranges]))
    else:
        parts = [_sweep_range((space, start, stop, guard, vertex_guard, keep_two_weight))]
    acc = _merge(parts)

    hits = []
    for hit in acc["hits"]:
        d = hit.to_dict()
        d["revalidated"] = _revalidate(hit, space.spec, guard, vertex_guard)
        hits.append(d)

    combos = []
    for mask in range(8):
        imposed = [h for i, h in enumerate(HYPOTHESES) if mask >> i & 1]
        combos.append({
            "two_weight": "two_weight" in imposed,
            "regular": "regular" in imposed,
            f"dual_distance>={space.dual_distance_min}": "dual_distance" in imposed,
            "candidates": acc["examined"],
            "hits": acc["combo"][mask],
        })
    return {
        "space": space.describe(),
        "candidates_total": total,
        "start": start,
        "candidates_examined": acc["examined"],
        "complete": complete and not acc["skipped"],
        "resume_token": None if complete else stop,
        "skipped": acc["skipped"],
        "combinations": combos,
        "hit_count": len(hits),
        "hits": hits,
        "two_weight_regular_codes": acc["two_weight"] if keep_two_weight else None,
        "checks": {
            "srgs": acc["srg_count"],
            "srg_relations_failures": acc["relation_failures"],
            "lambda_mu_checked": acc["eq_checked"],
            "lambda_mu_not_applicable": acc["eq_not_applicable"],
            "lambda_mu_failures": acc["eq_failures"],
            "weight_form_checked": acc["weight_form_checked"],
            "weight_form_failures": acc["weight_form_failures"],
            "two_weight_collision_graphs": acc["collision_graphs"],
            "two_weight_not_srg": acc["consistency_failures"],
        },
    }


def verify_nonexistence(space: SearchSpace, **kw) -> dict:
    """Sweep under the nonexistence hypotheses (odd p, k >= 2); any hit is a counterexample candidate."""
    if space.spec.p == 2 or space.spec.k < 2:
        raise SearchConfigError(f"nonexistence hypotheses need odd p and k >= 2, got {space.spec}")
    space = replace(space, two_weight_only=True)
    rep = sweep(space, **kw)
    rep["prediction"] = "no two-weight code with the imposed hypotheses"
    rep["prediction_holds"] = rep["hit_count"] == 0
    rep["verification"] = "complete" if rep["complete"] else "partial"
    return rep


def contrast_search_z4(ell_max: int, n_max: int, n_min: int = 1, require_projective: bool = False,
                       dual_distance_min: int = 4, **kw) -> dict:
    """The same sweep over Z_4, reported observationally."""
    space = SearchSpace(RingSpec(2, 2), ell_max=ell_max, n_max=n_max, n_min=n_min,
                        require_projective=require_projective, dual_distance_min=dual_distance_min,
                        two_weight_only=True, work_guard=kw.pop("work_guard", DEFAULT_WORK_GUARD))
    rep = sweep(space, keep_two_weight=True, **kw)
    rep["observational"] = True
    return rep
