"""Built-in invariant checks, run by ``zpk selftest``.

Each check is small enough to finish in a few seconds; the pytest suite
covers the same ground more thoroughly.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .codes import Code, same_code
from .graph import (
    build_coset_graph,
    character_check,
    check_srg_relations,
    measure_srg,
    spectrum_via_dual_weights,
    unit_cayley_graph,
)
from .ring import (
    RingSpec,
    gamma,
    hom_weight,
    hom_weight_via_characters,
    lemma_unit_sum_formula,
    unit_sum_reps,
)

RINGS = [RingSpec(p, k) for p, k in ((2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2))]


def _character_identity():
    worst = max(abs(hom_weight(x, s) - hom_weight_via_characters(x, s)) for s in RINGS for x in range(s.q))
    return worst < 1e-9, f"max deviation {worst:.3g}"


def _weight_sum():
    ok = all(sum(hom_weight(x, s) for x in range(s.q)) == gamma(s) * s.q for s in RINGS)
    return ok, "sum of w_h over the ring equals gamma*q"


def _unit_sums():
    for s in RINGS:
        if s.p == 2:
            continue
        for t in s.unit_list:
            un = unit_sum_reps(t, s)
            if un != lemma_unit_sum_formula(s) or unit_sum_reps(t, s, ordered=True) != 2 * un - 1:
                return False, f"{s}, t={t}"
    return True, "unordered count matches the closed form for odd p"


def _duality():
    rng = random.Random(0)
    rings = [RingSpec.from_modulus(q) for q in (2, 3, 4, 5, 7, 8, 9, 25, 27)]
    for _ in range(30):
        s = rng.choice(rings)
        n = rng.randint(1, 4)
        ell = rng.randint(1, n + 1)
        G = np.array([[rng.randrange(s.q) for _ in range(n)] for _ in range(ell)])
        C = Code(G, s, guard=10**5)
        D = C.dual()
        if C.size * D.size != s.q**n or ((C.generator @ D.generator.T) % s.q).any():
            return False, f"{s}, G={G.tolist()}"
        if not same_code(C, D.dual()):
            return False, f"dual of dual differs for {s}, G={G.tolist()}"
    return True, "30 random codes"


def _worked_example():
    s = RingSpec(3, 1)
    C = Code([[1, 0, 1], [0, 1, 1]], s)
    g = build_coset_graph(C.dual())
    m = measure_srg(g)
    spec_ok = spectrum_via_dual_weights(C.dual()) == {6: 1, 0: 6, -3: 2}
    res = character_check(g).closed_form_residual
    rel = check_srg_relations(m.eta, m.lam, m.mu, [0, -3])
    ok = m.parameters == (9, 6, 3, 6) and spec_ok and res < 1e-6 and all(rel.values())
    return ok, f"SRG{m.parameters}, residual {res:.3g}"


def _lambda_record():
    g = unit_cayley_graph(RingSpec(3, 2))
    m = measure_srg(g)
    return m.lam == 3 and lemma_unit_sum_formula(RingSpec(3, 2)) == 2, f"measured {m.lam}, formula 2"


CHECKS = {
    "character identity": _character_identity,
    "homogeneous weight average": _weight_sum,
    "unit sum lemma": _unit_sums,
    "duality bookkeeping": _duality,
    "worked SRG example": _worked_example,
    "lambda record": _lambda_record,
}


def run_selftest() -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS.items():
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported with the rest
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
