"""Coset (syndrome) Cayley graphs of codes and strongly regular graph checks.

The vertices of the coset graph of a code D are the cosets of D in
Z_q^n.  Each coset is stored by its lexicographically least member and
identified by its syndrome x H^T, where H generates the dual of D.  Two
cosets are adjacent when they differ by the coset of u e_i for a unit u.

Two adjacency notions are kept side by side.  The *generator multiset*
counts every pair (u, i) separately; the closed-form spectrum
K(w) = n (p-1) p^(k-1) - p w is the spectrum of that multiset.  The simple
graph keeps each distinct element of the connection set once.  They agree
exactly when the connection set has p^(k-1) (p-1) n distinct elements.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .codes import Code, GuardExceeded
from .ring import RingSpec, hom_weight_table, lemma_unit_sum_formula

log = logging.getLogger(__name__)

DEFAULT_VERTEX_GUARD = 10**5
DENSE_PAIR_LIMIT = 2048
EIGEN_TOL = 1e-6


class ZeroColumnError(ValueError):
    """The parity-check matrix has a zero column, which would create loops."""


class SrgUndefined(ValueError):
    """Graph is complete or edgeless, so SRG parameters are not defined."""

    def __init__(self, kind: str):
        super().__init__(f"SRG-undefined: {kind}")
        self.kind = kind


class NotSrgBySpectrum(ValueError):
    pass


class WellDefinednessError(AssertionError):
    pass


# -- construction -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CosetGraph:
    spec: RingSpec
    base: Code
    parity: np.ndarray          # rows generate the dual of ``base``
    vertices: np.ndarray        # canonical representatives, lexicographically sorted
    syndromes: np.ndarray
    generators: tuple[tuple[int, int], ...]   # (unit, coordinate) pairs
    generator_neighbors: np.ndarray           # V x len(generators), with repeats
    connection: tuple[int, ...]               # vertex indices of the distinct S cosets
    multiplicity: dict[int, int] = field(repr=False)
    neighbors: np.ndarray = field(repr=False)  # V x |S|, each row sorted

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def degree(self) -> int:
        return len(self.connection)

    def adjacency_matrix(self) -> np.ndarray:
        V = self.order
        A = np.zeros((V, V), dtype=np.int64)
        if self.degree:
            A[np.repeat(np.arange(V), self.degree), self.neighbors.reshape(-1)] = 1
        return A

    def generator_matrix(self) -> np.ndarray:
        """Adjacency counted with generator multiplicity."""
        V = self.order
        A = np.zeros((V, V), dtype=np.int64)
        if len(self.generators):
            np.add.at(A, (np.repeat(np.arange(V), len(self.generators)),
                          self.generator_neighbors.reshape(-1)), 1)
        return A


def _key_weights(rows: int, q: int) -> np.ndarray:
    if rows and rows * math.log2(q) > 62:
        raise GuardExceeded("syndrome key width", q**rows, 2**62)
    return np.array([q**j for j in range(rows)], dtype=np.int64)


def _lex_vectors(start: int, stop: int, n: int, q: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def build_coset_graph(D: Code, vertex_guard: int = DEFAULT_VERTEX_GUARD) -> CosetGraph:
    spec, n, q = D.spec, D.n, D.spec.q
    total = q**n
    V = total // D.size
    if V > vertex_guard:
        raise GuardExceeded("coset graph vertices", V, vertex_guard)
    dual = D.dual()
    H = dual.form.rows if len(dual.form.rows) else np.zeros((0, n), dtype=np.int64)
    w = _key_weights(len(H), q)

    def keys(syn):
        return syn @ w if len(w) else np.zeros(len(syn), dtype=np.int64)

    # first hit in lexicographic scan order is the least coset member
    found_keys: list[np.ndarray] = []
    found_vecs: list[np.ndarray] = []
    seen: set[int] = set()
    chunk = max(4096, min(1 << 16, total))
    start = 0
    while len(seen) < V and start < total:
        stop = min(total, start + chunk)
        vecs = _lex_vectors(start, stop, n, q)
        ks = keys((vecs @ H.T) % q)
        uk, first = np.unique(ks, return_index=True)
        new = np.array([k not in seen for k in uk.tolist()], dtype=bool)
        if new.any():
            order = np.sort(first[new])
            found_keys.append(ks[order])
            found_vecs.append(vecs[order])
            seen.update(ks[order].tolist())
        start = stop
    reps = np.concatenate(found_vecs)
    vkeys = np.concatenate(found_keys)
    assert len(reps) == V, (len(reps), V)
    syn = (reps @ H.T) % q
    sort_keys = np.argsort(vkeys)
    sorted_keys = vkeys[sort_keys]

    def lookup(ks):
        pos = np.searchsorted(sorted_keys, ks)
        return sort_keys[pos]

    if V > 1:
        zero_cols = [i for i in range(n) if not H[:, i].any()]
        if zero_cols:
            raise ZeroColumnError(
                f"parity-check column {zero_cols[0]} is zero: e_{zero_cols[0]} lies in the code"
            )
    # on a single vertex every generator is a loop: kept in the multiset, not in S
    gens = tuple((u, i) for i in range(n) for u in spec.unit_list)

    gen_nbrs = np.zeros((V, len(gens)), dtype=np.int64)
    gen_vertex = []
    for j, (u, i) in enumerate(gens):
        g = (u * H[:, i]) % q
        gen_nbrs[:, j] = lookup(keys((syn + g) % q))
        gen_vertex.append(int(gen_nbrs[0, j]))
    mult = Counter(gen_vertex)
    if V > 1 and 0 in mult:
        raise ZeroColumnError("connection set contains the zero coset")
    mult.pop(0, None)
    connection = tuple(sorted(mult))
    cols = [gen_vertex.index(s) for s in connection]
    nbrs = np.sort(gen_nbrs[:, cols], axis=1) if cols else np.zeros((V, 0), dtype=np.int64)
    expected = spec.p ** (spec.k - 1) * (spec.p - 1) * n
    if V > 1 and len(connection) < expected:
        log.warning("connection set has %d distinct elements, fewer than %d", len(connection), expected)
    return CosetGraph(
        spec=spec,
        base=D,
        parity=H,
        vertices=reps,
        syndromes=syn,
        generators=gens,
        generator_neighbors=gen_nbrs,
        connection=connection,
        multiplicity=dict(mult),
        neighbors=nbrs,
    )


@dataclass(frozen=True)
class DegreeCheck:
    holds: bool
    measured: int
    expected: int

    def __bool__(self):
        return self.holds


def degree_formula_check(g: CosetGraph) -> DegreeCheck:
    spec = g.spec
    expected = spec.p ** (spec.k - 1) * (spec.p - 1) * g.base.n
    return DegreeCheck(g.degree == expected, g.degree, expected)


# -- combinatorial SRG measurement ---------------------------------------------


@dataclass(frozen=True)
class SrgMeasurement:
    v: int
    eta: int | None
    lam: int | None
    mu: int | None
    strongly_regular: bool
    reason: str | None = None
    witness: dict | None = None
    pair_scan: str = "all-pairs"

    @property
    def parameters(self):
        return (self.v, self.eta, self.lam, self.mu) if self.strongly_regular else None


def _common_counts(g) -> tuple[np.ndarray, np.ndarray, str]:
    """Adjacency and common-neighbour matrix (or the row of vertex 0)."""
    if isinstance(g, CosetGraph):
        V = g.order
        if V <= DENSE_PAIR_LIMIT:
            A = g.adjacency_matrix()
            Af = A.astype(np.float64)
            return A, np.rint(Af @ Af).astype(np.int64), "all-pairs"
        # translations act transitively, so vertex 0's row determines every pair
        row = np.zeros(V, dtype=np.int64)
        S = np.array(g.connection, dtype=np.int64)
        np.add.at(row, g.neighbors[S].reshape(-1), 1)
        a0 = np.zeros(V, dtype=np.int64)
        a0[S] = 1
        return a0.reshape(1, -1), row.reshape(1, -1), "translation-reduced"
    A = np.asarray(g, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if (A != A.T).any() or np.diag(A).any() or not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency matrix must be symmetric 0/1 with zero diagonal")
    Af = A.astype(np.float64)
    return A, np.rint(Af @ Af).astype(np.int64), "all-pairs"


def measure_srg(g) -> SrgMeasurement:
    """Count common neighbours of every pair; accepts a CosetGraph or a 0/1 matrix."""
    A, C2, scan = _common_counts(g)
    V = A.shape[1]
    rows = A.shape[0]
    off = ~np.eye(V, dtype=bool)[:rows]
    degrees = A.sum(axis=1)
    if not degrees.any():
        raise SrgUndefined("edgeless")
    if (degrees[0] == V - 1) and (degrees == V - 1).all():
        raise SrgUndefined("complete")
    if (degrees != degrees[0]).any():
        i = int(np.nonzero(degrees != degrees[0])[0][0])
        return SrgMeasurement(V, None, None, None, False, "not regular",
                              {"vertices": [0, i], "degrees": [int(degrees[0]), int(degrees[i])]}, scan)
    eta = int(degrees[0])
    adj = (A == 1) & off
    non = (A == 0) & off

    def constant(mask, label):
        ii, jj = np.nonzero(mask)
        vals = C2[ii, jj]
        bad = np.nonzero(vals != vals[0])[0]
        if len(bad):
            b = bad[0]
            return None, {
                "kind": label,
                "pair": [int(ii[0]), int(jj[0])],
                "count": int(vals[0]),
                "other_pair": [int(ii[b]), int(jj[b])],
                "other_count": int(vals[b]),
            }
        return int(vals[0]), None

    lam, wit = constant(adj, "adjacent")
    if wit:
        return SrgMeasurement(V, eta, None, None, False, "lambda not constant", wit, scan)
    mu, wit = constant(non, "non-adjacent")
    if wit:
        return SrgMeasurement(V, eta, lam, None, False, "mu not constant", wit, scan)
    return SrgMeasurement(V, eta, lam, mu, True, None, None, scan)


def measured_lambda(g) -> int | None:
    """Common neighbours of adjacent pairs when constant; no SRG precondition."""
    A, C2, _ = _common_counts(g)
    V = A.shape[1]
    off = ~np.eye(V, dtype=bool)[: A.shape[0]]
    vals = C2[(A == 1) & off]
    if len(vals) == 0 or (vals != vals[0]).any():
        return None
    return int(vals[0])


# -- spectrum -----------------------------------------------------------------


def closed_form_eigenvalue(w: int, n: int, spec: RingSpec) -> int:
    return n * (spec.p - 1) * spec.p ** (spec.k - 1) - spec.p * w


def spectrum_via_dual_weights(D: Code) -> dict[int, int]:
    """Spectrum of the coset graph of D, from the homogeneous weights of its dual."""
    dual = D.dual()
    dual.require_distributions()
    spec = D.spec
    out: Counter = Counter()
    for w, m in dual.hom_distribution.items():
        out[closed_form_eigenvalue(w, D.n, spec)] += m
    return dict(sorted(out.items(), reverse=True))


@dataclass(frozen=True)
class CharacterCheck:
    closed_form_residual: float
    simple_residual: float
    simple_spectrum: dict[int, int]
    dual_words: int


def character_check(g: CosetGraph, words: np.ndarray | None = None, chunk: int = 256) -> CharacterCheck:
    """Apply both adjacencies to every character vector e_x, x in the dual of the base code.

    ``words`` defaults to the whole dual.  The generator-multiset adjacency is
    compared with K(w_h(x)); the simple
    adjacency is compared with its own character sum, which is an integer
    because the connection set is closed under unit multiplication.
    """
    spec, q, n = g.spec, g.spec.q, g.base.n
    X = g.base.dual().codeword_array() if words is None else np.asarray(words, dtype=np.int64) % q
    base_gens = g.base.generator
    if ((X @ base_gens.T) % q).any():
        raise WellDefinednessError("a dual word is not orthogonal to the base code")
    table = np.array(hom_weight_table(spec), dtype=np.int64)
    wts = table[X].sum(axis=1)
    K = n * (spec.p - 1) * spec.p ** (spec.k - 1) - spec.p * wts
    reps = g.vertices
    S = np.array(g.connection, dtype=np.int64)
    closed_res = 0.0
    simple_res = 0.0
    spectrum: Counter = Counter()
    for a in range(0, len(X), chunk):
        Xc = X[a:a + chunk]
        E = np.exp(2j * np.pi * ((reps @ Xc.T) % q) / q)        # V x c
        if len(g.generators):
            AE = E[g.generator_neighbors].sum(axis=1)
        else:
            AE = np.zeros_like(E)
        closed_res = max(closed_res, float(np.abs(AE - K[a:a + chunk] * E).max()))
        if len(S):
            lam = E[S].sum(axis=0)   # e_x(0) = 1, so the eigenvalue is the sum over S
            BE = E[g.neighbors].sum(axis=1)
        else:
            lam = np.zeros(E.shape[1], dtype=complex)
            BE = np.zeros_like(E)
        simple_res = max(simple_res, float(np.abs(BE - lam * E).max()))
        ints = np.rint(lam.real)
        if np.abs(lam - ints).max() > EIGEN_TOL:
            raise WellDefinednessError("simple-graph character sum is not an integer")
        spectrum.update(int(v) for v in ints)
    return CharacterCheck(closed_res, simple_res, dict(sorted(spectrum.items(), reverse=True)), len(X))


def verify_character_eigenvectors(g: CosetGraph, tolerance: float = EIGEN_TOL) -> float:
    """Max residual |A e_x - K(w_h(x)) e_x| over dual words x; asserts it is below tolerance."""
    res = character_check(g).closed_form_residual
    if res >= tolerance:
        raise AssertionError(f"character eigenvector residual {res:.3e} >= {tolerance}")
    return res


# -- parameter relations -------------------------------------------------------


def _eq(a, b, tol):
    exact = all(isinstance(x, (int, Fraction)) for x in (a, b))
    return a == b if exact else abs(a - b) <= tol


def restricted_pair(restricted: Iterable) -> tuple:
    vals = sorted(set(restricted), reverse=True)
    if len(vals) != 2:
        raise NotSrgBySpectrum(f"not SRG by spectrum: {len(vals)} distinct restricted eigenvalues")
    return vals[0], vals[1]


def check_srg_relations(eta, lam, mu, restricted: Iterable, tol: float = 1e-9) -> dict[str, bool]:
    """rs = mu - eta, r + s = lam - mu, (r - s)^2 = (lam - mu)^2 + 4 (eta - mu).

    Exact for integer inputs, within ``tol`` otherwise.
    """
    r, s = restricted_pair(restricted)
    return {
        "rs_product": _eq(r * s, mu - eta, tol),
        "r_plus_s": _eq(r + s, lam - mu, tol),
        "r_minus_s_squared": _eq((r - s) ** 2, (lam - mu) ** 2 + 4 * (eta - mu), tol),
    }


def lambda_mu_identities(w1: int, w2: int, lam: int, mu: int, N: int, p: int) -> dict[str, bool]:
    d = lam - mu
    return {
        "lambda_minus_mu": d == 2 * N - p * (w1 + w2),
        "gap_squared": p * p * (w2 - w1) ** 2 == d * d + 4 * (N - mu),
        "gap_squared_via_mu": p * p * (w2 - w1) ** 2 == d * d + 2 * d + 2 * p * (w2 + w1) - 4 * mu,
        "p_divides_lambda_minus_mu": d % p == 0,
        "p_divides_4mu": (4 * mu) % p == 0,
    }


def lambda_comparison(spec: RingSpec, g) -> dict:
    return {"formula_lambda": lemma_unit_sum_formula(spec), "measured_lambda": measured_lambda(g)}


def unit_cayley_graph(spec: RingSpec) -> CosetGraph:
    """Cayley(Z_q, units), the coset graph of the zero code of length 1."""
    return build_coset_graph(Code.zero(1, spec))


def adjacency_from_edges(v: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    A = np.zeros((v, v), dtype=np.int64)
    for a, b in edges:
        A[a, b] = A[b, a] = 1
    return A


# -- full report ----------------------------------------------------------------


@dataclass
class SrgReport:
    """Everything measured and predicted about the coset graph of one code."""

    vertices: int
    degree: int
    degree_formula: DegreeCheck
    verdict: str
    measurement: SrgMeasurement | None
    closed_form_spectrum: dict[int, int]
    simple_spectrum: dict[int, int]
    closed_form_residual: float
    simple_residual: float
    eigenvalue_source: str
    restricted: tuple | None
    relations: dict[str, bool] | None
    dual_weights: tuple[int, int] | None
    lambda_mu: dict[str, bool] | None
    lambda_mu_note: str | None
    lambda_comparison: dict
    notes: list[str] = field(default_factory=list)

    @property
    def is_srg(self) -> bool:
        return self.verdict == "srg"

    @property
    def parameters(self):
        return self.measurement.parameters if self.measurement else None


def _restricted_values(spectrum: dict[int, int], degree: int) -> list[int]:
    rest = Counter(spectrum)
    rest[degree] -= 1
    return sorted((v for v, m in rest.items() if m > 0), reverse=True)


def srg_report(D: Code, vertex_guard: int = DEFAULT_VERTEX_GUARD, graph: CosetGraph | None = None) -> SrgReport:
    """Build the coset graph of D and check it against the closed form and the SRG relations."""
    g = graph if graph is not None else build_coset_graph(D, vertex_guard)
    spec = D.spec
    deg = degree_formula_check(g)
    closed = spectrum_via_dual_weights(D)
    chars = character_check(g)
    notes: list[str] = []
    try:
        meas = measure_srg(g)
        verdict = "srg" if meas.strongly_regular else "not-srg"
    except SrgUndefined as exc:
        meas = None
        verdict = f"undefined-{exc.kind}"

    N = D.n * (spec.p - 1) * spec.p ** (spec.k - 1)
    if deg.holds:
        source, restricted = "closed-form", _restricted_values(closed, N)
    else:
        source, restricted = "simple-graph", _restricted_values(chars.simple_spectrum, g.degree)
        notes.append(
            f"connection set has {deg.measured} < {deg.expected} distinct elements; "
            "closed-form eigenvalues describe the generator multiset, not the simple graph"
        )

    relations = None
    pair = None
    if meas is not None and meas.strongly_regular:
        try:
            pair = restricted_pair(restricted)
            relations = check_srg_relations(meas.eta, meas.lam, meas.mu, pair)
        except NotSrgBySpectrum as exc:
            notes.append(str(exc))

    dual = D.dual()
    nonzero = sorted(w for w in dual.hom_distribution if w)
    dual_weights = (nonzero[0], nonzero[1]) if len(nonzero) == 2 else None
    main = None
    main_note = None
    if meas is None or not meas.strongly_regular:
        main_note = "graph is not strongly regular"
    elif dual_weights is None:
        main_note = "dual code is not two-weight"
    elif not deg.holds:
        main_note = "not applicable: connection set has repeated elements, so degree != N"
    else:
        main = lambda_mu_identities(dual_weights[0], dual_weights[1], meas.lam, meas.mu, N, spec.p)

    return SrgReport(
        vertices=g.order,
        degree=g.degree,
        degree_formula=deg,
        verdict=verdict,
        measurement=meas,
        closed_form_spectrum=closed,
        simple_spectrum=chars.simple_spectrum,
        closed_form_residual=chars.closed_form_residual,
        simple_residual=chars.simple_residual,
        eigenvalue_source=source,
        restricted=pair,
        relations=relations,
        dual_weights=dual_weights,
        lambda_mu=main,
        lambda_mu_note=main_note,
        lambda_comparison=lambda_comparison(spec, g),
        notes=notes,
    )
