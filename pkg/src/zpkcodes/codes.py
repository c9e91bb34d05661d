"""Linear codes over Z_{p^k}.

A code is given by a generator matrix whose rows span it.  On construction a
:class:`Code` row-reduces the generator to chain-ring standard form, derives a
generator of the dual from a diagonal reduction, and (when the code is small
enough to enumerate) tabulates its Hamming and homogeneous weight
distributions.  Nothing is computed lazily afterwards.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .ring import RingSpec, hom_weight_table

DEFAULT_CODEWORD_GUARD = 10**7
GUARD_ENV = "ZPK_GUARD_CODEWORDS"


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its configured size guard."""

    def __init__(self, what: str, size: int, guard: int):
        super().__init__(f"{what}: size {size} exceeds guard {guard}")
        self.what = what
        self.size = size
        self.guard = guard


def default_guard() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{GUARD_ENV}={raw!r} is not an integer") from None
    return DEFAULT_CODEWORD_GUARD


def as_matrix(G, spec: RingSpec) -> np.ndarray:
    M = np.array(G, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"generator must be a non-empty 2-d matrix, got shape {M.shape}")
    return M % spec.q


# -- standard form ------------------------------------------------------------


@dataclass(frozen=True)
class StandardForm:
    """Row-reduced generator.

    ``matrix`` has its columns permuted by ``perm`` (column j of ``matrix`` is
    column ``perm[j]`` of the input) and row j carries the pivot p^types[j] at
    column j.  ``rows`` holds the same reduced rows in the original column
    order, which is what enumeration and membership use.
    """

    spec: RingSpec
    shape: tuple[int, ...]
    matrix: np.ndarray
    perm: tuple[int, ...]
    types: tuple[int, ...]
    rows: np.ndarray

    @property
    def log_size(self) -> int:
        """Exponent e with |C| = p^e."""
        return sum((self.spec.k - i) * c for i, c in enumerate(self.shape))

    @property
    def size(self) -> int:
        return self.spec.p**self.log_size

    @property
    def orders(self) -> tuple[int, ...]:
        """Additive order of each reduced row."""
        return tuple(self.spec.p ** (self.spec.k - t) for t in self.types)


def _unit_part(x: int, spec: RingSpec) -> tuple[int, int]:
    v = spec.valuation(x)
    return v, (x // spec.p**v) % spec.q


def _min_valuation_entry(M: np.ndarray, r: int, spec: RingSpec):
    # lowest valuation first, then leftmost column, then topmost row
    best = None
    rows, cols = M.shape
    for c in range(r, cols):
        for i in range(r, rows):
            x = int(M[i, c])
            if x == 0:
                continue
            v = spec.valuation(x)
            if best is None or v < best[0]:
                best = (v, i, c)
                if v == 0:
                    return best
    return best


def standard_form(G, spec: RingSpec) -> StandardForm:
    q, p = spec.q, spec.p
    M = as_matrix(G, spec).copy()
    rows, cols = M.shape
    perm = list(range(cols))
    types: list[int] = []
    r = 0
    while r < min(rows, cols):
        found = _min_valuation_entry(M, r, spec)
        if found is None:
            break
        v, i, c = found
        M[[r, i]] = M[[i, r]]
        M[:, [r, c]] = M[:, [c, r]]
        perm[r], perm[c] = perm[c], perm[r]
        _, u = _unit_part(int(M[r, r]), spec)
        M[r] = (M[r] * spec.inverse(u)) % q
        pv = p**v
        for j in range(rows):
            if j == r or M[j, r] == 0:
                continue
            # rows below are cleared; rows above are reduced modulo p^v
            f = int(M[j, r]) // pv
            if f:
                M[j] = (M[j] - f * M[r]) % q
        types.append(v)
        r += 1
    M = M[:r]
    shape = [0] * spec.k
    for t in types:
        shape[t] += 1
    inv = np.argsort(perm)
    original = M[:, inv] if r else np.zeros((0, cols), dtype=np.int64)
    return StandardForm(
        spec=spec,
        shape=tuple(shape),
        matrix=M,
        perm=tuple(perm),
        types=tuple(types),
        rows=original,
    )


def in_row_space(v, form: StandardForm) -> bool:
    """Exact membership test against a standard form, without using the dual."""
    spec = form.spec
    x = np.array(v, dtype=np.int64).reshape(-1) % spec.q
    x = x[list(form.perm)]
    M = form.matrix
    for j, t in enumerate(form.types):
        e = int(x[j])
        pt = spec.p**t
        if e % pt:
            return False
        f = e // pt
        if f:
            x = (x - f * M[j]) % spec.q
    return not x.any()


# -- dual ---------------------------------------------------------------------


def dual_generator(G, spec: RingSpec) -> np.ndarray:
    """Generator matrix of the dual code.

    Diagonalises G by row and column operations, keeping the column transform
    Q; the kernel of x -> G x^T is then spanned by the columns of Q scaled to
    annihilate the corresponding diagonal entries.
    """
    q, p, k = spec.q, spec.p, spec.k
    M = as_matrix(G, spec).copy()
    rows, n = M.shape
    Q = np.eye(n, dtype=np.int64)
    diag_vals: list[int] = []
    r = 0
    while r < min(rows, n):
        found = _min_valuation_entry(M, r, spec)
        if found is None:
            break
        v, i, c = found
        M[[r, i]] = M[[i, r]]
        M[:, [r, c]] = M[:, [c, r]]
        Q[:, [r, c]] = Q[:, [c, r]]
        _, u = _unit_part(int(M[r, r]), spec)
        M[r] = (M[r] * spec.inverse(u)) % q
        pv = p**v
        for j in range(r + 1, rows):
            f = int(M[j, r]) // pv
            if f:
                M[j] = (M[j] - f * M[r]) % q
        for j in range(r + 1, n):
            f = int(M[r, j]) // pv
            if f:
                M[:, j] = (M[:, j] - f * M[:, r]) % q
                Q[:, j] = (Q[:, j] - f * Q[:, r]) % q
        diag_vals.append(v)
        r += 1
    gens = []
    for j, v in enumerate(diag_vals):
        if v > 0:
            gens.append((Q[:, j] * p ** (k - v)) % q)
    for j in range(r, n):
        gens.append(Q[:, j] % q)
    if not gens:
        return np.zeros((1, n), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


# -- codes --------------------------------------------------------------------


def _distribution(values: np.ndarray) -> dict[int, int]:
    keys, counts = np.unique(values, return_counts=True)
    return {int(a): int(b) for a, b in zip(keys, counts)}


class Code:
    """A linear code over Z_{p^k} given by generator rows."""

    def __init__(self, generator, spec: RingSpec, guard: int | None = None):
        self.spec = spec
        self.generator = as_matrix(generator, spec)
        self.generator.setflags(write=False)
        self.ell, self.n = self.generator.shape
        self.guard = default_guard() if guard is None else guard
        self.form = standard_form(self.generator, spec)
        self.size = self.form.size
        self.dual_generator = dual_generator(self.generator, spec)
        self.dual_generator.setflags(write=False)
        self.hamming_distribution: dict[int, int] | None = None
        self.hom_distribution: dict[int, int] | None = None
        if self.size <= self.guard:
            words = self._codeword_array()
            self.hamming_distribution = _distribution(np.count_nonzero(words, axis=1))
            table = np.array(hom_weight_table(spec), dtype=np.int64)
            self.hom_distribution = _distribution(table[words].sum(axis=1))

    def __repr__(self):
        return f"Code({self.spec}, n={self.n}, |C|={self.size}, shape={self.form.shape})"

    @classmethod
    def zero(cls, n: int, spec: RingSpec, **kw) -> "Code":
        return cls(np.zeros((1, n), dtype=np.int64), spec, **kw)

    @classmethod
    def full(cls, n: int, spec: RingSpec, **kw) -> "Code":
        return cls(np.eye(n, dtype=np.int64), spec, **kw)

    def check_guard(self, what: str = "codeword enumeration") -> None:
        if self.size > self.guard:
            raise GuardExceeded(what, self.size, self.guard)

    def _codeword_array(self) -> np.ndarray:
        q = self.spec.q
        dtype = np.int32 if q * q + q < 2**31 else np.int64
        words = np.zeros((1, self.n), dtype=dtype)
        for row, order in zip(self.form.rows, self.form.orders):
            r = row.astype(dtype)
            coeffs = np.arange(order, dtype=dtype).reshape(-1, 1, 1)
            words = ((words[None, :, :] + coeffs * r) % q).reshape(-1, self.n)
        return words.astype(np.int64)

    def codeword_array(self) -> np.ndarray:
        """All codewords, one per row, in information-set order."""
        self.check_guard()
        return self._codeword_array()

    def __contains__(self, v) -> bool:
        return in_row_space(v, self.form)

    def dual(self) -> "Code":
        return Code(self.dual_generator, self.spec, guard=self.guard)

    def require_distributions(self) -> None:
        if self.hom_distribution is None:
            raise GuardExceeded("weight distribution", self.size, self.guard)


def enumerate_codewords(C: Code) -> Iterator[tuple[int, ...]]:
    for w in C.codeword_array():
        yield tuple(int(x) for x in w)


def hamming_weight_distribution(C: Code) -> dict[int, int]:
    C.require_distributions()
    return dict(C.hamming_distribution)


def hom_weight_distribution(C: Code) -> dict[int, int]:
    C.require_distributions()
    return dict(C.hom_distribution)


def same_code(A: Code, B: Code) -> bool:
    """Equality by mutual membership of generator rows."""
    return all(r in B for r in A.generator) and all(r in A for r in B.generator)


def dual_hamming_distance(C: Code) -> float | int:
    """Minimum Hamming weight of a nonzero dual word; ``math.inf`` for a zero dual."""
    D = C.dual()
    D.require_distributions()
    nonzero = [w for w in D.hamming_distribution if w > 0]
    return min(nonzero) if nonzero else math.inf


# -- predicates ---------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def is_regular(G, spec: RingSpec) -> Predicate:
    """Every column has a unit entry, so its entries generate the whole ring."""
    M = as_matrix(G, spec)
    for j in range(M.shape[1]):
        if not any(spec.is_unit(int(x)) for x in M[:, j]):
            return Predicate(False, j)
    return Predicate(True)


def canonical_column(col: Sequence[int], spec: RingSpec) -> tuple[int, ...]:
    """Lexicographically least element of the unit orbit of a column."""
    c = [int(x) % spec.q for x in col]
    return min(tuple((u * x) % spec.q for x in c) for u in spec.unit_list)


def in_cyclic_submodule(h: Sequence[int], g: Sequence[int], spec: RingSpec) -> bool:
    """Whether h = r g for some ring element r (brute force over all q multipliers)."""
    h = [int(x) % spec.q for x in h]
    g = [int(x) % spec.q for x in g]
    return any(all((r * a) % spec.q == b for a, b in zip(g, h)) for r in range(spec.q))


def same_cyclic_submodule(g, h, spec: RingSpec) -> bool:
    if canonical_column(g, spec) == canonical_column(h, spec):
        return True
    return in_cyclic_submodule(h, g, spec) and in_cyclic_submodule(g, h, spec)


def is_projective(G, spec: RingSpec) -> Predicate:
    M = as_matrix(G, spec)
    cols = [tuple(int(x) for x in M[:, j]) for j in range(M.shape[1])]
    for i, j in combinations(range(len(cols)), 2):
        if same_cyclic_submodule(cols[i], cols[j], spec):
            return Predicate(False, (i, j))
    return Predicate(True)


def is_proper_hom(C: Code) -> bool:
    C.require_distributions()
    # the only word of homogeneous weight 0 must be the zero word
    return C.hom_distribution.get(0, 0) == 1


def two_weight_profile(C: Code, weight: str = "hom") -> tuple[int, int] | None:
    C.require_distributions()
    dist = C.hom_distribution if weight == "hom" else C.hamming_distribution
    nonzero = sorted(w for w in dist if w != 0)
    if len(nonzero) == 2:
        return nonzero[0], nonzero[1]
    return None


@dataclass(frozen=True)
class WeightForm:
    """Outcome of the weight-form test for a pair w1 < w2.

    ``holds``: w2 - w1 = p^t with p^t | w1, so w1 = u p^t, w2 = (u+1) p^t.
    ``divisor_holds``: d = w2 - w1 divides |C| and w1 = d t', w2 = d (t'+1).
    """

    holds: bool
    t: int | None
    u: int | None
    divisor_holds: bool | None
    d: int | None
    t_prime: int | None


def check_weight_form(w1: int, w2: int, size: int | None, p: int) -> WeightForm:
    if not (0 < w1 < w2):
        raise ValueError(f"need positive weights w1 < w2, got ({w1}, {w2})")
    diff = w2 - w1
    t = 0
    m = diff
    while m % p == 0:
        m //= p
        t += 1
    holds = m == 1 and w1 % diff == 0
    div = None
    if size is not None:
        div = size % diff == 0 and w1 % diff == 0
    return WeightForm(
        holds=holds,
        t=t if m == 1 else None,
        u=w1 // diff if holds else None,
        divisor_holds=div,
        d=diff if div else None,
        t_prime=w1 // diff if div else None,
    )
