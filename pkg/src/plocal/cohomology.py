"""Classifying-space cohomology H^i(B P; F_p) with explicit cocycle bases.

Cohomology is computed from normalized bar cochains of the subgroup, with a
deterministic echelon-form basis of cocycles modulo coboundaries.  Induced
maps along orbit-category morphisms are pullbacks by the conjugation
homomorphism computed on representatives and reduced to the chosen bases, so
the resulting functor matrices are reproducible.
"""

from __future__ import annotations

import itertools

import numpy as np

from .categories import FiniteCategory
from .errors import BudgetExceeded
from .fplinalg import EchelonCoords, nullspace_dense
from .groups import PermutationGroup, Subgroup
from .limits import DEFAULT_BUDGET, LinearFunctor


def _bar_coboundary(nonid: list[int], n: int, p: int, mult, tuples_n, tuples_n1,
                    index_n) -> np.ndarray:
    """Matrix of d: C^n -> C^{n+1} on normalized bar cochains, trivial coefficients."""
    D = np.zeros((len(tuples_n1), len(tuples_n)), dtype=np.int64)
    for r, tup in enumerate(tuples_n1):
        D[r, index_n[tup[1:]]] += 1
        for i in range(1, n + 1):
            prod = mult(tup[i - 1], tup[i])
            if prod == 0:
                continue
            face = tup[: i - 1] + (prod,) + tup[i + 1:]
            D[r, index_n[face]] += -1 if i % 2 else 1
        D[r, index_n[tup[:-1]]] += -1 if (n + 1) % 2 else 1
    return D % p


class CohomologyBasis:
    """H^i(B P; F_p) for a subgroup P, with cocycle representatives and
    deterministic coordinates in the quotient by coboundaries."""

    def __init__(self, G: PermutationGroup, P: Subgroup, i: int, p: int,
                 budget: int = DEFAULT_BUDGET):
        self.G = G
        self.P = P
        self.i = i
        self.p = p
        nonid = [x for x in P.ids if x != 0]
        self.nonid = nonid
        if len(nonid) ** (i + 1) > budget:
            raise BudgetExceeded(i + 1, len(nonid) ** (i + 1), budget)

        tuples = [
            [tuple(t) for t in itertools.product(nonid, repeat=n)]
            for n in range(i + 2)
        ]
        self.tuples_i = tuples[i]
        self.tuple_index = {t: k for k, t in enumerate(self.tuples_i)}
        mult = G.mult

        ambient = len(self.tuples_i)
        if ambient == 0:
            self.dim = 0
            self.reps: list[np.ndarray] = []
            self._ech = None
            return

        index_i = self.tuple_index
        D_i = _bar_coboundary(nonid, i, p, mult, tuples[i], tuples[i + 1], index_i)
        cocycles = nullspace_dense(D_i, p)

        ech = EchelonCoords(ambient, p)
        if i >= 1:
            index_prev = {t: k for k, t in enumerate(tuples[i - 1])}
            D_prev = _bar_coboundary(
                nonid, i - 1, p, mult, tuples[i - 1], tuples[i], index_prev
            )
            for j in range(D_prev.shape[1]):
                ech.add_silent(D_prev[:, j])
        reps = []
        for vec in cocycles:
            if ech.add_tracked(vec):
                reps.append(vec % p)
        self.reps = reps
        self.dim = len(reps)
        self._ech = ech

    def coords(self, vec: np.ndarray) -> np.ndarray:
        """Coordinates of a cocycle's class in the chosen basis of H^i."""
        if self._ech is None:
            return np.zeros(0, dtype=np.int64)
        return self._ech.coords(vec)

    def pullback_matrix(self, other: "CohomologyBasis", point_map) -> np.ndarray:
        """Matrix of the map H^i(B other) -> H^i(B self) induced by the
        injective homomorphism ``point_map``: self.P -> other.P on elements."""
        M = np.zeros((self.dim, other.dim), dtype=np.int64)
        if self.dim == 0 or other.dim == 0:
            return M
        for j, rep in enumerate(other.reps):
            w = np.zeros(len(self.tuples_i), dtype=np.int64)
            for k, tup in enumerate(self.tuples_i):
                image = tuple(point_map(x) for x in tup)
                w[k] = rep[other.tuple_index[image]]
            M[:, j] = self.coords(w % self.p)
        return M


class CohomologyCache:
    """Shared per-run cache of CohomologyBasis objects keyed by (subgroup, i)."""

    def __init__(self, G: PermutationGroup, p: int, budget: int = DEFAULT_BUDGET):
        self.G = G
        self.p = p
        self.budget = budget
        self._store: dict[tuple[tuple[int, ...], int], CohomologyBasis] = {}

    def basis(self, P: Subgroup, i: int) -> CohomologyBasis:
        key = (P.ids, i)
        if key not in self._store:
            self._store[key] = CohomologyBasis(self.G, P, i, self.p, self.budget)
        return self._store[key]


def classifying_cohomology_functor(
    G: PermutationGroup,
    p: int,
    cat: FiniteCategory,
    i: int,
    cache: CohomologyCache | None = None,
) -> LinearFunctor:
    """The functor P |-> H^i(B P; F_p) on an orbit category, with morphism
    action induced by conjugation by the canonical witness."""
    cache = cache or CohomologyCache(G, p)
    bases = [cache.basis(P, i) for P in cat.objects]
    dims = [b.dim for b in bases]
    mats: dict[int, np.ndarray] = {}
    for tid, m in enumerate(cat.morphisms):
        src_b, tgt_b = bases[m.src], bases[m.tgt]
        g = m.witness
        mats[tid] = src_b.pullback_matrix(tgt_b, lambda x: G.conj(x, g))
    F = LinearFunctor(cat, p, dims, mats)
    F.validate()
    return F


def supported_cohomology_functor(
    G: PermutationGroup,
    p: int,
    cat: FiniteCategory,
    support: list[int],
    i: int,
    cache: CohomologyCache | None = None,
) -> LinearFunctor:
    """The punctured variant: H^i(B P; F_p) on the listed objects, zero
    elsewhere, with zero maps off the support."""
    cache = cache or CohomologyCache(G, p)
    supp = set(support)
    bases = {k: cache.basis(cat.objects[k], i) for k in supp}
    dims = [bases[k].dim if k in supp else 0 for k in range(cat.object_count)]
    mats: dict[int, np.ndarray] = {}
    for tid, m in enumerate(cat.morphisms):
        if m.src in supp and m.tgt in supp:
            g = m.witness
            mats[tid] = bases[m.src].pullback_matrix(
                bases[m.tgt], lambda x: G.conj(x, g)
            )
        else:
            mats[tid] = np.zeros((dims[m.src], dims[m.tgt]), dtype=np.int64)
    F = LinearFunctor(cat, p, dims, mats)
    F.validate()
    return F


def zeroed_at(F: LinearFunctor, kill: list[int]) -> LinearFunctor:
    """Replace the value at the listed objects by zero (and adapt all maps)."""
    dead = set(kill)
    dims = [0 if k in dead else d for k, d in enumerate(F.dims)]
    mats = {}
    for tid, m in enumerate(F.category.morphisms):
        if m.src in dead or m.tgt in dead:
            mats[tid] = np.zeros((dims[m.src], dims[m.tgt]), dtype=np.int64)
        else:
            mats[tid] = F.mats[tid]
    out = LinearFunctor(F.category, F.prime, dims, mats)
    out.validate()
    return out
