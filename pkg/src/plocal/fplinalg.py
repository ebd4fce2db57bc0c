"""Exact sparse and dense linear algebra over the field with p elements.

Sparse matrices are CSR (scipy) with entries reduced mod p; ranks come from
an insertion echelon with minimal-leading-column pivots, using big-integer
bitmask rows at p = 2.  All routines are deterministic: identical inputs give
identical pivot choices and results.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .errors import PLocalError


class FpMatrix:
    """A sparse matrix over F_p with row-major (CSR) storage."""

    def __init__(self, csr: sparse.csr_matrix, prime: int):
        self.prime = prime
        data = csr.data % prime
        csr = sparse.csr_matrix((data, csr.indices, csr.indptr), shape=csr.shape)
        csr.eliminate_zeros()
        self.csr = csr
        self._rank: int | None = None

    @classmethod
    def from_row_entries(cls, nrows: int, ncols: int, prime: int, rows) -> "FpMatrix":
        """Build from an iterable of per-row {col: coeff} dicts."""
        indptr = [0]
        indices: list[int] = []
        data: list[int] = []
        for entries in rows:
            for c in sorted(entries):
                v = entries[c] % prime
                if v:
                    indices.append(c)
                    data.append(v)
            indptr.append(len(indices))
        csr = sparse.csr_matrix(
            (
                np.asarray(data, dtype=np.int64),
                np.asarray(indices, dtype=np.int64),
                np.asarray(indptr, dtype=np.int64),
            ),
            shape=(nrows, ncols),
        )
        return cls(csr, prime)

    @property
    def shape(self) -> tuple[int, int]:
        return self.csr.shape

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def rank(self) -> int:
        if self._rank is None:
            if self.prime == 2:
                self._rank = _rank_csr_gf2(self.csr)
            else:
                self._rank = _rank_csr_modp(self.csr, self.prime)
        return self._rank

    def matmul(self, other: "FpMatrix") -> "FpMatrix":
        prod = (self.csr @ other.csr).tocsr()
        return FpMatrix(prod, self.prime)

    def is_zero(self) -> bool:
        return self.csr.nnz == 0

    def equals(self, other: "FpMatrix") -> bool:
        if self.shape != other.shape or self.prime != other.prime:
            return False
        return ((self.csr - other.csr).data % self.prime == 0).all()

    def row_entries(self, r: int) -> list[tuple[int, int]]:
        lo, hi = self.csr.indptr[r], self.csr.indptr[r + 1]
        return list(zip(self.csr.indices[lo:hi].tolist(), self.csr.data[lo:hi].tolist()))

    def triplets(self) -> list[tuple[int, int, int]]:
        coo = self.csr.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))


def _rank_csr_gf2(csr: sparse.csr_matrix) -> int:
    indptr, indices, data = csr.indptr, csr.indices, csr.data
    pivots: dict[int, int] = {}
    rank = 0
    for i in range(csr.shape[0]):
        m = 0
        for c, v in zip(
            indices[indptr[i]:indptr[i + 1]].tolist(),
            data[indptr[i]:indptr[i + 1]].tolist(),
        ):
            if v % 2:
                m |= 1 << c
        while m:
            b = m.bit_length() - 1
            piv = pivots.get(b)
            if piv is None:
                pivots[b] = m
                rank += 1
                break
            m ^= piv
    return rank


def _rank_csr_modp(csr: sparse.csr_matrix, p: int) -> int:
    indptr, indices, data = csr.indptr, csr.indices, csr.data
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for i in range(csr.shape[0]):
        row = {
            int(c): int(v) % p
            for c, v in zip(
                indices[indptr[i]:indptr[i + 1]], data[indptr[i]:indptr[i + 1]]
            )
            if v % p
        }
        while row:
            c = max(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in row.items()}
                rank += 1
                break
            f = row[c]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        # fully reduced to zero: move on
    return rank


# -- dense helpers (small matrices: cocycle bases, compatibility systems) ----


def rref_dense(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p with deterministic first-nonzero pivots."""
    R = np.array(A, dtype=np.int64) % p
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        for k in range(nrows):
            if k != r and R[k, c]:
                R[k] = (R[k] - R[k, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def nullspace_dense(A: np.ndarray, p: int) -> np.ndarray:
    """Deterministic basis of {x : A x = 0 mod p}, one row per basis vector."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=np.int64)
    R, pivots = rref_dense(A, p)
    ncols = A.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, c]) % p
    return basis


class EchelonCoords:
    """Echelon reduction against a fixed subspace with coordinate tracking.

    Seeded with "silent" rows (a known subspace modded out) and then grown by
    tracked rows; ``coords`` expresses a vector in terms of the tracked rows
    modulo the silent span, failing if the vector lies outside.
    """

    def __init__(self, ambient: int, p: int):
        self.p = p
        self.ambient = ambient
        self.rows: list[tuple[np.ndarray, np.ndarray | None]] = []  # (vector, coords)
        self.lead: list[int] = []
        self.tracked = 0

    def _reduce(self, vec: np.ndarray, coords: np.ndarray | None):
        p = self.p
        vec = vec.copy() % p
        for (rvec, rcoords), c in zip(self.rows, self.lead):
            if vec[c]:
                f = int(vec[c])
                vec = (vec - f * rvec) % p
                if coords is not None and rcoords is not None:
                    coords = (coords - f * rcoords) % p
        return vec, coords

    def add_silent(self, vec: np.ndarray) -> bool:
        vec, _ = self._reduce(vec, None)
        nz = np.nonzero(vec)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        vec = (vec * pow(int(vec[c]), -1, self.p)) % self.p
        self.rows.append((vec, None))
        self.lead.append(c)
        return True

    def add_tracked(self, vec: np.ndarray) -> bool:
        vec2, coords = self._reduce(vec, np.zeros(self.tracked, dtype=np.int64))
        nz = np.nonzero(vec2)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        inv = pow(int(vec2[c]), -1, self.p)
        vec2 = (vec2 * inv) % self.p
        # extend stored coordinate vectors by one slot for the new tracked row
        newrows = []
        for rvec, rcoords in self.rows:
            if rcoords is not None:
                rcoords = np.concatenate([rcoords, [0]])
            newrows.append((rvec, rcoords))
        self.rows = newrows
        coords = (np.concatenate([coords, [1]]) * inv) % self.p
        self.rows.append((vec2, coords))
        self.lead.append(c)
        self.tracked += 1
        return True

    def coords(self, vec: np.ndarray) -> np.ndarray:
        residue, coords = self._reduce(vec, np.zeros(self.tracked, dtype=np.int64))
        if np.any(residue):
            raise PLocalError("vector lies outside the tracked span")
        return (-coords) % self.p
