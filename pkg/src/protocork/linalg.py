"""Exact integer linear algebra: Smith normal form, kernels, inertia.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so every
entry is arbitrary precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "int_matrix",
    "identity",
    "AbelianGroup",
    "SmithForm",
    "smith_form",
    "cokernel",
    "kernel_basis",
    "inertia",
]


def int_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Exact integer matrix from nested sequences (or an existing array).

    ``shape`` is needed only for matrices with no rows or no columns.
    """
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    out = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if out.ndim != 2:
        if out.size == 0 and shape is not None:
            return np.zeros(shape, dtype=object)
        raise ValueError("matrix must be rectangular")
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"expected shape {shape}, got {out.shape}")
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free + sum Z/t``."""

    free: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free < 0 or any(t <= 1 for t in self.torsion):
            raise ValueError("invalid abelian group data")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        # merge torsion into invariant-factor form via a diagonal SNF
        ts = list(self.torsion) + list(other.torsion)
        if not ts:
            return AbelianGroup(self.free + other.free)
        diag = np.zeros((len(ts), len(ts)), dtype=object)
        for k, t in enumerate(ts):
            diag[k, k] = t
        return AbelianGroup(self.free + other.free, smith_form(diag).cokernel.torsion)

    def to_json(self) -> dict:
        return {"free": self.free, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ([f"Z^{self.free}"] if self.free > 1 else ["Z"] if self.free else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    A: np.ndarray
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def cokernel(self) -> AbelianGroup:
        rows = self.A.shape[0]
        return AbelianGroup(
            rows - self.rank, tuple(d for d in self.invariant_factors if d > 1)
        )

    def kernel(self) -> np.ndarray:
        """Columns form a basis of the integer kernel of ``A``."""
        return self.V[:, self.rank:]


def _swap_rows(M, i, j):
    if i != j:
        M[[i, j], :] = M[[j, i], :]


def _swap_cols(M, i, j):
    if i != j:
        M[:, [i, j]] = M[:, [j, i]]


def smith_form(A) -> SmithForm:
    """Smith normal form by elementary row and column operations."""
    A = int_matrix(A, getattr(A, "shape", None))
    m, n = A.shape
    D = A.copy()
    U = identity(m)
    V = identity(n)
    factors = []
    t = 0
    while t < min(m, n):
        nz = [(abs(D[i, j]), i, j) for i in range(t, m) for j in range(t, n) if D[i, j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        _swap_rows(D, t, pi)
        _swap_rows(U, t, pi)
        _swap_cols(D, t, pj)
        _swap_cols(V, t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                q = D[i, t] // D[t, t]
                if q:
                    D[i, :] -= q * D[t, :]
                    U[i, :] -= q * U[t, :]
                if D[i, t] != 0:
                    done = False
            for j in range(t + 1, n):
                q = D[t, j] // D[t, t]
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                if D[t, j] != 0:
                    done = False
            if not done:
                # a nonzero remainder is smaller than the pivot: move it in
                nz = [(abs(D[i, t]), i, t) for i in range(t + 1, m) if D[i, t] != 0]
                nz += [(abs(D[t, j]), t, j) for j in range(t + 1, n) if D[t, j] != 0]
                _, pi, pj = min(nz)
                _swap_rows(D, t, pi)
                _swap_rows(U, t, pi)
                _swap_cols(D, t, pj)
                _swap_cols(V, t, pj)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % D[t, t]),
                None,
            )
            if bad is None:
                break
            D[t, :] += D[bad, :]
            U[t, :] += U[bad, :]
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
        factors.append(int(D[t, t]))
        t += 1
    return SmithForm(A, D, U, V, tuple(factors))


def cokernel(A) -> AbelianGroup:
    return smith_form(A).cokernel


def kernel_basis(A) -> np.ndarray:
    return smith_form(A).kernel()


def inertia(Q: Sequence[Sequence[int]] | np.ndarray) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a symmetric form, computed
    exactly by symmetric Gaussian elimination over the rationals."""
    M = [[Fraction(int(x)) for x in row] for row in np.asarray(Q, dtype=object).tolist()]
    size = len(M)
    if any(len(row) != size for row in M) or any(
        M[i][j] != M[j][i] for i in range(size) for j in range(size)
    ):
        raise ValueError("inertia needs a square symmetric matrix")
    live = list(range(size))
    pos = neg = 0
    while live:
        p = next((i for i in live if M[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in live for j in live if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal 2 M[i][j] != 0
            for k in range(size):
                M[i][k] += M[j][k]
            for k in range(size):
                M[k][i] += M[k][j]
            p = i
        piv = M[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        live.remove(p)
        for i in live:
            f = M[i][p] / piv
            if f:
                for k in range(size):
                    M[i][k] -= f * M[p][k]
        for i in live:
            M[p][i] = M[i][p] = Fraction(0)
    return pos, neg, size - pos - neg
