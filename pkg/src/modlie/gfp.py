"""Dense exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` integer arrays holding residues in ``[0, p)``;
the modulus travels alongside as an ``int``.  Vectors are 1-d arrays and a
set of vectors is stored as the rows of a 2-d array.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

DTYPE = np.int64


class AmbientMismatchError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def asmat(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=DTYPE) % p


def inv(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product modulo p.

    Goes through float64 BLAS; exact as long as ``k * (p-1)**2 < 2**53``,
    which holds at every size this package handles.
    """
    k = a.shape[-1]
    if k * (p - 1) ** 2 >= 2**53:
        return (a.astype(object) @ b.astype(object) % p).astype(DTYPE)
    out = a.astype(np.float64) @ b.astype(np.float64)
    return (np.rint(out).astype(DTYPE)) % p


def mat_pow(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=DTYPE)
    base = m % p
    while e:
        if e & 1:
            result = matmul(result, base, p)
        e >>= 1
        if e:
            base = matmul(base, base, p)
    return result


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; first-nonzero pivoting."""
    a = asmat(m, p).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * inv(a[r, c], p) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def solve(m: np.ndarray, b: Sequence[int], p: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``m @ x == b`` (mod p), or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    m = asmat(m, p)
    b = asmat(b, p)
    rows, cols = m.shape
    if b.shape != (rows,):
        raise ValueError("right-hand side has wrong length")
    aug, pivots = rref(np.hstack([m, b.reshape(-1, 1)]), p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=DTYPE)
    for r, c in enumerate(pivots):
        x[c] = aug[r, cols]
    return x


def solve_many(m: np.ndarray, rhs: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Solve ``m @ X == rhs`` column by column in one elimination."""
    m = asmat(m, p)
    rhs = asmat(rhs, p)
    cols = m.shape[1]
    aug, pivots = rref(np.hstack([m, rhs]), p)
    if pivots and pivots[-1] >= cols:
        return None
    x = np.zeros((cols, rhs.shape[1]), dtype=DTYPE)
    for r, c in enumerate(pivots):
        x[c] = aug[r, cols:]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    x = solve_many(m, np.eye(n, dtype=DTYPE), p)
    if x is None or rank(m, p) < n:
        raise ZeroDivisionError("matrix is singular mod %d" % p)
    return x


def kernel(m: np.ndarray, p: int) -> "Subspace":
    """Column null space ``{x : m @ x == 0}``."""
    m = asmat(m, p)
    rows, cols = m.shape
    red, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=DTYPE)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(pivots):
            basis[k, c] = (-red[r, f]) % p
    return Subspace.span(basis, p, cols)


class Subspace:
    """A subspace of F_p^d stored by its RREF basis (rows)."""

    __slots__ = ("p", "ambient", "basis", "pivots")

    def __init__(self, basis: np.ndarray, pivots: Sequence[int], p: int, ambient: int):
        self.p = p
        self.ambient = ambient
        self.basis = basis
        self.basis.flags.writeable = False
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, p: int, ambient: int) -> "Subspace":
        v = np.asarray(vectors, dtype=DTYPE).reshape(-1, ambient) % p
        if v.shape[0] == 0:
            return cls.zero(ambient, p)
        red, piv = rref(v, p)
        return cls(red[: len(piv)].copy(), piv, p, ambient)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.zeros((0, ambient), dtype=DTYPE), (), p, ambient)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.eye(ambient, dtype=DTYPE), range(ambient), p, ambient)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return "Subspace(dim=%d, ambient=%d, p=%d, basis=%s)" % (
            self.dim, self.ambient, self.p, self.basis.tolist())

    def _check(self, other: "Subspace") -> None:
        if other.ambient != self.ambient or other.p != self.p:
            raise AmbientMismatchError(
                "ambient F_%d^%d vs F_%d^%d" % (self.p, self.ambient, other.p, other.ambient))

    def key(self) -> tuple:
        return (self.dim, tuple(self.basis.ravel().tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.pivots == other.pivots and np.array_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash((self.p, self.ambient, self.key()))

    def reduce(self, v) -> np.ndarray:
        """Reduce vector(s) modulo the subspace; result vanishes on pivot columns."""
        v = np.asarray(v, dtype=DTYPE) % self.p
        if self.dim == 0:
            return v.copy()
        if v.ndim == 1:
            return (v - matmul(v[list(self.pivots)][None, :], self.basis, self.p)[0]) % self.p
        return (v - matmul(v[:, list(self.pivots)], self.basis, self.p)) % self.p

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=DTYPE)
        if v.shape[-1] != self.ambient:
            raise AmbientMismatchError("vector length %d, ambient %d" % (v.shape[-1], self.ambient))
        return not self.reduce(v).any()

    __contains__ = contains

    def coordinates(self, v) -> Optional[np.ndarray]:
        """Coefficients of ``v`` against ``basis``, or ``None`` if outside."""
        if not self.contains(v):
            return None
        return np.asarray(v, dtype=DTYPE)[..., list(self.pivots)] % self.p

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim == 0 or other.contains(self.basis)

    __le__ = issubset

    def __lt__(self, other: "Subspace") -> bool:
        return self.issubset(other) and self.dim < other.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        # x S = y T  <=>  (x, y) in ker [S; -T]^T
        stacked = np.vstack([self.basis, (-other.basis) % self.p])
        ker = kernel(stacked.T, self.p)
        if ker.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        coeffs = ker.basis[:, : self.dim]
        return Subspace.span(matmul(coeffs, self.basis, self.p), self.p, self.ambient)

    __and__ = intersect

    def complement_indices(self) -> list[int]:
        """Unit vectors completing the RREF pivots (earliest co-basis)."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def project(self, v) -> np.ndarray:
        """Coordinates of ``v`` modulo the subspace, on the earliest co-basis."""
        return self.reduce(v)[..., self.complement_indices()]

    def annihilator(self) -> "Subspace":
        return kernel(self.basis, self.p) if self.dim else Subspace.full(self.ambient, self.p)


def span(vectors: Iterable, p: int, ambient: int) -> Subspace:
    return Subspace.span(list(vectors) if not isinstance(vectors, np.ndarray) else vectors, p, ambient)


def projective_points(dim: int, p: int):
    """Nonzero vectors of F_p^dim whose first nonzero entry is 1, in a fixed order."""
    for lead in range(dim):
        tail = dim - lead - 1
        for k in range(p**tail):
            v = np.zeros(dim, dtype=DTYPE)
            v[lead] = 1
            for j in range(tail):
                v[dim - 1 - j] = k % p
                k //= p
            yield v
