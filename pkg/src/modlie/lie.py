"""Lie algebras over F_p given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .gfp import DTYPE, Subspace, is_prime, kernel
from .meataxe import LieModule, iter_minimal_submodules, spin, sub_module


class JacobiError(ValueError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__("Jacobi identity fails for basis triple (%d, %d, %d)" % tuple(t + 1 for t in triple))


class NotAnIdealError(ValueError):
    pass


class LieAlgebra:
    """Structure constants ``table[i, j] = [e_i, e_j]`` of an n-dimensional algebra.

    Antisymmetry is enforced on construction; Jacobi is checked separately.
    """

    __slots__ = ("p", "table", "name")

    def __init__(self, p: int, table, name: str = ""):
        if not is_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        t = np.asarray(table, dtype=DTYPE) % p
        if t.ndim != 3 or t.shape[0] != t.shape[1] or t.shape[1] != t.shape[2]:
            raise ValueError("structure constants must have shape (n, n, n)")
        n = t.shape[0]
        iu = np.triu_indices(n, 1)
        full = np.zeros_like(t)
        full[iu] = t[iu]
        full[(iu[1], iu[0])] = (-t[iu]) % p
        full.flags.writeable = False
        self.p = p
        self.table = full
        self.name = name

    @classmethod
    def from_brackets(cls, p: int, n: int, brackets: Mapping[tuple[int, int], Sequence[int]],
                      name: str = "") -> "LieAlgebra":
        """0-based pairs ``(i, j)`` with i < j mapping to coordinate vectors; omitted pairs are 0."""
        t = np.zeros((n, n, n), dtype=DTYPE)
        for (i, j), v in brackets.items():
            if not 0 <= i < j < n:
                raise ValueError("bracket pair (%d, %d) must satisfy i < j < n" % (i, j))
            t[i, j] = v
        return cls(p, t, name)

    @classmethod
    def abelian(cls, p: int, n: int, name: str = "") -> "LieAlgebra":
        return cls(p, np.zeros((n, n, n), dtype=DTYPE), name or "Ab(%d)" % n)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def __repr__(self) -> str:
        return "LieAlgebra(%s p=%d, dim=%d)" % (self.name + "," if self.name else "", self.p, self.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.p == other.p and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.p, self.table.tobytes()))

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=DTYPE)
        v[i] = 1
        return v

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=DTYPE)
        y = np.asarray(y, dtype=DTYPE)
        if self.dim == 0:
            return np.zeros(0, dtype=DTYPE)
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.p

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x) acting on column coordinate vectors."""
        x = np.asarray(x, dtype=DTYPE)
        if self.dim == 0:
            return np.zeros((0, 0), dtype=DTYPE)
        return np.einsum("i,ijk->kj", x, self.table) % self.p

    def ad_matrices(self) -> np.ndarray:
        return np.transpose(self.table, (0, 2, 1)).copy()

    def jacobi_violation(self) -> Optional[tuple[int, int, int]]:
        n, p = self.dim, self.p
        if n < 3:
            return None
        t = self.table
        # [[e_i, e_j], e_k]
        nested = np.einsum("ijl,lkm->ijkm", t, t) % p
        total = (nested + np.transpose(nested, (1, 2, 0, 3)) + np.transpose(nested, (2, 0, 1, 3))) % p
        bad = np.argwhere(total.any(axis=3))
        if bad.size == 0:
            return None
        for i, j, k in bad:
            if i < j < k:
                return int(i), int(j), int(k)
        i, j, k = sorted(map(int, bad[0]))
        return i, j, k

    def is_abelian(self) -> bool:
        return not self.table.any()


def verify_jacobi(alg: LieAlgebra) -> bool:
    return alg.jacobi_violation() is None


def check_jacobi(alg: LieAlgebra) -> None:
    bad = alg.jacobi_violation()
    if bad is not None:
        raise JacobiError(bad)


def bracket_subspaces(alg: LieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    if s.dim == 0 or t.dim == 0:
        return Subspace.zero(alg.dim, alg.p)
    vecs = np.einsum("ai,bj,ijk->abk", s.basis, t.basis, alg.table).reshape(-1, alg.dim) % alg.p
    return Subspace.span(vecs, alg.p, alg.dim)


def whole(alg: LieAlgebra) -> Subspace:
    return Subspace.full(alg.dim, alg.p)


def derived(alg: LieAlgebra) -> Subspace:
    return Subspace.span(alg.table.reshape(-1, alg.dim), alg.p, alg.dim)


def centralizer(alg: LieAlgebra, s: Subspace) -> Subspace:
    """``{x : [x, s] = 0 for all s in S}``."""
    n = alg.dim
    if s.dim == 0:
        return whole(alg)
    # coefficient of x_i in [x, s_a]_k
    rows = np.einsum("ijk,aj->aki", alg.table, s.basis).reshape(-1, n) % alg.p
    return kernel(rows, alg.p)


def centre(alg: LieAlgebra) -> Subspace:
    return centralizer(alg, whole(alg))


def is_ideal(alg: LieAlgebra, s: Subspace) -> bool:
    return bracket_subspaces(alg, whole(alg), s).issubset(s)


def is_abelian_subspace(alg: LieAlgebra, s: Subspace) -> bool:
    return bracket_subspaces(alg, s, s).dim == 0


def ideal_closure(alg: LieAlgebra, vectors) -> Subspace:
    """Smallest ideal containing the given vector(s)."""
    return spin(list(alg.ad_matrices()), np.asarray(vectors).reshape(-1, alg.dim), alg.p, alg.dim)


def change_basis(alg: LieAlgebra, basis: np.ndarray, name: str = "") -> LieAlgebra:
    """The same algebra written in the basis given by the rows of ``basis``."""
    p = alg.p
    from .gfp import inverse
    b = np.asarray(basis, dtype=DTYPE) % p
    binv = inverse(b, p)  # coordinates: v = c @ b  =>  c = v @ binv
    t = np.einsum("ai,bj,ijk->abk", b, b, alg.table) % p
    t = np.einsum("abk,kc->abc", t, binv) % p
    return LieAlgebra(p, t, name or alg.name)


@dataclass(frozen=True)
class Quotient:
    algebra: LieAlgebra
    ideal: Subspace
    cobasis: tuple
    projection: np.ndarray  # row i = image of e_i in the quotient

    def project(self, v) -> np.ndarray:
        return self.ideal.project(v)


def quotient_algebra(alg: LieAlgebra, ideal: Subspace) -> Quotient:
    if not is_ideal(alg, ideal):
        raise NotAnIdealError("subspace is not an ideal")
    co = ideal.complement_indices()
    q = len(co)
    t = np.zeros((q, q, q), dtype=DTYPE)
    for a, i in enumerate(co):
        for b, j in enumerate(co):
            if a < b:
                t[a, b] = ideal.project(alg.table[i, j])
    name = "%s/I%d" % (alg.name, ideal.dim) if alg.name else ""
    proj = ideal.project(np.eye(alg.dim, dtype=DTYPE)) if alg.dim else np.zeros((0, q), dtype=DTYPE)
    return Quotient(LieAlgebra(alg.p, t, name), ideal, tuple(co), proj)


def adjoint_module(alg: LieAlgebra) -> LieModule:
    return LieModule(alg, alg.ad_matrices())


def minimal_ideals(alg: LieAlgebra, seed: int = 1, limit: int = 200_000) -> list[Subspace]:
    """All minimal ideals, sorted by (dim, RREF basis)."""
    found = list(iter_minimal_submodules(adjoint_module(alg), seed, limit))
    return sorted(found, key=lambda s: s.key())


def adjoint_submodule(alg: LieAlgebra, ideal: Subspace) -> LieModule:
    return sub_module(adjoint_module(alg), ideal)


@dataclass(frozen=True)
class IdealReport:
    socle: Subspace
    witnesses: tuple

    @property
    def unique(self) -> bool:
        return len(self.witnesses) == 1


def minimal_ideal_report(alg: LieAlgebra, seed: int = 1) -> IdealReport:
    """Either the unique minimal ideal or two distinct ones."""
    if alg.dim < 1:
        raise ValueError("the zero algebra has no minimal ideals")
    from .meataxe import socle_components
    comps = socle_components(adjoint_module(alg), seed)
    rows = np.vstack([h.T for c in comps for h in c.homs])
    soc = Subspace.span(rows, alg.p, alg.dim)
    if len(comps) == 1 and comps[0].multiplicity == 1:
        return IdealReport(soc, (soc,))
    two = []
    for s in iter_minimal_submodules(adjoint_module(alg), seed):
        two.append(s)
        if len(two) == 2:
            break
    return IdealReport(soc, tuple(sorted(two, key=lambda s: s.key())))


def abelian_socle(alg: LieAlgebra, seed: int = 1) -> Subspace:
    """Sum of the abelian minimal ideals.

    Isomorphic minimal ideals are either all abelian or the type occurs once,
    so abelianness is tested on one representative per isotypic component.
    """
    from .meataxe import socle_components
    total = Subspace.zero(alg.dim, alg.p)
    if alg.dim == 0:
        return total
    for comp in socle_components(adjoint_module(alg), seed):
        rep = Subspace.span(comp.homs[0].T, alg.p, alg.dim)
        if is_abelian_subspace(alg, rep):
            span = Subspace.span(np.vstack([h.T for h in comp.homs]), alg.p, alg.dim)
            total = total.sum(span)
    return total
