"""p-operations on Lie algebras over F_p.

A p-map is stored by the images of the standard basis.  Values on other
elements come from folding the vector in one coordinate at a time, using
``(λa)^[p] = λ^p a^[p]`` and the sum rule with the correction terms s_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .gfp import DTYPE, Subspace, inv, inverse, mat_pow, solve_many
from .lie import (
    LieAlgebra,
    NotAnIdealError,
    Quotient,
    ideal_closure,
    is_abelian_subspace,
    is_ideal,
    abelian_socle,
    minimal_ideals,
    quotient_algebra,
)


class NotAPIdealError(ValueError):
    pass


class NotAbelianError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PMap:
    host: LieAlgebra
    images: np.ndarray  # row i = e_i^[p]

    def __post_init__(self):
        im = np.asarray(self.images, dtype=DTYPE).reshape(self.host.dim, self.host.dim) % self.host.p
        im.flags.writeable = False
        object.__setattr__(self, "images", im)

    def __eq__(self, other):
        return isinstance(other, PMap) and self.host == other.host and np.array_equal(self.images, other.images)


@dataclass(frozen=True, eq=False)
class RestrictedAlgebra:
    algebra: LieAlgebra
    pmap: PMap

    @classmethod
    def of(cls, algebra: LieAlgebra, images) -> "RestrictedAlgebra":
        return cls(algebra, PMap(algebra, images))

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def power(self, x) -> np.ndarray:
        return p_power(self, x)


def compute_s_terms(alg: LieAlgebra, a, b) -> np.ndarray:
    """Rows s_1(a, b), ..., s_{p-1}(a, b).

    Expands ad(a⊗X + b⊗1)^{p-1}(a⊗1) in L⊗F[X]; the coefficient of
    X^{i-1} equals i·s_i.
    """
    p, n = alg.p, alg.dim
    a = np.asarray(a, dtype=DTYPE) % p
    b = np.asarray(b, dtype=DTYPE) % p
    poly = np.zeros((p, n), dtype=DTYPE)
    poly[0] = a
    ad_a, ad_b = alg.ad(a), alg.ad(b)
    for _ in range(p - 1):
        nxt = poly @ ad_b.T
        nxt[1:] += poly[:-1] @ ad_a.T
        poly = nxt % p
    return np.array([poly[i - 1] * inv(i, p) % p for i in range(1, p)], dtype=DTYPE).reshape(p - 1, n)


def _fold(alg: LieAlgebra, basis: np.ndarray, images: np.ndarray, coords, order: Optional[Sequence[int]] = None):
    p = alg.p
    coords = np.asarray(coords, dtype=DTYPE) % p
    u = np.zeros(alg.dim, dtype=DTYPE)
    up = np.zeros(alg.dim, dtype=DTYPE)
    for k in (range(len(coords)) if order is None else order):
        lam = int(coords[k])
        if not lam:
            continue
        v = lam * basis[k] % p
        vp = pow(lam, p, p) * images[k] % p
        if u.any():
            corr = compute_s_terms(alg, u, v).sum(axis=0)
        else:
            corr = 0
        up = (up + vp + corr) % p
        u = (u + v) % p
    return up


def p_power(r: RestrictedAlgebra, x, order: Optional[Sequence[int]] = None) -> np.ndarray:
    """x^[p], folding the coordinates of x in the given order (default: natural)."""
    alg = r.algebra
    return _fold(alg, np.eye(alg.dim, dtype=DTYPE), r.pmap.images, x, order)


def pmap_from_basis(alg: LieAlgebra, basis: np.ndarray, images: np.ndarray) -> PMap:
    """The p-map with prescribed values on an arbitrary basis, re-expressed on e_1..e_n."""
    p = alg.p
    basis = np.asarray(basis, dtype=DTYPE) % p
    binv = inverse(basis, p)
    rows = [_fold(alg, basis, np.asarray(images, dtype=DTYPE) % p, binv[i]) for i in range(alg.dim)]
    return PMap(alg, np.array(rows, dtype=DTYPE).reshape(alg.dim, alg.dim))


def _ad_condition(alg: LieAlgebra, images: np.ndarray) -> bool:
    p = alg.p
    for i in range(alg.dim):
        if not np.array_equal(alg.ad(images[i]), mat_pow(alg.ad(alg.basis(i)), p, p)):
            return False
    return True


def verify_p_map(r: RestrictedAlgebra, samples: int = 20, seed: int = 0) -> bool:
    """ad condition on the basis, then all three axioms on basis pairs and random elements."""
    alg, p, n = r.algebra, r.p, r.dim
    if not _ad_condition(alg, r.pmap.images):
        return False
    rng = np.random.default_rng(seed)
    pairs = [(alg.basis(i), alg.basis(j)) for i in range(n) for j in range(i + 1, n)]
    pairs += [(rng.integers(0, p, n), rng.integers(0, p, n)) for _ in range(samples)]
    for a, b in pairs:
        pa, pb = p_power(r, a), p_power(r, b)
        pab = p_power(r, (a + b) % p)
        if not np.array_equal(pab, (pa + pb + compute_s_terms(alg, a, b).sum(axis=0)) % p):
            return False
        if not np.array_equal(alg.ad(pa), mat_pow(alg.ad(a), p, p)):
            return False
        lam = int(rng.integers(0, p))
        if not np.array_equal(p_power(r, lam * a % p), pow(lam, p, p) * pa % p):
            return False
    return True


def solve_restriction(alg: LieAlgebra) -> Optional[PMap]:
    """Solve ad(b_i) = ad(e_i)^p for every basis element; ``None`` if some system is inconsistent."""
    n, p = alg.dim, alg.p
    if n == 0:
        return PMap(alg, np.zeros((0, 0), dtype=DTYPE))
    lhs = alg.ad_matrices().reshape(n, n * n).T
    rhs = np.stack([mat_pow(alg.ad(alg.basis(i)), p, p).ravel() for i in range(n)], axis=1)
    sol = solve_many(lhs, rhs, p)
    if sol is None:
        return None
    return PMap(alg, sol.T)


def _is_restrictable_images(alg: LieAlgebra, images) -> bool:
    return _ad_condition(alg, np.asarray(images, dtype=DTYPE))


def zero_p_map_on_abelian_ideal(r: RestrictedAlgebra, ideal: Subspace) -> PMap:
    alg = r.algebra
    if not is_ideal(alg, ideal):
        raise NotAnIdealError("subspace is not an ideal")
    if not is_abelian_subspace(alg, ideal):
        raise NotAbelianError("ideal is not abelian")
    if ideal.dim == 0:
        return r.pmap
    co = ideal.complement_indices()
    basis = np.vstack([ideal.basis, np.eye(alg.dim, dtype=DTYPE)[co]])
    images = np.vstack([np.zeros_like(ideal.basis), r.pmap.images[co]])
    return pmap_from_basis(alg, basis, images)


def adjust_p_map_on_asoc(r: RestrictedAlgebra, seed: int = 1) -> PMap:
    if r.dim == 0:
        return r.pmap
    return zero_p_map_on_abelian_ideal(r, abelian_socle(r.algebra, seed))


def p_ideal_closure(r: RestrictedAlgebra, s: Subspace) -> Subspace:
    """Least ideal containing S and closed under the p-map.

    For an ideal, closure under the p-map reduces to closure on a basis:
    the s_i terms stay in the ideal and λ^p = λ on F_p.
    """
    alg = r.algebra
    cur = ideal_closure(alg, s.basis) if s.dim else s
    while True:
        if cur.dim == 0:
            return cur
        powers = np.array([p_power(r, v) for v in cur.basis])
        nxt = ideal_closure(alg, np.vstack([cur.basis, powers]))
        if nxt == cur:
            return cur
        cur = nxt


def is_p_ideal(r: RestrictedAlgebra, s: Subspace) -> bool:
    return is_ideal(r.algebra, s) and all(s.contains(p_power(r, v)) for v in s.basis)


def minimal_p_ideals(r: RestrictedAlgebra, seed: int = 1) -> list[Subspace]:
    """All minimal p-ideals, sorted; each is the closure of some minimal ideal."""
    closures = {}
    for b in minimal_ideals(r.algebra, seed):
        c = p_ideal_closure(r, b)
        closures.setdefault(c.key(), c)
    cands = sorted(closures.values(), key=lambda s: s.key())
    return [c for c in cands if not any(d < c for d in cands)]


@dataclass(frozen=True)
class PIdealReport:
    witnesses: tuple

    @property
    def unique(self) -> bool:
        return len(self.witnesses) == 1


def minimal_p_ideal_report(r: RestrictedAlgebra, seed: int = 1) -> PIdealReport:
    found = minimal_p_ideals(r, seed)
    return PIdealReport(tuple(found[:2]))


def quotient_p_map(r: RestrictedAlgebra, ideal: Subspace) -> tuple[RestrictedAlgebra, Quotient]:
    """Restricted quotient by a p-ideal, with the projection data."""
    if not is_p_ideal(r, ideal):
        raise NotAPIdealError("subspace is not a p-ideal")
    q = quotient_algebra(r.algebra, ideal)
    images = np.array([ideal.project(p_power(r, r.algebra.basis(i))) for i in q.cobasis], dtype=DTYPE)
    qd = q.algebra.dim
    return RestrictedAlgebra.of(q.algebra, images.reshape(qd, qd)), q
