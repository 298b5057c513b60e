"""Matrix representations of Lie algebras over F_p and the MeatAxe.

A module is stored as an ``(n, m, m)`` array: ``action[i]`` is the matrix by
which the i-th basis element of the acting algebra acts on column vectors of
length ``m``.  Irreducibility is decided with Norton's criterion on random
elements of the unital associative algebra the action matrices generate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Optional, Sequence

import numpy as np

from . import polys
from .gfp import DTYPE, Subspace, kernel, matmul, projective_points, rref

if TYPE_CHECKING:
    from .lie import LieAlgebra

#: random words tried by one chop before giving up
CHOP_BUDGET = 64
WORD_TERMS = 3
MAX_WORD_LENGTH = 4


class BudgetExhausted(RuntimeError):
    """Norton's test stayed inconclusive for the whole budget; retry with another seed."""


class NotInvariantError(ValueError):
    pass


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class LieModule:
    algebra: "LieAlgebra"
    action: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.action, dtype=DTYPE) % self.algebra.p
        if a.ndim != 3 or a.shape[0] != self.algebra.dim or a.shape[1] != a.shape[2]:
            raise ValueError("action must have shape (%d, m, m), got %s" % (self.algebra.dim, a.shape))
        a.flags.writeable = False
        object.__setattr__(self, "action", a)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def act(self, x) -> np.ndarray:
        """Matrix of a general algebra element given by its coordinates."""
        x = np.asarray(x, dtype=DTYPE) % self.p
        return np.tensordot(x, self.action, axes=1) % self.p

    @property
    def gens(self) -> list[np.ndarray]:
        return list(self.action)


@dataclass(frozen=True)
class NortonWitness:
    seed: int
    path: tuple
    attempt: int
    word: str
    factor: str
    nullity: int

    def describe(self) -> str:
        return "seed=%d path=%s attempt=%d theta=%s factor=%s nullity=%d" % (
            self.seed, "/".join(map(str, self.path)) or "-", self.attempt,
            self.word, self.factor, self.nullity)


@dataclass(frozen=True)
class ChopResult:
    submodule: Optional[Subspace] = None
    witness: Optional[NortonWitness] = None

    @property
    def irreducible(self) -> bool:
        return self.submodule is None


@dataclass(frozen=True)
class Factor:
    module: LieModule
    witness: NortonWitness


def module_rng(seed: int, path: Sequence[int] = ()) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, path)]))


def verify_module(m: LieModule) -> bool:
    """Representation law rho([e_i, e_j]) = [rho(e_i), rho(e_j)] for all i < j."""
    p = m.p
    table = m.algebra.table
    n = m.algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = m.act(table[i, j])
            a, b = m.action[i], m.action[j]
            rhs = (matmul(a, b, p) - matmul(b, a, p)) % p
            if not np.array_equal(lhs, rhs):
                return False
    return True


def spin(gens: Sequence[np.ndarray], vectors, p: int, ambient: Optional[int] = None) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under every matrix in ``gens``."""
    if ambient is None:
        ambient = gens[0].shape[0]
    space = Subspace.span(vectors, p, ambient)
    frontier = space.basis
    gens_t = [np.asarray(g).T for g in gens]
    while frontier.shape[0] and gens_t:
        images = np.vstack([matmul(frontier, gt, p) for gt in gens_t])
        residual = space.reduce(images)
        residual = residual[residual.any(axis=1)]
        if residual.shape[0] == 0:
            break
        red, piv = rref(residual, p)
        frontier = red[: len(piv)]
        space = space.sum(Subspace.span(frontier, p, ambient))
    return space


def spin_module(m: LieModule, vectors) -> Subspace:
    return spin(m.gens, vectors, m.p, m.dim)


def is_invariant(m: LieModule, s: Subspace) -> bool:
    if s.dim == 0:
        return True
    return all(s.contains(matmul(s.basis, g.T, m.p)) for g in m.action)


def _random_element(gens, m: int, p: int, rng: np.random.Generator):
    theta = np.eye(m, dtype=DTYPE) * int(rng.integers(0, p))
    terms = ["%d*I" % int(theta[0, 0]) if m else "0"]
    if gens:
        for _ in range(WORD_TERMS):
            length = int(rng.integers(1, MAX_WORD_LENGTH + 1))
            letters = [int(rng.integers(0, len(gens))) for _ in range(length)]
            coeff = int(rng.integers(1, p)) if p > 2 else 1
            word = gens[letters[0]]
            for k in letters[1:]:
                word = matmul(word, gens[k], p)
            theta = (theta + coeff * word) % p
            terms.append("%d*%s" % (coeff, ".".join("g%d" % (k + 1) for k in letters)))
    return theta, "+".join(terms)


def chop(m: LieModule, seed: int = 1, path: Sequence[int] = ()) -> ChopResult:
    """Find a proper nonzero submodule, or certify irreducibility (Norton)."""
    dim, p = m.dim, m.p
    path = tuple(path)
    if dim < 1:
        raise ValueError("cannot chop the zero module")
    if dim == 1:
        return ChopResult(witness=NortonWitness(seed, path, 0, "dim=1", "-", 1))
    gens = [g for g in m.gens if g.any()]
    gens_t = [g.T.copy() for g in gens]
    rng = module_rng(seed, path)
    for attempt in range(CHOP_BUDGET):
        theta, word = _random_element(gens, dim, p, rng)
        for f, _mult in polys.factor(polys.charpoly(theta, p), p):
            ftheta = polys.evaluate(f, theta, p)
            null = kernel(ftheta, p)
            sub = spin(gens, null.basis[:1], p, dim)
            if sub.dim < dim:
                return ChopResult(submodule=sub)
            null_t = kernel(ftheta.T, p)
            sub_t = spin(gens_t, null_t.basis[:1], p, dim)
            if sub_t.dim < dim:
                return ChopResult(submodule=sub_t.annihilator())
            if null.dim == len(f) - 1:
                return ChopResult(witness=NortonWitness(
                    seed, path, attempt, word, polys.format_poly(f), null.dim))
    raise BudgetExhausted("no conclusive Norton test in %d random words (seed %d)" % (CHOP_BUDGET, seed))


def sub_module(m: LieModule, s: Subspace) -> LieModule:
    if not is_invariant(m, s):
        raise NotInvariantError("subspace is not invariant")
    piv = list(s.pivots)
    action = np.zeros((m.algebra.dim, s.dim, s.dim), dtype=DTYPE)
    for i, g in enumerate(m.action):
        images = matmul(s.basis, g.T, m.p)
        action[i] = images[:, piv].T
    return LieModule(m.algebra, action)


def quotient_module(m: LieModule, s: Subspace) -> LieModule:
    if not is_invariant(m, s):
        raise NotInvariantError("subspace is not invariant")
    co = s.complement_indices()
    action = np.zeros((m.algebra.dim, len(co), len(co)), dtype=DTYPE)
    for i, g in enumerate(m.action):
        images = g[:, co].T
        action[i] = s.project(images).T if len(co) else np.zeros((0, 0), dtype=DTYPE)
    return LieModule(m.algebra, action)


def direct_sum(modules: Sequence[LieModule], algebra: Optional["LieAlgebra"] = None) -> LieModule:
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        return zero_module(algebra)
    alg = algebra or modules[0].algebra
    total = sum(x.dim for x in modules)
    action = np.zeros((alg.dim, total, total), dtype=DTYPE)
    off = 0
    for x in modules:
        if x.action.shape[0] != alg.dim:
            raise ValueError("summands act through algebras of different dimension")
        action[:, off:off + x.dim, off:off + x.dim] = x.action
        off += x.dim
    return LieModule(alg, action)


def zero_module(algebra: "LieAlgebra", dim: int = 0) -> LieModule:
    return LieModule(algebra, np.zeros((algebra.dim, dim, dim), dtype=DTYPE))


def inflate(m: LieModule, algebra: "LieAlgebra", projection: np.ndarray) -> LieModule:
    """Pull a module of L/I back to L; ``projection[i]`` is the image of e_i in L/I."""
    proj = np.asarray(projection, dtype=DTYPE)
    action = np.tensordot(proj, m.action, axes=1) % m.p if m.action.shape[0] else \
        np.zeros((algebra.dim, m.dim, m.dim), dtype=DTYPE)
    return LieModule(algebra, action)


def restrict(m: LieModule, subalgebra: "LieAlgebra", basis: np.ndarray) -> LieModule:
    """Restrict to a subalgebra whose basis rows are given in the acting algebra's coordinates."""
    basis = np.asarray(basis, dtype=DTYPE).reshape(subalgebra.dim, m.algebra.dim)
    return LieModule(subalgebra, np.tensordot(basis, m.action, axes=1) % m.p)


def module_kernel(m: LieModule) -> Subspace:
    n = m.algebra.dim
    if m.dim == 0:
        return Subspace.full(n, m.p)
    rows = m.action.reshape(n, -1)
    return kernel(rows.T, m.p)


def is_faithful(m: LieModule) -> bool:
    return module_kernel(m).dim == 0


def irreducible_submodule(m: LieModule, seed: int = 1, path: Sequence[int] = ()):
    """Descend through proper submodules until one is certified irreducible.

    Returns ``(subspace, module, witness)`` with the subspace in ``m``'s coordinates.
    """
    current = m
    basis = np.eye(m.dim, dtype=DTYPE)
    depth = 0
    while True:
        res = chop(current, seed, tuple(path) + (depth,))
        if res.irreducible:
            return Subspace.span(basis, m.p, m.dim), current, res.witness
        s = res.submodule
        basis = matmul(s.basis, basis, m.p)
        current = sub_module(current, s)
        depth += 1


def composition_factors(m: LieModule, seed: int = 1, path: Sequence[int] = ()) -> list[Factor]:
    """Factors of a composition series, bottom first, each with its certificate."""
    if m.dim == 0:
        return []
    res = chop(m, seed, path)
    if res.irreducible:
        return [Factor(m, res.witness)]
    s = res.submodule
    path = tuple(path)
    return (composition_factors(sub_module(m, s), seed, path + (0,))
            + composition_factors(quotient_module(m, s), seed, path + (1,)))


# --- socle -----------------------------------------------------------------

def hom_space(src: LieModule, dst: LieModule) -> list[np.ndarray]:
    """Basis of module maps src -> dst as ``dst.dim x src.dim`` matrices."""
    p = src.p
    t, m = src.dim, dst.dim
    if t == 0 or m == 0:
        return []
    eye_t = np.eye(t, dtype=DTYPE)
    eye_m = np.eye(m, dtype=DTYPE)
    blocks = [np.kron(dm, eye_t) - np.kron(eye_m, sm.T) for dm, sm in zip(dst.action, src.action)]
    if not blocks:
        return [b.reshape(m, t) for b in np.eye(m * t, dtype=DTYPE)]
    ker = kernel(np.vstack(blocks) % p, p)
    return [row.reshape(m, t) for row in ker.basis]


@dataclass
class SocleComponent:
    """Isotypic socle component: an irreducible type and all its embeddings."""
    module: LieModule
    homs: list = field(default_factory=list)
    end_dim: int = 1

    @property
    def multiplicity(self) -> int:
        return len(self.homs) // self.end_dim


def socle_components(m: LieModule, seed: int = 1, path: Sequence[int] = ()) -> list[SocleComponent]:
    if m.dim == 0:
        return []
    path = tuple(path)
    _, t, _ = irreducible_submodule(m, seed, path + (0,))
    homs = hom_space(t, m)
    first = SocleComponent(t, homs, len(hom_space(t, t)))
    comps = [first]
    images = Subspace.span(np.vstack([h.T for h in homs]), m.p, m.dim)
    for comp in socle_components(quotient_module(m, images), seed, path + (1,)):
        u = comp.module
        if any(hom_space(u, c.module) for c in comps):
            continue
        hu = hom_space(u, m)
        if hu:
            comps.append(SocleComponent(u, hu, comp.end_dim))
    return comps


def socle(m: LieModule, seed: int = 1) -> Subspace:
    rows = [h.T for c in socle_components(m, seed) for h in c.homs]
    if not rows:
        return Subspace.zero(m.dim, m.p)
    return Subspace.span(np.vstack(rows), m.p, m.dim)


def iter_minimal_submodules(m: LieModule, seed: int = 1, limit: int = 200_000) -> Iterator[Subspace]:
    """Every minimal submodule exactly once (images of embeddings of socle types)."""
    seen = set()
    for comp in socle_components(m, seed):
        h = len(comp.homs)
        if comp.multiplicity == 1:
            yield Subspace.span(comp.homs[0].T, m.p, m.dim)
            continue
        if (m.p**h - 1) // (m.p - 1) > limit:
            raise EnumerationTooLarge("%d-dimensional hom space over F_%d" % (h, m.p))
        stack = np.stack(comp.homs)
        for c in projective_points(h, m.p):
            x = np.tensordot(c, stack, axes=1) % m.p
            s = Subspace.span(x.T, m.p, m.dim)
            k = s.key()
            if k not in seen:
                seen.add(k)
                yield s
