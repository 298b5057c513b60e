"""Abstract p-envelopes of Lie algebras.

The host algebra is L (re-based so the abelian ideal comes last) followed by
fresh symbols standing for iterated p-th powers e_i^[p]^j of the basis
elements outside the ideal.  A symbol's bracket with anything already
present is ``ad(e_i)^(p^j)`` applied inside the current host, so every
bracket of two symbols lands in L.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .gfp import DTYPE, Subspace, inverse, mat_pow, matmul, solve
from .lie import (
    LieAlgebra,
    NotAnIdealError,
    bracket_subspaces,
    change_basis,
    derived,
    is_abelian_subspace,
    is_ideal,
    verify_jacobi,
)
from .restricted import NotAbelianError, RestrictedAlgebra, verify_p_map

MODES = ("paper", "compact")


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnvelopeChain:
    generator: int
    symbols: tuple  # host indices of e_i^[p]^1, e_i^[p]^2, ...
    lambdas: Optional[tuple] = None  # operator dependency that closes the chain
    closure: Optional[tuple] = None  # p-image of the last chain element when realized in place


@dataclass(frozen=True, eq=False)
class Envelope:
    host: RestrictedAlgebra
    original: LieAlgebra
    chains: tuple
    abelian_ideal: Subspace
    basis: np.ndarray  # rows: host's first n basis vectors in the original coordinates
    mode: str

    @property
    def original_dim(self) -> int:
        return self.original.dim

    @property
    def dim(self) -> int:
        return self.host.dim

    @property
    def bound(self) -> int:
        n, d = self.original.dim, self.abelian_ideal.dim
        return n * (n - d + 1)

    @property
    def embedding(self) -> np.ndarray:
        """Row i = image of the original e_i in host coordinates."""
        n, p = self.original.dim, self.original.p
        out = np.zeros((n, self.dim), dtype=DTYPE)
        if n:
            out[:, :n] = inverse(self.basis, p)
        return out

    def embed(self, v) -> np.ndarray:
        return matmul(np.asarray(v, dtype=DTYPE).reshape(1, -1), self.embedding, self.original.p)[0]

    def embed_subspace(self, s: Subspace) -> Subspace:
        if s.dim == 0:
            return Subspace.zero(self.dim, self.original.p)
        return Subspace.span(matmul(s.basis, self.embedding, self.original.p), self.original.p, self.dim)

    def l_subspace(self) -> Subspace:
        n = self.original.dim
        return Subspace.span(np.eye(self.dim, dtype=DTYPE)[:n], self.original.p, self.dim)


class _Host:
    """Growing bracket table; index i < n is L, later indices are symbols."""

    def __init__(self, alg: LieAlgebra):
        self.p = alg.p
        self.table = alg.table.copy()
        self.origin: list[Optional[tuple]] = [None] * alg.dim  # (generator, level) per symbol

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def ad(self, x) -> np.ndarray:
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=DTYPE), self.table) % self.p

    def unit(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=DTYPE)
        v[i] = 1
        return v

    def solve_inner(self, target: np.ndarray) -> Optional[np.ndarray]:
        """Some w with ad(w) = target on the current host."""
        n = self.dim
        lhs = np.transpose(self.table, (0, 2, 1)).reshape(n, n * n).T
        return solve(lhs, target.ravel(), self.p)

    def adjoin(self, generator: int, level: int) -> int:
        p = self.p
        old = self.dim
        power = mat_pow(self.ad(self.unit(generator)), p**level, p)
        t = np.zeros((old + 1, old + 1, old + 1), dtype=DTYPE)
        t[:old, :old, :old] = self.table
        t[old, :old, :old] = power.T
        t[:old, old, :old] = (-power.T) % p
        self.table = t
        self.origin.append((generator, level))
        # the same bracket computed from the other symbol's side must agree
        for u in range(old):
            if self.origin[u] is None:
                continue
            k, l = self.origin[u]
            other = mat_pow(self.ad(self.unit(k)), p**l, p)[:, old]
            if not np.array_equal(other, self.table[u, old]):
                raise ConstructionError(
                    "symbol brackets are not antisymmetric (generators %d, %d)" % (generator, k))
        return old


def build_envelope(alg: LieAlgebra, ideal: Optional[Subspace] = None, mode: str = "paper") -> Envelope:
    """A p-envelope of ``alg`` of dimension at most n(n-d+1), d = dim of the abelian ideal.

    Paper mode first tries closing chains in place; if the finished host then
    fails verification it is rebuilt with every chain closed by a fresh symbol.
    """
    if mode == "paper":
        try:
            return _construct(alg, ideal, mode, lazy=True)
        except ConstructionError:
            return _construct(alg, ideal, mode, lazy=False)
    return _construct(alg, ideal, mode, lazy=False)


def _construct(alg: LieAlgebra, ideal: Optional[Subspace], mode: str, lazy: bool) -> Envelope:
    if mode not in MODES:
        raise ValueError("mode must be one of %s" % (MODES,))
    p, n = alg.p, alg.dim
    if ideal is None:
        ideal = Subspace.zero(n, p)
    if not is_ideal(alg, ideal):
        raise NotAnIdealError("subspace is not an ideal")
    if not is_abelian_subspace(alg, ideal):
        raise NotAbelianError("ideal is not abelian")
    co = ideal.complement_indices()
    basis = np.vstack([np.eye(n, dtype=DTYPE)[co], ideal.basis]).reshape(n, n)
    lr = change_basis(alg, basis) if n else alg
    host = _Host(lr)
    k = len(co)
    images: dict[int, np.ndarray] = {}
    chains = []
    for i in range(k):
        d0 = lr.ad(lr.basis(i))
        if not d0.any():
            images[i] = None  # zero, sized at the end
            chains.append(EnvelopeChain(i, ()))
            continue
        if mode == "paper":
            chains.append(_paper_chain(host, i, d0, images, lazy))
        else:
            chains.append(_compact_chain(host, i, images))
    big = host.dim
    rows = np.zeros((big, big), dtype=DTYPE)
    for idx, img in images.items():
        if img is not None:
            rows[idx, : len(img)] = img
    host_alg = LieAlgebra(p, host.table, (alg.name + "^e") if alg.name else "")
    env = Envelope(RestrictedAlgebra.of(host_alg, rows), alg, tuple(chains), ideal, basis, mode)
    report = verify_envelope(env)
    if not report.passed:
        raise ConstructionError("envelope failed: %s" % ", ".join(report.failures))
    return env


def _latest_dependency(ops: list[np.ndarray], target: np.ndarray, p: int) -> Optional[list[int]]:
    """Coefficients expressing target in the span of ops, preferring the latest operators."""
    mat = np.stack([o.ravel() for o in reversed(ops)], axis=1)
    lam = solve(mat, target.ravel(), p)
    return None if lam is None else [int(x) for x in reversed(lam)]


def _paper_chain(host: _Host, i: int, d0: np.ndarray, images: dict, lazy: bool) -> EnvelopeChain:
    """Adjoin e_i^[p], e_i^[p]^2, ... until the operators ad(e_i)^(p^t)|L become dependent.

    With ``lazy`` the last adjoined power is closed inside the chain when the
    dependency already holds on the whole current host.  Otherwise one more
    symbol is adjoined and its p-image is sum lam_t^p e_i^[p]^(t+1), which is
    consistent because the difference element y has ad(y)^2 = 0.
    """
    p, n = host.p, d0.shape[0]
    ops = [d0]
    elems = [host.unit(i)]
    symbols: list[int] = []

    def push(level: int) -> None:
        s = host.adjoin(i, level)
        prev = symbols[-1] if symbols else i
        images[prev] = host.unit(s)
        symbols.append(s)
        elems.append(host.unit(s))
        ops.append(mat_pow(ops[-1], p, p))

    push(1)
    while True:
        level = len(ops) - 1
        nxt = mat_pow(ops[-1], p, p)
        lam = _latest_dependency(ops, nxt, p)
        if lam is None:
            if len(symbols) >= n:
                raise ConstructionError("power chain longer than n")
            push(level + 1)
            continue
        big = host.dim
        if lazy:
            full = lambda e: mat_pow(host.ad(host.unit(i)), e, p)
            defect = full(p ** (level + 1))
            for t, lt in enumerate(lam):
                defect = (defect - lt * full(p**t)) % p
            if not defect.any():
                closure = np.zeros(big, dtype=DTYPE)
                for t, lt in enumerate(lam):
                    closure[: len(elems[t])] = (closure[: len(elems[t])] + lt * elems[t]) % p
                images[symbols[-1]] = closure
                return EnvelopeChain(i, tuple(symbols), tuple(lam), tuple(int(x) for x in closure))
        push(level + 1)
        closure = np.zeros(host.dim, dtype=DTYPE)
        for t, lt in enumerate(lam):
            closure[symbols[t]] = (closure[symbols[t]] + pow(lt, p, p)) % p
        images[symbols[-1]] = closure
        return EnvelopeChain(i, tuple(symbols), tuple(lam), tuple(int(x) for x in closure))


def _compact_chain(host: _Host, i: int, images: dict) -> EnvelopeChain:
    p = host.p
    n_limit = host.dim + len(host.origin) + 2
    symbols = []
    prev, level = i, 0
    while True:
        target = mat_pow(host.ad(host.unit(prev)), p, p)
        w = host.solve_inner(target)
        if w is not None:
            images[prev] = w
            return EnvelopeChain(i, tuple(symbols), None, tuple(int(x) for x in w))
        level += 1
        if level > n_limit:
            raise ConstructionError("compact power chain did not close")
        s = host.adjoin(i, level)
        images[prev] = host.unit(s)
        symbols.append(s)
        prev = s


@dataclass
class EnvelopeReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def lines(self) -> list[str]:
        return ["%s: %s" % (k, "pass" if v else "FAIL") for k, v in self.checks.items()]


def verify_envelope(env: Envelope, ideals: Sequence[Subspace] = ()) -> EnvelopeReport:
    """Re-check the envelope; ``ideals`` are ideals of the original algebra that must stay ideals."""
    host = env.host.algebra
    lsub = env.l_subspace()
    rep = EnvelopeReport()
    rep.checks["jacobi"] = verify_jacobi(host)
    rep.checks["p_map"] = rep.checks["jacobi"] and verify_p_map(env.host)
    rep.checks["subalgebra"] = bracket_subspaces(host, lsub, lsub).issubset(lsub)
    first = host.table[: env.original_dim, : env.original_dim, : env.original_dim]
    rep.checks["restricts_to_L"] = bool(np.array_equal(
        change_basis(env.original, env.basis).table, first)) if env.original_dim else True
    rep.checks["derived_in_L"] = derived(host).issubset(lsub)
    rep.checks["dim_bound"] = env.dim <= env.bound
    a_host = env.embed_subspace(env.abelian_ideal)
    rep.checks["zero_on_ideal"] = all(not env.host.power(v).any() for v in a_host.basis)
    rep.checks["ideals_lift"] = all(is_ideal(host, env.embed_subspace(s)) for s in ideals)
    return rep
