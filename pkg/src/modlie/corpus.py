"""Named algebras used for regression runs, with their restricted structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .gfp import DTYPE, Subspace
from .lie import LieAlgebra


def ab(n: int, p: int = 2) -> LieAlgebra:
    return LieAlgebra.abelian(p, n, "Ab(%d)" % n)


def na2(p: int) -> LieAlgebra:
    """Basis x, y with [x, y] = y."""
    return LieAlgebra.from_brackets(p, 2, {(0, 1): [0, 1]}, "NA2")


def h3(p: int) -> LieAlgebra:
    """Heisenberg algebra: basis x, y, z with [x, y] = z."""
    return LieAlgebra.from_brackets(p, 3, {(0, 1): [0, 0, 1]}, "H3")


def sl2(p: int = 5) -> LieAlgebra:
    """Basis h, e, f with [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    return LieAlgebra.from_brackets(
        p, 3, {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]}, "SL2")


def nr3(p: int = 2) -> LieAlgebra:
    """Basis x, a1, a2 with [x, a1] = a2, [x, a2] = a1 + a2; not restrictable over F_2."""
    return LieAlgebra.from_brackets(p, 3, {(0, 1): [0, 0, 1], (0, 2): [0, 1, 1]}, "NR3")


def witt(p: int = 5) -> LieAlgebra:
    """W(1;1): basis e_{-1}, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}."""
    n = p
    br = {}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = a - 1, b - 1
            if -1 <= i + j <= p - 2:
                v = [0] * n
                v[i + j + 1] = (j - i) % p
                br[(a, b)] = v
    return LieAlgebra.from_brackets(p, n, br, "W(1;1)")


def _images(alg: LieAlgebra, rows) -> np.ndarray:
    return np.asarray(rows, dtype=DTYPE).reshape(alg.dim, alg.dim) % alg.p


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    build: Callable[[], LieAlgebra]
    abelian_ideal: Callable[[LieAlgebra], Subspace]
    pmap: Optional[Callable[[LieAlgebra], np.ndarray]] = None
    expected: dict = field(default_factory=dict)

    def algebra(self) -> LieAlgebra:
        alg = self.build()
        return LieAlgebra(alg.p, alg.table, self.name)


def _span(*vecs):
    def f(alg: LieAlgebra) -> Subspace:
        if not vecs:
            return Subspace.zero(alg.dim, alg.p)
        return Subspace.span(list(vecs), alg.p, alg.dim)
    return f


def _whole(alg: LieAlgebra) -> Subspace:
    return Subspace.full(alg.dim, alg.p)


def _zero_pmap(alg: LieAlgebra) -> np.ndarray:
    return np.zeros((alg.dim, alg.dim), dtype=DTYPE)


def _na2_pmap(alg):
    return _images(alg, [[1, 0], [0, 0]])


def _sl2_pmap(alg):
    return _images(alg, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])


def _witt_pmap(alg):
    rows = np.zeros((alg.dim, alg.dim), dtype=DTYPE)
    rows[1, 1] = 1  # e_0 is toral
    return rows


def entries() -> list[CorpusEntry]:
    out = []
    # two-ideal recursion: dims 1, 2, then 2 + 2 for Ab(3)
    for n, d in ((1, 1), (2, 2), (3, 4)):
        out.append(CorpusEntry("Ab%d_p2" % n, lambda n=n: ab(n, 2), _whole, _zero_pmap,
                               {"general_dim": d, "restricted_dim": d}))
    for p in (2, 3, 5):
        out.append(CorpusEntry("NA2_p%d" % p, lambda p=p: na2(p), _span([0, 1]), _na2_pmap,
                               {"general_dim": p, "restricted_dim": p}))
    for p in (2, 3):
        out.append(CorpusEntry("H3_p%d" % p, lambda p=p: h3(p), _span([0, 1, 0], [0, 0, 1]), _zero_pmap,
                               {"general_dim": p, "restricted_dim": p * p}))
    out.append(CorpusEntry("SL2_p5", lambda: sl2(5), _span(), _sl2_pmap,
                           {"general_dim": 3, "restricted_dim": 3}))
    out.append(CorpusEntry("NR3_p2", lambda: nr3(2), _span([0, 1, 0], [0, 0, 1]), None,
                           {"general_dim": 4}))
    out.append(CorpusEntry("W15_p5", lambda: witt(5), _span(), _witt_pmap,
                           {"general_dim": 5, "restricted_dim": 5}))
    return out


def get(name: str) -> CorpusEntry:
    for e in entries():
        if e.name.lower() == name.lower():
            return e
    raise KeyError("no corpus entry named %r" % name)


def random_algebra(rng: np.random.Generator, n: int, p: int, max_tries: int = 100_000) -> LieAlgebra:
    """Rejection-sample sparse structure constants until Jacobi holds.

    The fill density is redrawn per attempt so both sparse and dense tables occur.
    """
    iu = np.triu_indices(n, 1)
    for _ in range(max_tries):
        density = rng.uniform(0.05, 0.6)
        t = np.zeros((n, n, n), dtype=DTYPE)
        vals = rng.integers(1, p, size=(len(iu[0]), n)) * (rng.random((len(iu[0]), n)) < density)
        t[iu] = vals
        alg = LieAlgebra(p, t, "rand%d_p%d" % (n, p))
        if alg.jacobi_violation() is None:
            return alg
    raise RuntimeError("no Jacobi-valid table found in %d tries" % max_tries)


def random_algebras(count: int, seed: int = 1, dims=(1, 2, 3, 4), primes=(2, 3)) -> list[LieAlgebra]:
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = dims[k % len(dims)]
        p = primes[(k // len(dims)) % len(primes)]
        out.append(random_algebra(rng, n, p))
    return out
