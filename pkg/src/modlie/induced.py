"""The c-induced module u(L, c) ⊗_{u(A, c|A)} W on the monomial basis.

W is the one-dimensional A-module a·w = c(a)w.  With a co-basis e_1..e_k of
A, the vectors e_1^r_1 ... e_k^r_k ⊗ w (0 <= r_i < p) form a basis.  An
element acts by straightening: it is commuted to the right past the leading
factor of a monomial, producing commutator terms of lower degree, and
e_i^p is rewritten as e_i^[p] + c(e_i)^p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .gfp import DTYPE, Subspace, inverse, matmul
from .lie import change_basis, is_abelian_subspace, is_ideal
from .meataxe import LieModule, verify_module
from .restricted import RestrictedAlgebra, p_power


class CharacterError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Character:
    values: np.ndarray  # c(e_i) for the standard basis
    ideal: Subspace

    def __call__(self, x) -> int:
        return int(np.dot(np.asarray(x, dtype=DTYPE), self.values) % self.ideal.p)


@dataclass(frozen=True)
class MonomialBasis:
    cobasis: tuple  # standard indices completing the ideal's pivots
    exponents: tuple  # exponent vectors in lexicographic order

    def __len__(self) -> int:
        return len(self.exponents)

    def label(self, idx: int) -> str:
        parts = ["e%d^%d" % (self.cobasis[j] + 1, r) if r > 1 else "e%d" % (self.cobasis[j] + 1)
                 for j, r in enumerate(self.exponents[idx]) if r]
        return ("*".join(parts) or "1") + "⊗w"


@dataclass(frozen=True, eq=False)
class InducedModule:
    module: LieModule
    basis: MonomialBasis
    character: Character
    max_depth: int


def _adapted_basis(ideal: Subspace) -> np.ndarray:
    n = ideal.ambient
    co = ideal.complement_indices()
    return np.vstack([np.eye(n, dtype=DTYPE)[co], ideal.basis]).reshape(n, n)


def choose_character(r: RestrictedAlgebra, ideal: Subspace) -> Character:
    """Dual functional of the first RREF basis vector of the ideal, zero on the co-basis."""
    if ideal.dim == 0:
        raise CharacterError("the ideal is zero; no character can be nonzero on it")
    n, p = r.dim, r.p
    k = n - ideal.dim
    on_basis = np.zeros(n, dtype=DTYPE)
    on_basis[k] = 1
    values = matmul(inverse(_adapted_basis(ideal), p), on_basis.reshape(-1, 1), p)[:, 0]
    return Character(values, ideal)


def check_character(r: RestrictedAlgebra, c: Character) -> None:
    a = c.ideal
    if not is_ideal(r.algebra, a) or not is_abelian_subspace(r.algebra, a):
        raise CharacterError("the ideal must be an abelian ideal")
    if not any(c(v) for v in a.basis):
        raise CharacterError("character vanishes on the ideal")
    if any(p_power(r, v).any() for v in a.basis):
        raise CharacterError("p-map must vanish on the ideal")


def build_induced(r: RestrictedAlgebra, ideal: Subspace, c: Character) -> InducedModule:
    check_character(r, c)
    alg, p, n = r.algebra, r.p, r.dim
    basis = _adapted_basis(ideal)
    binv = inverse(basis, p)
    lr = change_basis(alg, basis)
    k = n - ideal.dim
    images = matmul(np.array([p_power(r, b) for b in basis]), binv, p)
    cvals = matmul(basis, c.values.reshape(-1, 1), p)[:, 0]
    cp = [pow(int(x), p, p) for x in cvals]
    table = lr.table

    exps = list(product(range(p), repeat=k))
    dim = len(exps)
    weights = [p ** (k - 1 - j) for j in range(k)]
    rho = np.zeros((n, dim, dim), dtype=DTYPE)
    done = np.zeros((n, dim), dtype=bool)
    stats = {"depth": 0}

    def index(r_):
        return sum(x * w for x, w in zip(r_, weights))

    def unit(idx):
        v = np.zeros(dim, dtype=DTYPE)
        v[idx] = 1
        return v

    def act_vec(y, idx, depth):
        out = np.zeros(dim, dtype=DTYPE)
        for b in np.nonzero(y)[0]:
            out = (out + int(y[b]) * act(int(b), idx, depth)) % p
        return out

    def act_on(b, vec, depth):
        out = np.zeros(dim, dtype=DTYPE)
        for idx in np.nonzero(vec)[0]:
            out = (out + int(vec[idx]) * act(b, int(idx), depth)) % p
        return out

    def act(b, idx, depth):
        if done[b, idx]:
            return rho[b][:, idx]
        stats["depth"] = max(stats["depth"], depth)
        r_ = exps[idx]
        lead = next((j for j, x in enumerate(r_) if x), k)
        if b < k and b <= lead:
            if r_[b] < p - 1:
                nr = list(r_)
                nr[b] += 1
                res = unit(index(nr))
            else:
                nr = list(r_)
                nr[b] = 0
                rest = index(nr)
                res = (act_vec(images[b], rest, depth + 1) + cp[b] * unit(rest)) % p
        elif b >= k and lead == k:
            res = cvals[b] * unit(0) % p
        else:
            # b·(e_lead m') = e_lead·(b m') + [b, e_lead] m'
            nr = list(r_)
            nr[lead] -= 1
            tail = index(nr)
            inner = act(b, tail, depth + 1)
            res = (act_on(lead, inner, depth + 1) + act_vec(table[b, lead], tail, depth + 1)) % p
        rho[b][:, idx] = res
        done[b, idx] = True
        return res

    order = sorted(range(dim), key=lambda i: (sum(exps[i]), i))
    for idx in order:
        for b in range(n):
            act(b, idx, 0)

    action = np.tensordot(binv, rho, axes=1) % p
    module = LieModule(alg, action)
    if not verify_module(module):
        raise AssertionError("induced module violates the representation law")
    mb = MonomialBasis(tuple(ideal.complement_indices()), tuple(exps))
    return InducedModule(module, mb, c, stats["depth"])


def induced_module(r: RestrictedAlgebra, ideal: Subspace, c: Character) -> LieModule:
    return build_induced(r, ideal, c).module
