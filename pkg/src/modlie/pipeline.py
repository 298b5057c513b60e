"""Faithful completely reducible modules with certified dimension bounds.

``faithful_cr_restricted`` handles a restricted algebra and stays within
p^(n-1); ``faithful_cr`` handles any algebra and stays within p^(n^2-1),
passing through a p-envelope when the unique minimal ideal is abelian.
Both return the module as a direct sum of irreducible summands, each with
its Norton witness, plus a text certificate.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .envelope import build_envelope
from .formats import emit_lie
from .gfp import DTYPE, Subspace
from .induced import build_induced, choose_character
from .lie import (
    LieAlgebra,
    adjoint_module,
    is_abelian_subspace,
    minimal_ideal_report,
    quotient_algebra,
)
from .meataxe import (
    Factor,
    LieModule,
    NortonWitness,
    chop,
    composition_factors,
    direct_sum,
    inflate,
    irreducible_submodule,
    is_faithful,
    module_kernel,
    restrict,
    sub_module,
    verify_module,
)
from .restricted import (
    RestrictedAlgebra,
    adjust_p_map_on_asoc,
    minimal_p_ideals,
    p_power,
    quotient_p_map,
    verify_p_map,
)

DEFAULT_MAX_MODULE_DIM = 4096
BOUND_KINDS = ("restricted", "general")

# child indices threaded into the seed path
_QUOTIENT = (0, 1)
_MINIMAL = 2
_FACTORS = 3
_ENVELOPE = 4
_SUBMODULE = 5
_RECHECK = 9


class ProofInvariantError(AssertionError):
    """A step the construction guarantees did not hold: an implementation bug."""


class ModuleTooLarge(RuntimeError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ProofInvariantError(msg)


def bound(kind: str, p: int, n: int) -> int:
    if kind == "restricted":
        return p ** max(n - 1, 0)
    if kind == "general":
        return p ** max(n * n - 1, 0)
    raise ValueError("bound kind must be one of %s" % (BOUND_KINDS,))


def input_hash(alg: LieAlgebra, pmap=None) -> str:
    return hashlib.sha256(emit_lie(alg, pmap).encode()).hexdigest()


@dataclass
class Certificate:
    input_hash: str
    kind: str
    p: int
    n: int
    seed: int
    dimension: int
    bound: int
    kernel_dim: int
    summands: list = field(default_factory=list)  # (dim, witness description)
    trace: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_text(self) -> str:
        out = [
            "input_hash: %s" % self.input_hash,
            "kind: %s" % self.kind,
            "p: %d" % self.p,
            "n: %d" % self.n,
            "seed: %d" % self.seed,
            "dimension: %d" % self.dimension,
            "bound: %d" % self.bound,
            "kernel_dim: %d" % self.kernel_dim,
            "summands: %d" % len(self.summands),
        ]
        for k, (d, w) in enumerate(self.summands, 1):
            out.append("summand.%d: dim=%d %s" % (k, d, w))
        for k, line in enumerate(self.trace, 1):
            out.append("trace.%d: %s" % (k, line))
        for name, ok in self.checks.items():
            out.append("check.%s: %s" % (name, "pass" if ok else "FAIL"))
        out.append("status: %s" % ("pass" if self.passed else "FAIL"))
        return "\n".join(out) + "\n"


@dataclass(frozen=True, eq=False)
class Construction:
    module: LieModule
    summands: tuple  # Factor per irreducible summand, in block order
    certificate: Certificate

    @property
    def blocks(self) -> list[int]:
        return [f.module.dim for f in self.summands]


def _scalar_module(alg: LieAlgebra) -> Factor:
    m = LieModule(alg, np.ones((1, 1, 1), dtype=DTYPE))
    return Factor(m, NortonWitness(0, (), 0, "dim=1", "-", 1))


def _certified(m: LieModule, seed: int, path: tuple) -> Factor:
    res = chop(m, seed, path)
    _require(res.irreducible, "summand expected irreducible")
    return Factor(m, res.witness)


def _embed_minimal(alg: LieAlgebra, ideal: Subspace, seed: int, path: tuple) -> Subspace:
    """A minimal ideal of ``alg`` inside ``ideal`` (first one found by chopping)."""
    s, _, _ = irreducible_submodule(sub_module(adjoint_module(alg), ideal), seed, path)
    return Subspace.span(s.basis @ ideal.basis % alg.p, alg.p, alg.dim)


def _restricted(r: RestrictedAlgebra, seed: int, path: tuple, trace: list, max_dim: int) -> list[Factor]:
    alg, n, p = r.algebra, r.dim, r.p
    tag = "/".join(map(str, path)) or "root"
    if n == 0:
        trace.append("%s restricted n=0: zero module" % tag)
        return []
    if n == 1:
        trace.append("%s restricted n=1: scalar module" % tag)
        return [_scalar_module(alg)]
    r = RestrictedAlgebra(alg, adjust_p_map_on_asoc(r, seed))
    ideals = minimal_p_ideals(r, seed)
    if len(ideals) >= 2:
        trace.append("%s restricted n=%d: two minimal p-ideals (dims %d, %d)"
                     % (tag, n, ideals[0].dim, ideals[1].dim))
        out = []
        for child, ideal in zip(_QUOTIENT, ideals[:2]):
            rq, q = quotient_p_map(r, ideal)
            sub = _restricted(rq, seed, path + (child,), trace, max_dim)
            out += [Factor(inflate(f.module, alg, q.projection), f.witness) for f in sub]
        total = sum(f.module.dim for f in out)
        _require(total <= 2 * p ** (n - 2) <= p ** (n - 1), "direct sum exceeds p^(n-1)")
        return out
    a = ideals[0]
    b = _embed_minimal(alg, a, seed, path + (_MINIMAL,))
    bmod = sub_module(adjoint_module(alg), b)
    kern = module_kernel(bmod)
    if kern.dim == 0:
        trace.append("%s restricted n=%d: unique minimal p-ideal, faithful minimal ideal (dim %d)"
                     % (tag, n, b.dim))
        return [_certified(bmod, seed, path + (_MINIMAL, 1))]
    _require(a.issubset(kern), "kernel of the minimal ideal must contain the p-ideal")
    _require(is_abelian_subspace(alg, b), "minimal ideal with nonzero kernel must be abelian")
    _require(b == a, "abelian minimal ideal must be the unique minimal p-ideal")
    _require(all(not p_power(r, v).any() for v in a.basis), "p-map must vanish on the ideal")
    k = n - a.dim
    if p**k > max_dim:
        raise ModuleTooLarge("induced module of dimension %d exceeds the limit %d" % (p**k, max_dim))
    ind = build_induced(r, a, choose_character(r, a))
    _require(ind.module.dim == p**k, "induced module has the wrong dimension")
    factors = composition_factors(ind.module, seed, path + (_FACTORS,))
    v0 = direct_sum([f.module for f in factors], alg)
    _require(is_faithful(v0), "semisimplification of the induced module is not faithful")
    trace.append("%s restricted n=%d: induced from abelian minimal ideal (dim %d), module %d -> factors %s"
                 % (tag, n, a.dim, ind.module.dim, ",".join(str(f.module.dim) for f in factors)))
    return factors


def _assemble(alg: LieAlgebra, factors: list[Factor], kind: str, seed: int, trace: list,
              hash_: str) -> Construction:
    module = direct_sum([f.module for f in factors], alg)
    b = bound(kind, alg.p, alg.dim)
    cert = Certificate(
        input_hash=hash_, kind=kind, p=alg.p, n=alg.dim, seed=seed, dimension=module.dim,
        bound=b, kernel_dim=module_kernel(module).dim,
        summands=[(f.module.dim, f.witness.describe()) for f in factors], trace=list(trace))
    cert.checks["representation"] = verify_module(module)
    cert.checks["faithful"] = cert.kernel_dim == 0
    cert.checks["summands_irreducible"] = all(f.witness is not None for f in factors)
    cert.checks["dimension_bound"] = module.dim <= b
    return Construction(module, tuple(factors), cert)


def faithful_cr_restricted(r: RestrictedAlgebra, seed: int = 1,
                           max_dim: int = DEFAULT_MAX_MODULE_DIM) -> Construction:
    """Faithful completely reducible module of dimension <= p^(n-1)."""
    if not verify_p_map(r):
        raise ValueError("the p-map does not satisfy the axioms")
    trace: list[str] = []
    factors = _restricted(r, seed, (), trace, max_dim)
    return _assemble(r.algebra, factors, "restricted", seed, trace, input_hash(r.algebra, r.pmap))


def _general(alg: LieAlgebra, seed: int, path: tuple, trace: list, mode: str, max_dim: int) -> list[Factor]:
    n, p = alg.dim, alg.p
    tag = "/".join(map(str, path)) or "root"
    if n == 0:
        trace.append("%s general n=0: zero module" % tag)
        return []
    if n == 1:
        trace.append("%s general n=1: scalar module" % tag)
        return [_scalar_module(alg)]
    report = minimal_ideal_report(alg, seed)
    if not report.unique:
        a1, a2 = report.witnesses
        trace.append("%s general n=%d: two minimal ideals (dims %d, %d)" % (tag, n, a1.dim, a2.dim))
        out = []
        for child, ideal in zip(_QUOTIENT, (a1, a2)):
            q = quotient_algebra(alg, ideal)
            sub = _general(q.algebra, seed, path + (child,), trace, mode, max_dim)
            out += [Factor(inflate(f.module, alg, q.projection), f.witness) for f in sub]
        total = sum(f.module.dim for f in out)
        _require(total <= 2 * p ** max((n - 1) ** 2 - 1, 0) <= p ** (n * n - 1),
                 "direct sum exceeds p^(n^2-1)")
        return out
    a = report.witnesses[0]
    if not is_abelian_subspace(alg, a):
        trace.append("%s general n=%d: unique minimal ideal, non-abelian (dim %d): adjoint action"
                     % (tag, n, a.dim))
        m = sub_module(adjoint_module(alg), a)
        _require(is_faithful(m), "adjoint action on a non-abelian unique minimal ideal must be faithful")
        return [_certified(m, seed, path + (_MINIMAL,))]
    env = build_envelope(alg, a, mode)
    _require(env.dim <= env.bound <= n * n, "envelope exceeds n^2")
    trace.append("%s general n=%d: unique abelian minimal ideal (dim %d), %s envelope of dim %d"
                 % (tag, n, a.dim, mode, env.dim))
    host_factors = _restricted(env.host, seed, path + (_ENVELOPE,), trace, max_dim)
    a_host = env.embed_subspace(a)
    chosen = next((f for f in host_factors
                   if any(f.module.act(v).any() for v in a_host.basis)), None)
    _require(chosen is not None, "the ideal acts trivially on every summand")
    res = restrict(chosen.module, alg, env.embedding)
    _, v1, wit = irreducible_submodule(res, seed, path + (_SUBMODULE,))
    _require(is_faithful(v1), "irreducible L-submodule must be faithful")
    trace.append("%s general n=%d: summand of dim %d restricted to L, irreducible submodule of dim %d"
                 % (tag, n, chosen.module.dim, v1.dim))
    return [Factor(v1, wit)]


def faithful_cr(alg: LieAlgebra, seed: int = 1, envelope_mode: str = "paper",
                max_dim: int = DEFAULT_MAX_MODULE_DIM) -> Construction:
    """Faithful completely reducible module of dimension <= p^(n^2-1)."""
    if alg.jacobi_violation() is not None:
        raise ValueError("structure constants violate the Jacobi identity")
    trace: list[str] = []
    factors = _general(alg, seed, (), trace, envelope_mode, max_dim)
    return _assemble(alg, factors, "general", seed, trace, input_hash(alg))


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_text(self) -> str:
        out = ["check.%s: %s" % (k, "pass" if v else "FAIL") for k, v in self.checks.items()]
        out += self.details
        out.append("status: %s" % ("pass" if self.passed else "FAIL"))
        return "\n".join(out) + "\n"


def verify_certificate(alg: LieAlgebra, module: LieModule, blocks: Optional[Sequence[int]] = None,
                       bound_kind: str = "general", seed: int = 2) -> VerificationReport:
    """Independent re-check: representation law, zero kernel, block-diagonal
    irreducible summands (re-chopped with ``seed``), and the dimension bound."""
    rep = VerificationReport()
    m = module.dim
    blocks = list(blocks) if blocks is not None else [m]
    rep.checks["representation"] = verify_module(module)
    kern = module_kernel(module)
    rep.checks["faithful"] = kern.dim == 0
    rep.details.append("kernel_dim: %d" % kern.dim)
    rep.checks["blocks_cover"] = sum(blocks) == m and all(b > 0 for b in blocks)
    irreducible = rep.checks["blocks_cover"]
    if irreducible:
        off = 0
        mask = np.zeros((m, m), dtype=bool)
        for b in blocks:
            mask[off:off + b, off:off + b] = True
            off += b
        if np.any(module.action[:, ~mask]):
            irreducible = False
            rep.details.append("summands: action is not block diagonal")
        else:
            off = 0
            for k, b in enumerate(blocks):
                piece = LieModule(alg, module.action[:, off:off + b, off:off + b])
                res = chop(piece, seed, (_RECHECK, k))
                rep.details.append("summand.%d: dim=%d %s" % (
                    k + 1, b, res.witness.describe() if res.irreducible else "REDUCIBLE"))
                irreducible &= res.irreducible
                off += b
    rep.checks["summands_irreducible"] = bool(irreducible)
    lim = bound(bound_kind, alg.p, alg.dim)
    rep.checks["dimension_bound"] = m <= lim
    rep.details.append("dimension: %d bound: %d (%s)" % (m, lim, bound_kind))
    return rep
