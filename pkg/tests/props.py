"""Randomized property checks shared by the property tests and the acceptance gate.

Each ``check_*`` takes a restricted algebra and a numpy Generator, draws one
case and returns ``None`` on success or a short failure description.
"""

from __future__ import annotations

import numpy as np

from modlie import corpus
from modlie.envelope import build_envelope
from modlie.gfp import Subspace, kernel, mat_pow
from modlie.lie import derived
from modlie.restricted import RestrictedAlgebra, compute_s_terms, p_power


def restricted_cases():
    """(label, RestrictedAlgebra) for every corpus entry carrying a p-map."""
    out = []
    for e in corpus.entries():
        if e.pmap is not None:
            alg = e.algebra()
            out.append((e.name, RestrictedAlgebra.of(alg, e.pmap(alg))))
    return out


def envelope_cases():
    """(label, Envelope) in both modes for every corpus entry."""
    out = []
    for e in corpus.entries():
        alg = e.algebra()
        for mode in ("paper", "compact"):
            out.append(("%s/%s" % (e.name, mode), build_envelope(alg, e.abelian_ideal(alg), mode)))
    return out


def _vec(rng, r):
    return rng.integers(0, r.p, size=r.dim)


def check_axioms(r: RestrictedAlgebra, rng):
    alg, p = r.algebra, r.p
    a, b = _vec(rng, r), _vec(rng, r)
    lam = int(rng.integers(0, p))
    ap, bp = p_power(r, a), p_power(r, b)
    if not np.array_equal(p_power(r, lam * a % p), pow(lam, p, p) * ap % p):
        return "scalar rule fails for %s" % a
    s = compute_s_terms(alg, a, b).sum(axis=0) if p > 1 else 0
    if not np.array_equal(p_power(r, (a + b) % p), (ap + bp + s) % p):
        return "sum rule fails for %s, %s" % (a, b)
    if not np.array_equal(alg.ad(ap), mat_pow(alg.ad(a), p, p)):
        return "ad(a^[p]) != ad(a)^p for %s" % a
    return None


def _commuting_pair(r, rng):
    a = _vec(rng, r)
    cent = kernel(r.algebra.ad(a), r.p)  # {b : [a, b] = 0}
    coeffs = rng.integers(0, r.p, size=cent.dim)
    b = coeffs @ cent.basis % r.p if cent.dim else np.zeros(r.dim, dtype=np.int64)
    return a, b


def check_commuting_powers(r: RestrictedAlgebra, rng):
    """[a^[p]^i, b^[p]^j] = 0 for commuting a, b and i, j <= 2."""
    a, b = _commuting_pair(r, rng)
    pa, pb = [a], [b]
    for _ in range(2):
        pa.append(p_power(r, pa[-1]))
        pb.append(p_power(r, pb[-1]))
    for x in pa:
        for y in pb:
            if r.algebra.bracket(x, y).any():
                return "powers of commuting %s, %s do not commute" % (a, b)
    return None


def check_commuting_additive(r: RestrictedAlgebra, rng):
    a, b = _commuting_pair(r, rng)
    lhs = p_power(r, (a + b) % r.p)
    rhs = (p_power(r, a) + p_power(r, b)) % r.p
    return None if np.array_equal(lhs, rhs) else "(a+b)^[p] not additive for %s, %s" % (a, b)


def check_s_in_derived(r: RestrictedAlgebra, rng):
    d = derived(r.algebra)
    a, b = _vec(rng, r), _vec(rng, r)
    for s in compute_s_terms(r.algebra, a, b):
        if not d.contains(s):
            return "s_i(%s, %s) outside derived algebra" % (a, b)
    return None


def check_fold_order(r: RestrictedAlgebra, rng):
    x = _vec(rng, r)
    order = [int(i) for i in rng.permutation(r.dim)]
    if np.array_equal(p_power(r, x), p_power(r, x, order)):
        return None
    return "fold order %s changes the value at %s" % (order, x)


def check_envelope_sum(env, rng):
    """p_power(Σλ_i a_i) − Σλ_i^p p_power(a_i) lies in L."""
    r, p = env.host, env.host.p
    lsub: Subspace = env.l_subspace()
    k = int(rng.integers(1, 4))
    elems = rng.integers(0, p, size=(k, r.dim))
    lam = rng.integers(0, p, size=k)
    total = lam @ elems % p
    diff = p_power(r, total)
    for li, ai in zip(lam, elems):
        diff = (diff - pow(int(li), p, p) * p_power(r, ai)) % p
    return None if lsub.contains(diff) else "difference outside L for %s" % elems.tolist()


RESTRICTED_PROPERTIES = {
    "p_map_axioms": check_axioms,
    "commuting_powers_commute": check_commuting_powers,
    "commuting_sum_additive": check_commuting_additive,
    "s_terms_in_derived": check_s_in_derived,
    "fold_order_independent": check_fold_order,
}


def run_suite(cases: int = 100, seed: int = 0) -> dict:
    """Run every property ``cases`` times per algebra; returns name -> list of failures."""
    failures = {name: [] for name in list(RESTRICTED_PROPERTIES) + ["envelope_sum_in_L"]}
    for label, r in restricted_cases():
        for name, fn in RESTRICTED_PROPERTIES.items():
            rng = np.random.default_rng([seed, len(name), r.dim, r.p])
            for _ in range(cases):
                msg = fn(r, rng)
                if msg:
                    failures[name].append("%s: %s" % (label, msg))
    for label, env in envelope_cases():
        rng = np.random.default_rng([seed, env.dim, env.host.p])
        for _ in range(cases):
            msg = check_envelope_sum(env, rng)
            if msg:
                failures["envelope_sum_in_L"].append("%s: %s" % (label, msg))
    return failures
