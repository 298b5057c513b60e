import numpy as np
import pytest

from modlie import corpus
from modlie.envelope import Envelope, build_envelope, verify_envelope
from modlie.gfp import Subspace
from modlie.lie import LieAlgebra, bracket_subspaces, minimal_ideals
from modlie.restricted import NotAbelianError, minimal_p_ideals, quotient_p_map


def env_of(name, mode="paper"):
    e = corpus.get(name)
    alg = e.algebra()
    return build_envelope(alg, e.abelian_ideal(alg), mode)


def test_na2_envelope_default_mode():
    env = env_of("NA2_p2")
    assert env.dim == 3
    (chain,) = env.chains
    assert len(chain.symbols) == 1
    g = chain.symbols[0]
    # g = x^[2] and g^[2] = g
    assert env.host.power(np.eye(3, dtype=np.int64)[0])[g] == 1
    assert env.host.power(np.eye(3, dtype=np.int64)[g]).tolist() == np.eye(3, dtype=np.int64)[g].tolist()


def test_na2_envelope_p_ideals():
    env = env_of("NA2_p2")
    found = minimal_p_ideals(env.host)
    assert len(found) == 2
    y = env.embed_subspace(Subspace.span([[0, 1]], 2, 2))
    assert y in found
    (g,) = env.chains[0].symbols
    central = Subspace.span([np.eye(3, dtype=np.int64)[g] - env.embed([1, 0]) % 2], 2, 3)
    assert central in found
    q, _ = quotient_p_map(env.host, central)
    # co-basis (y, g): the quotient is NA2 again with g acting as the toral x
    assert q.dim == 2 and q.pmap.images.tolist() == [[0, 0], [0, 1]]
    assert q.algebra.bracket([0, 1], [1, 0]).tolist() == [1, 0]


def test_h3_and_nr3_dims():
    assert env_of("H3_p2").dim == 4
    assert env_of("H3_p2", "compact").dim == 3
    assert env_of("NR3_p2").dim == 4
    assert env_of("NR3_p2", "compact").dim == 4


@pytest.mark.parametrize("mode", ["paper", "compact"])
def test_corpus_envelopes_verify(mode):
    for e in corpus.entries():
        alg = e.algebra()
        env = build_envelope(alg, e.abelian_ideal(alg), mode)
        rep = verify_envelope(env, minimal_ideals(alg))
        assert rep.passed, (e.name, rep.failures)
        assert env.dim <= env.bound
        if mode == "compact" and e.pmap is not None:
            assert env.dim == alg.dim
        for chain in env.chains:
            assert len(chain.symbols) <= alg.dim


def test_ideals_of_l_stay_ideals():
    for e in corpus.entries():
        alg = e.algebra()
        env = build_envelope(alg, e.abelian_ideal(alg))
        for s in minimal_ideals(alg):
            hs = env.embed_subspace(s)
            assert bracket_subspaces(env.host.algebra, Subspace.full(env.dim, alg.p), hs) <= hs


def test_rejects_non_abelian_ideal():
    with pytest.raises(NotAbelianError):
        build_envelope(corpus.sl2(5), Subspace.full(3, 5))


def test_corrupted_host_fails_verification():
    env = env_of("NA2_p2")
    t = env.host.algebra.table.copy()
    t[0, 2] = (t[0, 2] + [0, 1, 1]) % 2
    t[2, 0] = (-t[0, 2]) % 2
    from modlie.restricted import RestrictedAlgebra
    bad = Envelope(RestrictedAlgebra.of(LieAlgebra(2, t), env.host.pmap.images), env.original,
                   env.chains, env.abelian_ideal, env.basis, env.mode)
    rep = verify_envelope(bad)
    assert not rep.checks["jacobi"]


def test_random_envelopes():
    for alg in corpus.random_algebras(40, seed=2, dims=(2, 3, 4), primes=(2, 3)):
        from modlie.lie import abelian_socle
        a = abelian_socle(alg)
        for mode in ("paper", "compact"):
            env = build_envelope(alg, a, mode)
            assert verify_envelope(env).passed and env.dim <= env.bound
