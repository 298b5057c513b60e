import numpy as np
import pytest

from modlie import corpus
from modlie.gfp import Subspace
from modlie.lie import (
    JacobiError,
    LieAlgebra,
    abelian_socle,
    centre,
    check_jacobi,
    derived,
    ideal_closure,
    minimal_ideal_report,
    minimal_ideals,
    quotient_algebra,
    verify_jacobi,
)

from .oracles import jacobi_holds


def sp(alg, *vecs):
    return Subspace.span(list(vecs), alg.p, alg.dim)


def test_jacobi_matches_oracle_on_corpus():
    for e in corpus.entries():
        alg = e.algebra()
        assert verify_jacobi(alg) == jacobi_holds(alg.table.tolist(), alg.p) == True  # noqa: E712


def test_sl2_corrupted_fails():
    bad = LieAlgebra.from_brackets(5, 3, {(0, 1): [0, 2, 0], (0, 2): [0, 0, 3], (1, 2): [1, 1, 0]})
    assert not jacobi_holds(bad.table.tolist(), 5)
    assert not verify_jacobi(bad)
    with pytest.raises(JacobiError) as info:
        check_jacobi(bad)
    assert len(info.value.triple) == 3


def test_random_tables_agree_with_oracle():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n, p = int(rng.integers(2, 4)), int(rng.choice([2, 3]))
        t = np.zeros((n, n, n), dtype=np.int64)
        iu = np.triu_indices(n, 1)
        t[iu] = rng.integers(0, p, size=(len(iu[0]), n)) * (rng.random((len(iu[0]), n)) < 0.4)
        alg = LieAlgebra(p, t)
        assert verify_jacobi(alg) == jacobi_holds(alg.table.tolist(), p)


def test_brackets_and_ad():
    na2, h3 = corpus.na2(2), corpus.h3(2)
    assert na2.bracket([1, 0], [0, 1]).tolist() == [0, 1]
    assert h3.bracket([1, 0, 0], [0, 1, 0]).tolist() == [0, 0, 1]
    assert not h3.bracket([1, 1, 0], [1, 1, 0]).any()
    na5 = corpus.na2(5)
    assert na5.ad([1, 0]).tolist() == [[0, 0], [0, 1]]
    assert na5.ad([0, 1]).tolist() == [[0, 0], [4, 0]]  # x -> -y


def test_derived_centre_closure():
    assert derived(corpus.ab(3)).dim == 0
    assert derived(corpus.na2(3)) == sp(corpus.na2(3), [0, 1])
    assert derived(corpus.sl2(5)).dim == 3
    h3 = corpus.h3(2)
    assert centre(h3) == sp(h3, [0, 0, 1])
    assert centre(corpus.ab(2)).dim == 2
    assert centre(corpus.na2(2)).dim == 0
    assert ideal_closure(h3, [[0, 0, 1]]).dim == 1
    assert ideal_closure(corpus.na2(3), [[1, 0]]).dim == 2
    assert ideal_closure(corpus.ab(2), [[1, 0]]).dim == 1


def test_quotients():
    q = quotient_algebra(corpus.na2(3), sp(corpus.na2(3), [0, 1]))
    assert q.algebra.dim == 1 and q.algebra.is_abelian()
    h3 = corpus.h3(3)
    q = quotient_algebra(h3, sp(h3, [0, 0, 1]))
    assert q.algebra.dim == 2 and q.algebra.is_abelian()
    q0 = quotient_algebra(h3, Subspace.zero(3, 3))
    assert np.array_equal(q0.algebra.table, h3.table)


def test_minimal_ideals():
    na2 = corpus.na2(2)
    assert minimal_ideal_report(na2).witnesses == (sp(na2, [0, 1]),)
    h3 = corpus.h3(2)
    assert minimal_ideal_report(h3).witnesses == (sp(h3, [0, 0, 1]),)
    ab2 = corpus.ab(2)
    rep = minimal_ideal_report(ab2)
    assert not rep.unique and rep.witnesses[0] != rep.witnesses[1]
    assert len(minimal_ideals(ab2)) == 3  # the three lines of F_2^2
    assert minimal_ideal_report(corpus.sl2(5)).witnesses[0].dim == 3
    nr3 = corpus.nr3(2)
    assert minimal_ideal_report(nr3).witnesses == (sp(nr3, [0, 1, 0], [0, 0, 1]),)


def test_minimal_ideals_brute_force():
    """Every ideal of a small F_2 algebra, enumerated from all subsets of vectors."""
    from itertools import product
    from modlie.lie import is_ideal
    for alg in [corpus.h3(2), corpus.nr3(2), corpus.ab(3)] + corpus.random_algebras(8, seed=5, dims=(3,), primes=(2,)):
        n = alg.dim
        vecs = [np.array(v) for v in product(range(2), repeat=n) if any(v)]
        ideals = {}
        for v in vecs:
            s = ideal_closure(alg, [v])
            ideals[s.key()] = s
        cands = list(ideals.values())
        mins = sorted((s for s in cands if not any(t < s for t in cands)), key=lambda s: s.key())
        assert all(is_ideal(alg, s) for s in mins)
        assert minimal_ideals(alg) == mins


def test_abelian_socle():
    assert abelian_socle(corpus.na2(3)).dim == 1
    assert abelian_socle(corpus.sl2(5)).dim == 0
    assert abelian_socle(corpus.ab(3)).dim == 3
