import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlie import corpus
from modlie.cli import main
from modlie.formats import FormatError, PMapError, emit_lie, emit_mod, parse_lie, parse_mod
from modlie.lie import JacobiError
from modlie.restricted import PMap


def test_parse_na2():
    alg, pm = parse_lie("p 2\ndim 2\nbracket 1 2 : 0 1\n")
    assert np.array_equal(alg.table, corpus.na2(2).table) and pm is None


def test_parse_sl2_with_comments():
    text = "# sl2\np 5\ndim 3\nbracket 1 2 : 0 2 0   # [h,e]=2e\nbracket 1 3 : 0 0 3\nbracket 2 3 : 1 0 0\n"
    alg, _ = parse_lie(text)
    assert np.array_equal(alg.table, corpus.sl2(5).table)


@pytest.mark.parametrize("text,msg", [
    ("p 4\ndim 1\n", "not prime"),
    ("p 2\nbracket 1 2 : 0 1\n", "must precede"),
    ("p 2\ndim 2\nbracket 2 1 : 0 1\n", "i < j"),
    ("p 2\ndim 2\nbracket 1 2 : 0\n", "coordinates"),
    ("p 2\ndim 2\nbracket 1 2 0 1\n", "':'"),
    ("p 2\ndim 2\nfoo 1 : 0 1\n", "unknown"),
    ("p 2\ndim x\n", "integers"),
])
def test_parse_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_lie(text)


def test_jacobi_and_pmap_errors():
    with pytest.raises(JacobiError):
        parse_lie("p 3\ndim 3\nbracket 1 2 : 0 1 0\nbracket 2 3 : 1 0 0\n")
    with pytest.raises(PMapError):
        parse_lie("p 2\ndim 2\nbracket 1 2 : 0 1\npmap 1 : 0 1\n")


def test_corpus_roundtrip():
    for e in corpus.entries():
        alg = e.algebra()
        pm = PMap(alg, e.pmap(alg)) if e.pmap else None
        text = emit_lie(alg, pm)
        alg2, pm2 = parse_lie(text)
        assert emit_lie(alg2, pm2) == text
        assert np.array_equal(alg2.table, alg.table)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 4))
def test_mod_roundtrip(seed, p, n, m):
    act = np.random.default_rng(seed).integers(-p, 2 * p, size=(n, m, m))
    text = emit_mod(p, act, ["blocks: %d" % m])
    p2, act2 = parse_mod(text)
    assert p2 == p and np.array_equal(act2, act % p)
    assert emit_mod(p2, act2, ["blocks: %d" % m]) == text


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lie_roundtrip_random(seed):
    alg = corpus.random_algebra(np.random.default_rng(seed), 3, 3)
    a2, _ = parse_lie(emit_lie(alg))
    a3, _ = parse_lie(emit_lie(a2))
    assert np.array_equal(a2.table, a3.table) and np.array_equal(a2.table, alg.table)


def test_cli_check(tmp_path, capsys):
    good = tmp_path / "na2.lie"
    good.write_text("p 2\ndim 2\nbracket 1 2 : 0 1\n")
    assert main(["check", str(good)]) == 0
    bad = tmp_path / "bad.lie"
    bad.write_text("p 3\ndim 3\nbracket 1 2 : 0 1 0\nbracket 2 3 : 1 0 0\n")
    assert main(["check", str(bad)]) == 1
    assert "jacobi: FAIL" in capsys.readouterr().err
    p4 = tmp_path / "p4.lie"
    p4.write_text("p 4\ndim 1\n")
    assert main(["check", str(p4)]) == 2
    assert main(["check", "no-such-thing"]) == 2


def test_cli_construct_and_verify(tmp_path, capsys):
    src = tmp_path / "NA2.lie"
    src.write_text(emit_lie(corpus.na2(3)))
    out = tmp_path / "na2"
    assert main(["construct", "general", str(src), "--seed", "1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "dimension: 3" in text and "status: pass" in text
    p, act = parse_mod((tmp_path / "na2.mod").read_text())
    assert p == 3 and act.shape == (2, 3, 3)
    assert main(["verify-module", str(src), str(tmp_path / "na2.mod")]) == 0
    # a module of the wrong algebra is rejected, a trivial one fails faithfulness
    triv = tmp_path / "triv.mod"
    triv.write_text(emit_mod(3, np.zeros((2, 1, 1))))
    assert main(["verify-module", str(src), str(triv)]) == 1
    assert "failed: faithful" in capsys.readouterr().err


def test_cli_restricted_needs_pmap(capsys):
    assert main(["construct", "restricted", "NR3_p2"]) == 2
    assert main(["construct", "restricted", "H3_p2"]) == 0
    assert "dimension: 4" in capsys.readouterr().out


def test_cli_misc(tmp_path, capsys, monkeypatch):
    assert main(["info", "SL2_p5"]) == 0
    assert "restrictable: yes" in capsys.readouterr().out
    assert main(["pmap", "solve", "NR3_p2"]) == 1
    out = tmp_path / "na2p.lie"
    assert main(["pmap", "solve", "NA2_p5", "--out", str(out)]) == 0
    assert main(["pmap", "verify", str(out)]) == 0
    assert main(["envelope", "NR3_p2", "--mode", "compact"]) == 0
    assert "envelope_dim: 4" in capsys.readouterr().out
    monkeypatch.setenv("MODLIE_SEED", "4")
    assert main(["construct", "general", "H3_p2"]) == 0
    assert "seed: 4" in capsys.readouterr().out
    assert main(["construct", "general", "H3_p2", "--seed", "2"]) == 0
    assert "seed: 2" in capsys.readouterr().out


def test_cli_corpus_deterministic(tmp_path, capsys):
    assert main(["corpus", "--emit", str(tmp_path)]) == 0
    first = capsys.readouterr().out
    assert main(["corpus"]) == 0
    assert capsys.readouterr().out == first
    assert (tmp_path / "NA2_p2.lie").exists()
    assert "NA2_p5    2  5        5" in first
