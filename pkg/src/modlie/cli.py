"""Command line interface: ``modlie <command> ...``.

Inputs are ``.lie`` files or corpus names (``modlie corpus`` lists them).
Exit status is 0 when every check passes, 1 when a named check fails and
2 on unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from . import corpus
from .envelope import MODES, ConstructionError, build_envelope, verify_envelope
from .formats import FormatError, PMapError, emit_lie, emit_mod, parse_lie, parse_mod
from .gfp import DTYPE
from .lie import JacobiError, LieAlgebra, abelian_socle, centre, derived, minimal_ideal_report
from .meataxe import BudgetExhausted, LieModule
from .pipeline import (
    BOUND_KINDS,
    DEFAULT_MAX_MODULE_DIM,
    ModuleTooLarge,
    bound,
    faithful_cr,
    faithful_cr_restricted,
    verify_certificate,
)
from .restricted import PMap, RestrictedAlgebra, solve_restriction, verify_p_map

SEED_ENV = "MODLIE_SEED"


class InputError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise InputError("%s must be an integer, got %r" % (SEED_ENV, raw)) from None


def load(source: str) -> tuple[LieAlgebra, Optional[PMap], Optional[corpus.CorpusEntry]]:
    """Read a ``.lie`` path, or fall back to a corpus entry of that name."""
    path = Path(source)
    if path.is_file():
        alg, pmap = parse_lie(path.read_text())
        return LieAlgebra(alg.p, alg.table, path.stem), pmap, None
    try:
        entry = corpus.get(source)
    except KeyError:
        raise InputError("%s: no such file or corpus entry" % source) from None
    alg = entry.algebra()
    pmap = PMap(alg, entry.pmap(alg)) if entry.pmap else None
    return alg, pmap, entry


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _status(checks: dict) -> int:
    for name, ok in checks.items():
        print("%s: %s" % (name, "pass" if ok else "FAIL"))
    bad = [k for k, v in checks.items() if not v]
    if bad:
        print("failed: %s" % ", ".join(bad), file=sys.stderr)
        return 1
    return 0


def cmd_check(args) -> int:
    alg, pmap, _ = load(args.input)
    checks = {"jacobi": True}
    if pmap is not None:
        checks["p_map"] = verify_p_map(RestrictedAlgebra(alg, pmap))
    print("algebra: %s p=%d n=%d" % (alg.name or "-", alg.p, alg.dim))
    return _status(checks)


def cmd_info(args) -> int:
    alg, pmap, _ = load(args.input)
    seed = args.seed
    rep = minimal_ideal_report(alg, seed)
    restr = solve_restriction(alg)
    lines = [
        "name: %s" % (alg.name or "-"),
        "p: %d" % alg.p,
        "n: %d" % alg.dim,
        "abelian: %s" % ("yes" if alg.is_abelian() else "no"),
        "derived_dim: %d" % derived(alg).dim,
        "centre_dim: %d" % centre(alg).dim,
        "abelian_socle_dim: %d" % abelian_socle(alg, seed).dim,
        "unique_minimal_ideal: %s" % ("yes" if rep.unique else "no"),
        "minimal_ideal_dims: %s" % " ".join(str(s.dim) for s in rep.witnesses),
        "restrictable: %s" % ("yes" if restr is not None else "no"),
        "pmap_given: %s" % ("yes" if pmap is not None else "no"),
        "general_bound: %d" % bound("general", alg.p, alg.dim),
        "restricted_bound: %d" % bound("restricted", alg.p, alg.dim),
    ]
    print("\n".join(lines))
    return 0


def cmd_pmap(args) -> int:
    alg, pmap, _ = load(args.input)
    if args.action == "solve":
        found = solve_restriction(alg)
        if found is None:
            print("restrictable: FAIL (some ad(e_i)^p is not inner)", file=sys.stderr)
            return 1
        _write(args.out, emit_lie(alg, found, ["p-map solved on the standard basis"]))
        return 0
    if pmap is None:
        raise InputError("%s has no pmap lines" % args.input)
    return _status({"p_map": verify_p_map(RestrictedAlgebra(alg, pmap))})


def cmd_envelope(args) -> int:
    alg, _, entry = load(args.input)
    ideal = entry.abelian_ideal(alg) if entry else abelian_socle(alg, args.seed)
    env = build_envelope(alg, ideal, args.mode)
    rep = verify_envelope(env)
    print("mode: %s" % env.mode)
    print("n: %d" % env.original_dim)
    print("ideal_dim: %d" % ideal.dim)
    print("envelope_dim: %d" % env.dim)
    print("bound: %d" % env.bound)
    if args.out:
        _write(args.out, emit_lie(env.host.algebra, env.host.pmap,
                                  ["%s envelope of %s" % (env.mode, alg.name or args.input)]))
    return _status(rep.checks)


def cmd_construct(args) -> int:
    alg, pmap, _ = load(args.input)
    if args.kind == "restricted":
        if pmap is None:
            raise InputError("restricted construction needs pmap lines (see 'pmap solve')")
        res = faithful_cr_restricted(RestrictedAlgebra(alg, pmap), args.seed, args.max_module_dim)
    else:
        res = faithful_cr(alg, args.seed, args.mode, args.max_module_dim)
    cert = res.certificate
    text = cert.to_text()
    blocks = "blocks: %s" % " ".join(map(str, res.blocks))
    mod_text = emit_mod(alg.p, res.module.action, [blocks, "input_hash: %s" % cert.input_hash])
    if args.out:
        Path(args.out + ".mod").write_text(mod_text)
        Path(args.out + ".cert").write_text(text)
    sys.stdout.write(text)
    if not cert.passed:
        print("failed: %s" % ", ".join(cert.failures), file=sys.stderr)
        return 1
    return 0


def _blocks_from(text: str) -> Optional[list[int]]:
    for line in text.splitlines():
        body = line.strip().lstrip("#").strip()
        if body.startswith("blocks:"):
            return [int(x) for x in body.split(":", 1)[1].split()]
    return None


def cmd_verify_module(args) -> int:
    alg, _, _ = load(args.input)
    text = Path(args.module).read_text()
    p, action = parse_mod(text)
    if p != alg.p or action.shape[0] != alg.dim:
        raise InputError("module is over F_%d for a %d-dim algebra; expected F_%d and %d"
                         % (p, action.shape[0], alg.p, alg.dim))
    if args.blocks:
        blocks = [int(x) for x in args.blocks.split(",")]
    else:
        blocks = _blocks_from(text)
    rep = verify_certificate(alg, LieModule(alg, action.astype(DTYPE)), blocks, args.bound, args.seed)
    for line in rep.details:
        print(line)
    return _status(rep.checks)


def corpus_table(seed: int) -> str:
    head = "%-8s %2s %2s %8s %10s %8s %10s %s" % (
        "algebra", "n", "p", "gen_dim", "gen_bound", "res_dim", "res_bound", "status")
    out = [head]
    for e in corpus.entries():
        alg = e.algebra()
        g = faithful_cr(alg, seed)
        ok = verify_certificate(alg, g.module, g.blocks, "general", seed + 1).passed
        rdim, rbound = "-", "-"
        if e.pmap is not None:
            r = faithful_cr_restricted(RestrictedAlgebra.of(alg, e.pmap(alg)), seed)
            ok &= verify_certificate(alg, r.module, r.blocks, "restricted", seed + 1).passed
            rdim, rbound = str(r.module.dim), str(r.certificate.bound)
        out.append("%-8s %2d %2d %8d %10d %8s %10s %s" % (
            e.name, alg.dim, alg.p, g.module.dim, g.certificate.bound, rdim, rbound,
            "pass" if ok else "FAIL"))
    return "\n".join(out) + "\n"


def cmd_corpus(args) -> int:
    if args.emit:
        target = Path(args.emit)
        target.mkdir(parents=True, exist_ok=True)
        for e in corpus.entries():
            alg = e.algebra()
            pmap = PMap(alg, e.pmap(alg)) if e.pmap else None
            (target / (e.name + ".lie")).write_text(emit_lie(alg, pmap, [e.name]))
    table = corpus_table(args.seed)
    sys.stdout.write(table)
    return 0 if "FAIL" not in table else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modlie", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $%s or 1)" % SEED_ENV)
        return sp

    sp = add("check", cmd_check, "validate a .lie file (Jacobi, p-map)")
    sp.add_argument("input")
    sp = seeded(add("info", cmd_info, "structural summary of an algebra"))
    sp.add_argument("input")
    sp = add("pmap", cmd_pmap, "solve for or verify a p-map")
    sp.add_argument("action", choices=("solve", "verify"))
    sp.add_argument("input")
    sp.add_argument("--out")
    sp = seeded(add("envelope", cmd_envelope, "build and verify a p-envelope"))
    sp.add_argument("input")
    sp.add_argument("--mode", choices=MODES, default="paper")
    sp.add_argument("--out", help="write the envelope as a .lie file")
    sp = seeded(add("construct", cmd_construct, "faithful completely reducible module"))
    sp.add_argument("kind", choices=BOUND_KINDS)
    sp.add_argument("input")
    sp.add_argument("--mode", choices=MODES, default="paper", help="envelope mode (general only)")
    sp.add_argument("--max-module-dim", type=int, default=DEFAULT_MAX_MODULE_DIM)
    sp.add_argument("--out", help="prefix for <out>.mod and <out>.cert")
    sp = seeded(add("verify-module", cmd_verify_module, "re-check a .mod file against an algebra"))
    sp.add_argument("input")
    sp.add_argument("module")
    sp.add_argument("--bound", choices=BOUND_KINDS, default="general")
    sp.add_argument("--blocks", help="comma-separated summand sizes (default: from the file)")
    sp = seeded(add("corpus", cmd_corpus, "run both constructions over the named corpus"))
    sp.add_argument("--emit", metavar="DIR", help="also write every entry as DIR/<name>.lie")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except JacobiError as exc:
        print("jacobi: FAIL: %s" % exc, file=sys.stderr)
        return 1
    except PMapError as exc:
        print("p_map: FAIL: %s" % exc, file=sys.stderr)
        return 1
    except (ConstructionError, ModuleTooLarge, BudgetExhausted) as exc:
        print("%s: FAIL: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1
    except AssertionError as exc:
        print("proof_invariant: FAIL: %s" % exc, file=sys.stderr)
        return 1
    except (FormatError, InputError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
