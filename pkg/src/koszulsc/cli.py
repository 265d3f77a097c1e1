"""Command-line interface and report formatting.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard
violation.  JSON output is canonical (sorted keys, fixed separators) so
that parsing and re-serializing is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .complexes import (
    SimplicialComplex,
    format_complex_text,
    parse_complex,
    restriction,
    vertices_of,
)
from .errors import ComplexError, GuardError, OracleError
from .homology import reduced_homology
from .koszul import (
    betti_table,
    chen_ranks,
    hilbert_series_combinatorial,
    hilbert_series_from_module,
    koszul_module,
    specialize_single,
)
from .resonance import annihilator, jump_resonance, support_resonance
from .verify import (
    DEFAULT_COUNT,
    DEFAULT_SEED,
    SUITES,
    example_complexes,
    run_suite,
)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _load_complex(path: str, max_n: int) -> SimplicialComplex:
    delta = parse_complex(Path(path).read_text())
    if delta.n > max_n:
        raise GuardError(f"n={delta.n} exceeds --max-n {max_n}")
    return delta


def _parse_subset(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


# -- subcommands ---------------------------------------------------------------


def cmd_homology(args) -> int:
    delta = _load_complex(args.complex, args.max_n)
    subs = [None] if not args.sub else args.sub
    blocks = []
    for sub in subs:
        if sub is None:
            target = delta
            label = sorted(v for v in range(1, delta.n + 1))
        else:
            label = sorted(_parse_subset(sub))
            target = restriction(delta, label)
        profile = reduced_homology(target)
        top = target.dim if target.dim is not None else -1
        dims = {str(i): profile.get(i) for i in range(-1, max(top, -1) + 1)}
        blocks.append({"dims": dims, "subset": label})
    if args.format == "json":
        print(dumps({"homology": blocks, "n": delta.n}))
    else:
        for block in blocks:
            print(f"subset {block['subset']}:")
            for i, h in block["dims"].items():
                print(f"  h~_{i} = {h}")
    return 0


def cmd_koszul(args) -> int:
    delta = _load_complex(args.complex, args.max_n)
    if args.max_degree is None:
        args.max_degree = 2 * delta.n
    out = {"i": args.i, "n": delta.n}
    series = hilbert_series_combinatorial(delta, args.i)
    if args.hilbert == "multi":
        out["hilbert"] = {
            "terms": [
                {"coeff": c, "support": list(vertices_of(m))} for m, c in series.terms
            ]
        }
    else:
        out["hilbert"] = {
            "single": specialize_single(series, args.max_degree),
            "max_degree": args.max_degree,
        }
    if args.betti:
        table = betti_table(koszul_module(delta, args.i))
        out["betti"] = _betti_json(table)
    if args.format == "json":
        print(dumps(out))
    else:
        _print_koszul_text(out)
    return 0


def _betti_json(table):
    reg = table.regularity
    return {
        "entries": [
            {"beta": beta, "h": h, "support": list(vertices_of(m))}
            for h, m, beta in table.entries
        ],
        "pdim": table.pdim,
        "reg": "-inf" if reg == float("-inf") else reg,
    }


def _print_koszul_text(out):
    print(f"weight {out['i']} on n={out['n']} vertices")
    h = out["hilbert"]
    if "terms" in h:
        if not h["terms"]:
            print("  hilbert series: 0")
        for term in h.get("terms", []):
            supp = term["support"]
            denom = "".join(f"(1-t{j})" for j in supp)
            mono = "".join(f"t{j}" for j in supp) or "1"
            print(f"  + {term['coeff']} * {mono} / {denom or '1'}")
    else:
        print(f"  dimensions by degree: {h['single']}")
    if "betti" in out:
        b = out["betti"]
        if not b["entries"]:
            print("  zero module")
        for e in b["entries"]:
            print(f"  beta_{e['h']} at {e['support']} = {e['beta']}")
        print(f"  regularity = {b['reg']}, pdim = {b['pdim']}")


def cmd_betti(args) -> int:
    delta = _load_complex(args.complex, args.max_n)
    table = betti_table(koszul_module(delta, args.i))
    payload = {"betti": _betti_json(table), "i": args.i, "n": delta.n}
    if args.format == "json":
        print(dumps(payload))
    else:
        b = payload["betti"]
        if not b["entries"]:
            print("zero module")
        for e in b["entries"]:
            print(f"beta_{e['h']} at {e['support']} = {e['beta']}")
        print(f"regularity = {b['reg']}, pdim = {b['pdim']}")
    return 0


def cmd_resonance(args) -> int:
    delta = _load_complex(args.complex, args.max_n)
    out = {"i": args.i, "n": delta.n}
    kinds = ["jump", "support"] if args.kind == "both" else [args.kind]
    for kind in kinds:
        arr = (
            jump_resonance(delta, args.i)
            if kind == "jump"
            else support_resonance(delta, args.i)
        )
        out[kind] = {"components": arr.support_lists()}
    if args.annihilator:
        ideal = annihilator(delta, args.i)
        out["annihilator"] = {"generators": ideal.generator_lists()}
    if args.format == "json":
        out["kind"] = args.kind
        print(dumps(out))
    else:
        for kind in kinds:
            comps = out[kind]["components"]
            if not comps:
                text = "empty"
            elif comps == [[]]:
                text = "origin"
            else:
                text = " U ".join("k^" + "".join(map(str, c)) for c in comps)
            print(f"{kind} resonance (i={args.i}): {text}")
        if args.annihilator:
            gens = out["annihilator"]["generators"]
            if gens == [[]]:
                print("annihilator: unit ideal")
            else:
                body = ", ".join("x" + " x".join(map(str, g)) for g in gens)
                print(f"annihilator generators: ({body})")
    return 0


def cmd_chen(args) -> int:
    delta = _load_complex(args.complex, args.max_n)
    ranks = chen_ranks(delta, args.max_degree)
    payload = {
        "expansion": list(ranks.expansion),
        "n": delta.n,
        "q": [{"coeff": c, "j": j} for j, c in ranks.q_coeffs],
    }
    if args.format == "json":
        print(dumps(payload))
    else:
        q = " + ".join(f"{c}t^{j}" for j, c in ranks.q_coeffs) or "0"
        print(f"Q = {q}")
        print(f"shifted module dimensions: {list(ranks.expansion)}")
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    had_failure = False
    for name in names:
        report = run_suite(
            name, seed=args.seed, count=args.count, max_n=args.max_n_suite,
            jobs=args.jobs,
        )
        had_failure = had_failure or report.failures > 0
        if args.format == "json":
            print(dumps(report.to_json_obj()))
        else:
            print(f"suite {report.suite}: {len(report.cases)} cases, "
                  f"{report.failures} failures ({report.wall_time_s:.2f}s)")
            for case in report.cases:
                line = f"  [{case.status}] {case.id}"
                if case.details and case.status != "pass":
                    line += f" -- {case.details}"
                print(line)
    return 1 if had_failure else 0


def cmd_examples(args) -> int:
    catalog = example_complexes()
    if args.name:
        if args.name not in catalog:
            print(f"unknown example {args.name!r}", file=sys.stderr)
            return 2
        sys.stdout.write(format_complex_text(catalog[args.name], comment=args.name))
        return 0
    if args.write:
        outdir = Path(args.write)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, delta in sorted(catalog.items()):
            (outdir / f"{name}.txt").write_text(
                format_complex_text(delta, comment=name)
            )
        print(f"wrote {len(catalog)} complexes to {outdir}")
        return 0
    for name, delta in sorted(catalog.items()):
        print(f"{name}: n={delta.n}, facets={[list(vertices_of(f)) for f in delta.facets]}")
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koszulsc",
        description="Exact Koszul-module, Hilbert-series and resonance "
        "computations for finite simplicial complexes.",
    )
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument(
        "--max-n", type=int, default=16,
        help="guard for all-subsets computations (default 16)",
    )
    parser.add_argument(
        "--jobs", "-j", type=int,
        default=int(os.environ.get("KOSZUL_JOBS", "1")),
        help="worker processes for verification corpora",
    )
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering the top-level defaults when absent
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=["text", "json"], default=argparse.SUPPRESS
    )
    common.add_argument("--max-n", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", "-j", type=int, default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common], help="reduced homology")
    p.add_argument("--complex", required=True)
    p.add_argument("--sub", action="append", help="restrict to 1,3,... (repeatable)")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser(
        "koszul", parents=[common], help="Hilbert series and Betti data of a weight"
    )
    p.add_argument("--complex", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--hilbert", choices=["multi", "single"], default="multi")
    p.add_argument("--betti", action="store_true")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(fn=cmd_koszul)

    p = sub.add_parser("betti", parents=[common], help="Betti table of a weight")
    p.add_argument("--complex", required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser(
        "resonance", parents=[common], help="jump/support loci and annihilator"
    )
    p.add_argument("--complex", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--kind", choices=["jump", "support", "both"], default="both")
    p.add_argument("--annihilator", action="store_true")
    p.set_defaults(fn=cmd_resonance)

    p = sub.add_parser(
        "chen", parents=[common], help="disconnection polynomial of a graph"
    )
    p.add_argument("--complex", required=True)
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(fn=cmd_chen)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--max-n-suite", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser(
        "examples", parents=[common], help="list or export built-in complexes"
    )
    p.add_argument("name", nargs="?")
    p.add_argument("--write", help="write all examples to this directory")
    p.set_defaults(fn=cmd_examples)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except GuardError as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return 3
    except (ComplexError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleError as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
