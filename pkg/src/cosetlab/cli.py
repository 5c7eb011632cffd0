"""Command-line front end.

Exit codes: 0 on success, 1 on input errors (bad syntax, unknown source,
unknown words), 2 when an enumeration runs out of cosets.  ``verify-paper``
exits 0 iff no case has status ``fail``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import analyzer as az
from . import corpus
from .enumerator import DEFAULT_MAX_COSETS, Strategy, enumerate_cosets, to_permutation_rep
from .permcalc import DEFAULT_ENUMERATION_CAP, EnumerationCapExceeded, PermGroup
from .presentation import (
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    builtin_presentation,
    format_word,
    parse_presentation,
    parse_word,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EXHAUSTED = 2

CONFIG_KEYS = {
    "max_cosets": int,
    "cap": int,
    "pair_bound": int,
    "samples": int,
    "seed": int,
    "strategy": str,
}

DEFAULTS = {
    "max_cosets": DEFAULT_MAX_COSETS,
    "cap": DEFAULT_ENUMERATION_CAP,
    "pair_bound": az.DEFAULT_PAIR_SCAN_BOUND,
    "samples": az.DEFAULT_SAMPLE_PAIRS,
    "seed": 0,
    "strategy": Strategy.HLT.value,
}


class InputError(Exception):
    pass


def read_config(path: str | Path) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, Any] = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise InputError(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise InputError(f"{path}:{n}: bad value for {key}: {value!r}") from None
    return out


def _settings(args: argparse.Namespace) -> dict[str, Any]:
    s = dict(DEFAULTS)
    if args.config:
        s.update(read_config(args.config))
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            s[key] = v
    return s


# --------------------------------------------------------------------------
# sources


def load_source(source: str) -> Presentation:
    """A presentation file, or a builtin key such as ``lemma2(8,9)``."""
    path = Path(source)
    if path.is_file():
        try:
            return parse_presentation(path.read_text(), name=path.stem)
        except PresentationSyntaxError as e:
            raise InputError(f"{source}:{e.line}:{e.column}: {e}") from None
        except PresentationError as e:
            raise InputError(f"{source}: {e}") from None
    try:
        return builtin_presentation(source)
    except KeyError:
        raise InputError(f"{source}: no such file or builtin presentation") from None


def _subgroup_words(p: Presentation, words: Sequence[str]):
    out = []
    for w in words:
        try:
            out.append(parse_word(w, p))
        except PresentationSyntaxError as e:
            raise InputError(f"--subgroup {w!r}: column {e.column}: {e}") from None
        except PresentationError as e:
            raise InputError(f"--subgroup {w!r}: {e}") from None
    return out


def _emit(doc: dict[str, Any]) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


# --------------------------------------------------------------------------
# parse


def cmd_parse(args: argparse.Namespace) -> int:
    p = load_source(args.source)
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": "parse", "source": args.source}
        if p.name:
            doc["name"] = p.name
        doc.update(
            generators=list(p.generators),
            relators=[format_word(r, p.generators) for r in p.relators],
            relator_lengths=[len(r) for r in p.relators],
            rendered=p.render(),
        )
        _emit(doc)
    else:
        print(p.render())
        print(f"{p.rank} generators, {len(p.relators)} relators")
    return EXIT_OK


# --------------------------------------------------------------------------
# enumerate


def _run_enumeration(p: Presentation, words, subgroup_text, s: dict[str, Any], dump: bool):
    try:
        strategy = Strategy(s["strategy"])
    except ValueError:
        raise InputError(f"unknown strategy {s['strategy']!r}") from None
    if s["max_cosets"] < 1:
        raise InputError("--max-cosets must be positive")
    r = enumerate_cosets(p, words, max_cosets=s["max_cosets"], strategy=strategy)
    section: dict[str, Any] = {
        "status": r.status.value,
        "strategy": strategy.value,
        "subgroup": list(subgroup_text),
        "max_cosets": s["max_cosets"],
    }
    if r.completed:
        section["index"] = r.index
    else:
        section["live_cosets"] = r.table.size
    section["stats"] = {
        "definitions": r.stats.definitions,
        "coincidences": r.stats.coincidences,
        "max_live": r.stats.max_live,
    }
    if dump and r.completed:
        section["table"] = r.table.dump()
    return r, section


def cmd_enumerate(args: argparse.Namespace) -> int:
    s = _settings(args)
    p = load_source(args.source)
    words = _subgroup_words(p, args.subgroup)
    r, section = _run_enumeration(p, words, args.subgroup, s, args.dump_table)
    if args.json:
        _emit({"schema_version": SCHEMA_VERSION, "command": "enumerate", "source": args.source, "enumeration": section})
    else:
        if r.completed:
            print(f"index {r.index}")
        else:
            print(f"exceeded {s['max_cosets']} cosets ({r.table.size} live)")
        st = section["stats"]
        print(f"strategy {section['strategy']}, {st['definitions']} definitions, {st['coincidences']} coincidences, max live {st['max_live']}")
        if "table" in section:
            print(section["table"], end="" if section["table"].endswith("\n") else "\n")
    if not r.completed:
        print(f"{args.source}: enumeration exceeded {s['max_cosets']} cosets", file=sys.stderr)
        return EXIT_EXHAUSTED
    return EXIT_OK


# --------------------------------------------------------------------------
# analyze


def _group_for(args, s, report) -> PermGroup | None:
    if args.source in corpus.NAMED_GROUPS:
        report["enumeration"] = None
        return corpus.named_group(args.source)
    p = load_source(args.source)
    words = _subgroup_words(p, args.subgroup)
    r, section = _run_enumeration(p, words, args.subgroup, s, False)
    report["enumeration"] = section
    if not r.completed:
        return None
    g = to_permutation_rep(r.table)
    bound = corpus.subgroup_order_bound(p, words)
    section["order_certified"] = bound is not None and g.order() == r.index * bound
    if not section["order_certified"]:
        report["notices"].append("permutation image may be a proper quotient; order is a lower bound")
    return g


def _section(report: dict[str, Any], name: str, fn):
    try:
        return fn()
    except EnumerationCapExceeded as e:
        report["notices"].append(f"{name}: {e}")
    except (az.NotTransitiveError, az.NotAbelianError, ValueError) as e:
        report["notices"].append(f"{name}: {e}")
    return None


def build_report(args: argparse.Namespace, s: dict[str, Any]) -> tuple[dict[str, Any], int]:
    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "command": "analyze", "source": args.source, "notices": []}
    g = _group_for(args, s, report)
    if report.get("enumeration") is None:
        report.pop("enumeration", None)
    if g is None:
        return report, EXIT_EXHAUSTED
    cap = s["cap"]
    report["order"] = g.order()
    spec = _section(report, "spectrum", lambda: az.order_spectrum(g, cap))
    if spec is not None:
        report["spectrum"] = {str(k): v for k, v in sorted(spec.counts.items())}
    report["abelian"] = g.is_abelian()
    exp = _section(report, "exponent", lambda: az.exponent_of(g, cap))
    if exp is not None:
        report["exponent"] = exp
    if args.identify:
        label = _section(report, "identify", lambda: az.identify_group(g, cap))
        if label is not None:
            report["identification"] = label
    if args.frobenius:
        rep = _section(report, "frobenius", lambda: az.frobenius_check(g, cap=cap))
        if rep is not None:
            report["frobenius"] = {"verdict": rep.verdict, "action_degree": g.degree, **{k: v for k, v in rep.to_dict().items() if k != "verdict"}}
    if args.check_h:
        h = _section(
            report,
            "hypothesis H",
            lambda: az.check_hypothesis_H(g, cap=cap, pair_bound=s["pair_bound"], samples=s["samples"], seed=s["seed"]),
        )
        if h is not None:
            report["hypothesis_h"] = h.to_dict()
            if h.mode == "probabilistic":
                report["seed"] = s["seed"]
    theorems = {}
    for flag, name, fn in (
        (args.theorem1, "theorem1", lambda: az.theorem1_decompose(g, cap=cap)),
        (args.theorem2, "theorem2", lambda: az.theorem2_classify(g, cap)),
        (args.corollary1, "corollary1", lambda: az.corollary1_check(g, cap)),
    ):
        if flag:
            v = _section(report, name, fn)
            if v is not None:
                theorems[name] = v.to_dict()
    if theorems:
        report["theorems"] = theorems
    if not report["notices"]:
        del report["notices"]
    return report, EXIT_OK


def _print_report(r: dict[str, Any]) -> None:
    print(f"source: {r['source']}")
    if "enumeration" in r:
        e = r["enumeration"]
        print(f"index: {e.get('index', '-')} ({e['status']}, {e['strategy']})")
    if "order" not in r:
        return
    print(f"order: {r['order']}")
    if "spectrum" in r:
        print("spectrum: " + ", ".join(f"{k}:{v}" for k, v in r["spectrum"].items()))
    print(f"abelian: {'yes' if r['abelian'] else 'no'}")
    if "exponent" in r:
        print(f"exponent: {r['exponent']}")
    if "identification" in r:
        print(f"identification: {r['identification']}")
    if "frobenius" in r:
        f = r["frobenius"]
        if f["verdict"]:
            print(f"frobenius: yes, kernel order {f['kernel_order']}, complement order {f['complement_order']}")
        else:
            print(f"frobenius: no ({f.get('witness', {}).get('reason', 'criterion fails')})")
    if "hypothesis_h" in r:
        h = r["hypothesis_h"]
        line = f"hypothesis H: {'pass' if h['holds'] else 'fail'} ({h['mode']}, {h['pairs_checked']} pairs)"
        w = h.get("witness")
        if w:
            line += f", witness orders ({w['order_x']},{w['order_y']},{w['order_xy']})"
        elif not h["h1_equal"]:
            line += f", primes {h['primes']}"
        print(line)
    for name, v in r.get("theorems", {}).items():
        if not v["applicable"]:
            print(f"{name}: not applicable; witness {v.get('witnesses', [{}])[0]}")
        elif "case" in v:
            print(f"{name}: case ({v['case']})")
        else:
            print(f"{name}: {'holds' if v['conclusion_holds'] else 'fails'} {v['data']}")
    for n in r.get("notices", []):
        print(f"notice: {n}")


def cmd_analyze(args: argparse.Namespace) -> int:
    s = _settings(args)
    report, code = build_report(args, s)
    if args.json:
        _emit(report)
    else:
        _print_report(report)
    if code == EXIT_EXHAUSTED:
        print(f"{args.source}: enumeration exceeded {s['max_cosets']} cosets", file=sys.stderr)
    return code


# --------------------------------------------------------------------------
# verify-paper


def cmd_verify_paper(args: argparse.Namespace) -> int:
    s = _settings(args)
    try:
        verdicts = corpus.run_suite(args.suite, cap=s["cap"])
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    statuses = {v.status for v in verdicts}
    overall = corpus.FAIL if corpus.FAIL in statuses else corpus.DISCREPANCY if corpus.DISCREPANCY in statuses else corpus.PASS
    if args.json:
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "verify-paper",
                "status": overall,
                "seed": s["seed"],
                "suites": [v.to_dict() for v in verdicts],
            }
        )
    else:
        for v in verdicts:
            print(f"suite {v.suite}: {len(v.cases)} cases, {v.status}")
            for c in v.cases:
                extra = ""
                if c.computed_order is not None:
                    extra = f" order {c.computed_order}"
                if c.computed_identification:
                    extra += f", {c.computed_identification}"
                marker = "!!" if c.status == corpus.DISCREPANCY else "  "
                print(f"{marker} {c.status:<17} {c.key}{extra} ({c.timings.get('total', 0):.2f}s)")
                for chk in c.checks:
                    if not chk.ok:
                        print(f"     mismatch {chk.name}: expected {chk.expected!r}, computed {chk.computed!r}")
                for n in c.notes:
                    print(f"     note: {n}")
        print(f"overall: {overall}")
    if overall == corpus.DISCREPANCY:
        print("paper-discrepancy: computed results differ from a recorded claim; see the notes above", file=sys.stderr)
    return EXIT_INPUT if overall == corpus.FAIL else EXIT_OK


# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="file of key=value defaults (flags win)")
    p.add_argument("--json", action="store_true", help="machine-readable output on stdout")


def _limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--subgroup", action="append", default=[], metavar="WORD", help="subgroup generator (repeatable)")
    p.add_argument("--max-cosets", dest="max_cosets", type=int, help=f"coset limit (default {DEFAULT_MAX_COSETS})")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], help="enumeration strategy (default hlt)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cosetlab", description="Coset enumeration and finite group checks.")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse and print a presentation")
    sp.add_argument("source", help="presentation file or builtin key")
    _common(sp)
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("enumerate", help="enumerate cosets of a subgroup")
    sp.add_argument("source")
    _common(sp)
    _limits(sp)
    sp.add_argument("--dump-table", action="store_true", help="print the standardized coset table")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("analyze", help="structure report for the permutation image")
    sp.add_argument("source", help="presentation file, builtin key, or named group such as symmetric(4)")
    _common(sp)
    _limits(sp)
    sp.add_argument("--identify", action="store_true")
    sp.add_argument("--check-h", dest="check_h", action="store_true", help="check hypothesis (H)")
    sp.add_argument("--theorem1", action="store_true")
    sp.add_argument("--theorem2", action="store_true")
    sp.add_argument("--corollary1", action="store_true")
    sp.add_argument("--frobenius", action="store_true", help="fixed-point criterion on the coset action")
    sp.add_argument("--cap", type=int, help=f"element enumeration cap (default {DEFAULT_ENUMERATION_CAP})")
    sp.add_argument("--pair-bound", dest="pair_bound", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify-paper", help="run the reproduction suites")
    sp.add_argument("--suite", default="all", help=f"one of {', '.join(corpus.SUITES)}, or all")
    sp.add_argument("--cap", type=int)
    sp.add_argument("--seed", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
