"""Batch front door: verify identity suites, compute envelopes, PBW and
Gauss-Manin data, and emit machine-readable reports.

    koszul verify {bar|cobar|perturbation|appendix|gm|all} FIXTURE [flags]
    koszul pbw FIXTURE [flags]
    koszul gm FIXTURE [flags]

FIXTURE is a JSON file (see fixtures.py for the schema) or a builtin name
such as sl2, heis3, l3, v2, v2d, qx.  Reports are deterministic for a given
(fixture, flags, seed): wall-clock timing goes to stderr only, the report's
timing block carries operation counters.  Exit codes: 0 pass, 1 identity
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .envelope import BRACKET_NORMALIZATION, envelope_ainf, pbw_iso_check
from .fixtures import FixtureError, resolve_fixture
from .suites import (
    normalization_report,
    suite_appendix,
    suite_bar,
    suite_cobar,
    suite_gm,
    suite_passes,
    suite_perturbation,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _coeff_str(c):
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


def _monomial(space, word):
    return [space.gen_names[i] for i in word]


def _element_json(space, elem):
    out = []
    for w in sorted(elem.terms, key=space.repr_word):
        out.append({"monomial": _monomial(space, w), "coeff": _coeff_str(elem.terms[w])})
    return out


def _write_report(report, out_path):
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _run_verify(args):
    space, linf = resolve_fixture(args.fixture)
    suites = {}
    wanted = ([args.suite] if args.suite != "all"
              else ["bar", "cobar", "perturbation", "appendix", "gm"])
    overall = True
    for name in wanted:
        if name == "bar":
            identities = suite_bar(space, args.weight, seed=args.seed)
        elif name == "cobar":
            identities = suite_cobar(space, args.weight, seed=args.seed)
        elif name == "perturbation":
            identities = suite_perturbation(linf, min(args.weight, 3), seed=args.seed)
        elif name == "appendix":
            if space.differential:
                if args.suite == "all":
                    suites[name] = {"skipped": "the appendix pairing needs a "
                                               "zero differential"}
                    continue
                raise FixtureError(
                    "the appendix suite needs a zero-differential fixture")
            identities = suite_appendix(space, min(args.weight, 3), seed=args.seed)
        elif name == "gm":
            if not linf.is_dg_lie():
                if args.suite == "all":
                    suites[name] = {"skipped": "the Gauss-Manin suite needs a "
                                               "dg Lie algebra"}
                    continue
                raise FixtureError("the Gauss-Manin suite needs a dg Lie fixture")
            identities, _, _ = suite_gm(linf, min(args.weight, 3), args.u_trunc,
                                        seed=args.seed)
        suites[name] = {
            "identities": identities,
            "pass": suite_passes(identities),
        }
        if name == "gm":
            suites[name]["normalization_report"] = normalization_report(identities)
        overall = overall and suites[name]["pass"]

    total_words = sum(e["words_checked"] for s in suites.values()
                      for e in s.get("identities", []))
    report = {
        "command": "verify",
        "suite": args.suite,
        "fixture": args.fixture,
        "weight_bound": args.weight,
        "u_bound": args.u_trunc,
        "seed": args.seed,
        "suites": suites,
        "pass": overall,
        "timing": {"identities": sum(len(s.get("identities", []))
                                     for s in suites.values()),
                   "words_checked_total": total_words},
    }
    _write_report(report, args.out)
    if not overall:
        first = next(e for s in suites.values() for e in s.get("identities", [])
                     if not e["residual_is_zero"] and not e.get("informational"))
        print(f"identity {first['id']} failed at {first['counterexample']}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def _run_pbw(args):
    space, linf = resolve_fixture(args.fixture)
    env = envelope_ainf(linf, args.weight)
    tables = env.m_tables(args.weight)
    m_json = {}
    for k, rows in sorted(tables.items()):
        entries = []
        for word, value in rows:
            entries.append({
                "inputs": [_monomial(env.S, a) for a in word],
                "output": _element_json(env.S, value),
            })
        entries.sort(key=lambda e: json.dumps(e["inputs"]))
        m_json[str(k)] = entries
    report = {
        "command": "pbw",
        "fixture": args.fixture,
        "weight_bound": args.weight,
        "bracket_normalization": _coeff_str(BRACKET_NORMALIZATION),
        "structure_maps": m_json,
        "timing": {"structure_constants": sum(len(v) for v in m_json.values())},
    }
    ok = True
    if linf.is_dg_lie():
        iso = pbw_iso_check(linf, args.weight)
        report["pbw_isomorphism"] = {
            "map": "x -> x/2 on generators",
            "well_defined": iso["well_defined"],
            "bijective": iso["bijective"],
            "relations": iso["relations"],
            "ranks": iso["ranks"],
        }
        ok = iso["well_defined"] and iso["bijective"]
    else:
        report["pbw_isomorphism"] = {"skipped": "not dg Lie"}
    report["pass"] = ok
    _write_report(report, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _run_gm(args):
    space, linf = resolve_fixture(args.fixture)
    if not linf.is_dg_lie():
        raise FixtureError("the Gauss-Manin pipeline needs a dg Lie fixture")
    identities, gm, data = suite_gm(linf, args.weight, args.u_trunc, seed=args.seed)
    theta = data["theta"]
    bar_SL = data["bar_SL"]
    table = {}
    for w in bar_SL.basis_upto(args.weight):
        value = theta.on_word(w)
        if value.is_zero():
            continue
        by_u = {}
        for (ow, k), c in value.terms.items():
            by_u.setdefault(k, []).append({
                "letters": [_monomial(gm.E, a) for a in ow],
                "coeff": _coeff_str(c),
            })
        for k, entries in sorted(by_u.items()):
            entries.sort(key=json.dumps)
            table.setdefault(str(k), []).append({
                "word": [_monomial(gm.S, a) for a in w],
                "value": entries,
            })
    for k in table:
        table[k].sort(key=lambda e: json.dumps(e["word"]))
    by_id = {e["id"]: e for e in identities}
    ok = suite_passes(identities)
    report = {
        "command": "gm",
        "fixture": args.fixture,
        "weight_bound": args.weight,
        "u_bound": args.u_trunc,
        "seed": args.seed,
        "bracket_normalization": _coeff_str(BRACKET_NORMALIZATION),
        "cochain_by_u_degree": table,
        "mc_residual_zero": by_id["gm.mc_residual"]["residual_is_zero"],
        "normalization_report": normalization_report(identities),
        "identities": identities,
        "pass": ok,
        "timing": {"identities": len(identities),
                   "words_checked_total": sum(e["words_checked"]
                                              for e in identities)},
    }
    _write_report(report, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _add_common_flags(sub_parser):
    sub_parser.add_argument("fixture", help="fixture JSON file or builtin name")
    sub_parser.add_argument("--weight", type=int, default=3,
                            help="weight truncation bound (default 3)")
    sub_parser.add_argument("--u-trunc", type=int, default=1, dest="u_trunc",
                            help="u-degree truncation for the Gauss-Manin suite")
    sub_parser.add_argument("--seed", type=int, default=0,
                            help="seed for the supplementary randomized layer")
    sub_parser.add_argument("--out", default=None, help="write the JSON report here")
    sub_parser.add_argument("--format", choices=["json"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="koszul",
        description="exact verification suites for bar/cobar constructions, "
                    "homological perturbation, enveloping structures and "
                    "Gauss-Manin twisting cochains")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an identity suite")
    p_verify.add_argument("suite",
                          choices=["bar", "cobar", "perturbation", "appendix",
                                   "gm", "all"])
    _add_common_flags(p_verify)

    p_pbw = sub.add_parser("pbw", help="enveloping structure constants and the "
                                       "PBW comparison")
    _add_common_flags(p_pbw)
    p_gm = sub.add_parser("gm", help="the Gauss-Manin twisting cochain and its "
                                     "residuals")
    _add_common_flags(p_gm)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        if args.command == "verify":
            code = _run_verify(args)
        elif args.command == "pbw":
            code = _run_pbw(args)
        else:
            code = _run_gm(args)
    except FixtureError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    print(f"elapsed: {time.monotonic() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
