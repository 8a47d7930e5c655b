"""Command-line front end.

Subcommands:
  rack     inspect a rack (properties, translation cycles, orbit profile,
           catalog classification)
  group    finite quotient of the enveloping group and the centralizer report
  nichols  graded dimensions / Hilbert factorization / integral verification
  search   bounded enumeration of indecomposable injective quandles
  verify   run the whole verification suite (desk or extended scale)

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap
exceeded.  Output is JSON unless ``--format text`` is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import braidorbits, catalog, envgroup, nichols, permgroup, rack, ydbraiding
from .exactnum import field_by_name
from .permgroup import GroupTooLarge
from .envgroup import EnumerationDidNotClose

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def load_config(path=None):
    """Caps and budgets, from an optional TOML or JSON file."""
    cfg = {
        "coset_cap": envgroup.DEFAULT_COSET_CAP,
        "closure_cap": permgroup.DEFAULT_CLOSURE_CAP,
        "enumeration_cap": rack.ENUMERATION_CAP,
        "budget_minutes": 30,
    }
    if path:
        with open(path, "rb") as fh:
            raw = fh.read()
        if path.endswith(".toml"):
            import tomllib

            data = tomllib.loads(raw.decode())
        else:
            data = json.loads(raw.decode())
        for key in cfg:
            if key in data:
                cfg[key] = data[key]
    return cfg


def _resolve_rack(name_or_file):
    try:
        return catalog.resolve(name_or_file)
    except (KeyError, FileNotFoundError, rack.RackError, ValueError) as exc:
        raise UsageError("cannot resolve rack %r: %s" % (name_or_file, exc))


def _emit(data, fmt):
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        _emit_text(data)


def _emit_text(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _short(v):
                print("%s%s:" % (pad, k))
                _emit_text(v, indent + 1)
            else:
                print("%s%s: %s" % (pad, k, v))
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v and not _short(v):
                _emit_text(v, indent)
                print()
            else:
                print("%s- %s" % (pad, v))
    else:
        print("%s%s" % (pad, data))


def _short(v):
    return isinstance(v, list) and all(isinstance(x, (int, str, float, bool)) for x in v)


# ---------------------------------------------------------------------------
# rack info


def cmd_rack_info(args):
    r = _resolve_rack(args.rack)
    props = rack.properties(r)
    prof = braidorbits.profile(r)
    info = {
        "name": r.name,
        "size": r.size,
        "table": [list(row) for row in r.table],
        "properties": props.as_dict(),
        "translation_cycle_structures": [
            "x".join(map(str, permgroup.cycle_structure(r.phi(i)))) or "1"
            for i in range(1, r.size + 1)
        ],
        "profile": json.loads(prof.to_json()),
    }
    if props.quandle and props.indecomposable and props.injective:
        info["catalog_match"] = braidorbits.classify(r)
    _emit(info, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# group report


def cmd_group(args):
    r = _resolve_rack(args.rack)
    if args.hat:
        grp = envgroup.hat_group(r)
    else:
        grp = envgroup.bar_group(r)
    data = {
        "rack": r.name,
        "quotient": "hat" if args.hat else "bar",
        "order": grp.order,
        "inner_group_order": r.inner_group().order,
    }
    if r.is_indecomposable():
        gens = catalog.CENTRALIZER_GENERATORS.get(r.name)
        rels = catalog.CENTRALIZER_RELATIONS.get(r.name, [])
        if gens:
            words = [ydbraiding.parse_generator_name(g) for g in gens]
            report = envgroup.centralizer_report(r, words, rels)
            data["centralizer_report"] = report.as_dict()
    if args.dump_presentation:
        data["presentation"] = envgroup.bar_presentation(r).dump().splitlines()
    _emit(data, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# nichols computations


def cmd_nichols(args):
    r = _resolve_rack(args.rack)
    field = field_by_name(args.field)
    spec = ydbraiding.CharacterSpec.parse(args.rho)
    c = ydbraiding.cocycle_from_character(r, spec, field)
    limit = args.limit
    heavy = r.name in ("Aff(7,3)", "Aff(7,5)", "C")
    if heavy and limit is None and not args.long_running:
        limit = {"C": 3}.get(r.name, 5)
    methods = ("deriv", "symmetrizer") if args.method == "both" else (args.method,)
    out = {"rack": r.name, "field": field.name, "character": spec.values}
    gb = None
    if "deriv" in methods:
        gb = nichols.graded_dims(c, limit=limit)
        out.update(json.loads(gb.to_json()))
    if "symmetrizer" in methods:
        cap = min(limit if limit is not None else nichols.SYMMETRIZER_DEGREE_GUARD,
                  nichols.SYMMETRIZER_DEGREE_GUARD)
        out["symmetrizer_ranks"] = [nichols.symmetrizer_rank(c, n) for n in range(cap + 1)]
    if args.integral:
        if gb is None or gb.truncated:
            raise UsageError("--integral needs a completed derivation computation")
        key = args.integral
        mono = catalog.INTEGRAL_MONOMIALS.get(key)
        if mono is None:
            mono = [int(x) for x in key.split(",")]
        chain = catalog.WITNESS_CHAINS.get(key, (None, None))[0]
        out["integral"] = {
            "monomial": mono,
            "verified": nichols.verify_integral(c, tuple(mono), engine=gb.engine, chain=chain),
        }
        if chain:
            out["integral"]["chain"] = chain
            out["integral"]["chain_value"] = str(nichols.evaluate_chain(mono, chain, c))
    _emit(out, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# quandle search


def cmd_search(args):
    found = rack.enumerate_quandles(args.max_size)
    rows = []
    for q in found:
        prof = braidorbits.profile(q)
        row = {
            "size": q.size,
            "table": [list(r_) for r_ in q.table],
            "S": "%d/%d" % (prof.S.numerator, prof.S.denominator),
            "condition": prof.condition_holds,
        }
        if prof.condition_holds:
            row["catalog_match"] = braidorbits.classify(q)
        if not args.condition_only or prof.condition_holds:
            rows.append(row)
    _emit({"max_size": args.max_size, "count": len(rows), "quandles": rows}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suite


class Claim:
    def __init__(self, claim_id, anchor, expected, thunk, long_running=False):
        self.claim_id = claim_id
        self.anchor = anchor
        self.expected = expected
        self.thunk = thunk
        self.long_running = long_running


def _verification_claims(scale):
    """The full claim list; see tests/test_acceptance.py for the same checks
    phrased as unit tests."""
    from .verifyplan import build_claims

    return build_claims(scale)


def cmd_verify(args):
    t_start = time.time()
    budget = args.budget_minutes * 60
    claims = _verification_claims(args.scale)
    records = []
    failures = 0
    for claim in claims:
        t0 = time.time()
        if args.scale == "desk" and claim.long_running:
            records.append({
                "claim": claim.claim_id, "anchor": claim.anchor,
                "expected": str(claim.expected), "computed": None,
                "status": "skipped-long-running", "seconds": 0.0,
            })
            continue
        try:
            computed, same = claim.thunk()
            status = "pass" if same else "fail"
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            computed, status = "error: %s" % exc, "fail"
        if status == "fail":
            failures += 1
        records.append({
            "claim": claim.claim_id, "anchor": claim.anchor,
            "expected": str(claim.expected), "computed": str(computed),
            "status": status, "seconds": round(time.time() - t0, 3),
        })
        if time.time() - t_start > budget:
            records.append({
                "claim": "budget", "anchor": "config", "expected": "<= %ds" % budget,
                "computed": "exceeded", "status": "fail", "seconds": 0.0,
            })
            failures += 1
            break
    report = {
        "scale": args.scale,
        "claims": records,
        "failures": failures,
        "seconds": round(time.time() - t_start, 3),
    }
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    for rec in records:
        print("%-42s %-22s %s" % (rec["claim"], rec["status"], rec.get("seconds", "")))
    print("verify: %d claims, %d failures, %.1fs"
          % (len(records), failures, report["seconds"]))
    if args.report:
        print("report written to %s" % args.report)
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nichols-lab",
        description="exact computation with finite racks and their Nichols algebras")
    ap.add_argument("--config", help="optional TOML/JSON config with caps and budgets")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("rack", help="rack inspection")
    psub = p.add_subparsers(dest="rack_command")
    pinfo = psub.add_parser("info", help="properties, orbit profile, classification")
    pinfo.add_argument("rack", help="catalog name, D<p>, Aff(q,a), or a JSON table file")
    pinfo.add_argument("--format", choices=("json", "text"), default="json")
    pinfo.set_defaults(func=cmd_rack_info)

    p = sub.add_parser("group", help="enveloping-group quotient report")
    p.add_argument("rack")
    p.add_argument("--hat", action="store_true", help="divide by x1^(2n) instead of x1^n")
    p.add_argument("--dump-presentation", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("nichols", help="graded dimensions and integrals")
    p.add_argument("rack")
    p.add_argument("--rho", required=True, help="character, e.g. x1=-1,x4=1")
    p.add_argument("--field", default="Q", help="Q or F<p>")
    p.add_argument("--limit", type=int, default=None, help="maximum degree")
    p.add_argument("--method", choices=("deriv", "symmetrizer", "both"), default="deriv")
    p.add_argument("--long-running", action="store_true",
                   help="allow the full heavy computations")
    p.add_argument("--integral", default=None,
                   help="catalog key or comma-separated letters to verify as integral")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_nichols)

    p = sub.add_parser("search", help="enumerate indecomposable injective quandles")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--condition-only", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--scale", choices=("desk", "extended"), default="desk")
    p.add_argument("--budget-minutes", type=int, default=30)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "func", None):
        ap.print_help()
        return EXIT_USAGE
    threads = os.environ.get("NICHOLSLAB_THREADS")
    if threads and not threads.isdigit():
        print("NICHOLSLAB_THREADS must be an integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.config:
            load_config(args.config)
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (GroupTooLarge, EnumerationDidNotClose, rack.RackError) as exc:
        if isinstance(exc, rack.RackError):
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_USAGE
        print("resource cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
