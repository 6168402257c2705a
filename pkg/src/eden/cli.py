"""Command-line interface: ``eden <group> <command> ...``.

Reports are JSON documents carrying ``version`` and ``kind`` fields (see
``schema/report.schema.json``). Exit codes: 0 ok (negative verdicts included),
2 invalid input, 3 capacity, 4 inconclusive, 5 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from collections import Counter
from pathlib import Path

from eden import automaton as ca
from eden import entropy as ent
from eden import principal as pr
from eden import specification as spec
from eden.errors import EdenError, InvalidInput, InvariantBreach
from eden.lattice import Pattern, Window
from eden.laurent import parse_poly
from eden.subshift import count_language, load_shift

REPORT_VERSION = 1
SCHEMA_PATH = Path(__file__).parent / "schema" / "report.schema.json"


def parse_real(text: str) -> float:
    """Accept plain numbers and powers such as ``2^-6``."""
    m = re.fullmatch(r"\s*(-?\d+(?:\.\d+)?)\s*\^\s*(-?\d+)\s*", text)
    try:
        return float(m.group(1)) ** int(m.group(2)) if m else float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _report(kind: str, body: dict) -> dict:
    return {"version": REPORT_VERSION, "kind": kind, **body}


def _emit(args, doc: dict, text: str | None = None):
    """Write the JSON document (or the human summary when one is given and --json is off)."""
    if getattr(args, "timing", False) and "timing" not in doc:
        doc["timing"] = round(time.perf_counter() - args._t0, 6)
    out = json.dumps(doc, indent=2, sort_keys=False) + "\n" if text is None or args.json else text
    target = getattr(args, "out", None)
    if target and args.command != "survey":
        _write(target, out)
    else:
        sys.stdout.write(out)


def _write(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InvalidInput(f"cannot write {path}: {exc.strerror}") from None


# -- ca ----------------------------------------------------------------------------------


def cmd_ca_classify(args):
    domain = load_shift(args.domain) if args.domain else None
    T = ca.load_rule(args.rule, domain)
    subject = args.rule
    domain_name = T.domain.name or args.domain or "full"
    if T.dim != 1:
        if not args.bounded:
            raise InvalidInput("two-dimensional codes have no decision procedure; rerun with --bounded")
        goe = ca.bounded_goe_search(T, args.max_side)
        pair = ca.bounded_erasable_search(T, max(1, args.max_side - 1))
        doc = _report("classify", {
            "subject": subject, "domain": domain_name,
            "verdicts": {"surjective": "inconclusive", "pre_injective": "inconclusive",
                         "injective": "inconclusive"},
            "witnesses": {"goe": None, "erasable": None, "collision": None},
            "flags": [],
            "bounded_search": {
                "max_side": args.max_side,
                "goe_pattern": goe.text if goe is not None else None,
                "erasable_pair": [pair[0].text, pair[1].text] if pair else None,
            },
        })
        _emit(args, doc, _bounded_text(doc))
        return 0
    report = ca.classify(T, parallel=True)
    body = report.to_dict(with_timing=args.timing)
    body.update(subject=subject, domain=domain_name)
    doc = _report("classify", body)
    doc["replay"] = _replays(T, report, args.seed)
    _emit(args, doc, _classify_text(doc))
    return 0


def _replays(T, report, seed: int) -> dict:
    """Independent re-checks of every certified negative witness."""
    out = {}
    if report.goe is not None:
        ok = ca.verify_goe(T, report.goe.pattern)
        if not ok:
            raise InvariantBreach(f"GOE witness {report.goe.pattern.text} failed its brute-force replay")
        out["goe_bruteforce"] = "passed"
    if report.erasable is not None:
        trials = 5
        equal = ca.replay_erasable(T, report.erasable, trials, seed)
        if equal != trials:
            raise InvariantBreach("erasable pair changed the image in a random context")
        out["erasable_random_contexts"] = f"{equal}/{trials}"
    return out


def _classify_text(doc: dict) -> str:
    v = doc["verdicts"]
    lines = [f"{doc['subject']} on {doc['domain']}:",
             f"  surjective     {v['surjective']}",
             f"  pre-injective  {v['pre_injective']}",
             f"  injective      {v['injective']}"]
    w = doc["witnesses"]
    if w["goe"]:
        lines.append(f"  Garden-of-Eden pattern: {w['goe']}")
    if w["erasable"]:
        e = w["erasable"]
        lines.append(f"  mutually erasable: {e['w1']} / {e['w2']} on cells {e['window']}")
    if w["collision"]:
        c = w["collision"]
        lines.append("  collision: " + " | ".join(f"{k}={'/'.join(c[k])}" for k in ("left", "middle", "right")))
    if doc["flags"]:
        lines.append("  flags: " + ", ".join(doc["flags"]))
    return "\n".join(lines) + "\n"


def _bounded_text(doc: dict) -> str:
    b = doc["bounded_search"]
    return (f"{doc['subject']} (bounded search, side <= {b['max_side']}; no verdicts in two dimensions)\n"
            f"  Garden-of-Eden pattern found: {b['goe_pattern'] or 'none within bound'}\n"
            f"  erasable pair found: {'/'.join(b['erasable_pair']) if b['erasable_pair'] else 'none within bound'}\n")


def _is_covered(X) -> bool:
    """Instances where both theorems are predicted: full shifts and certified strongly irreducible SFTs."""
    if X.kind == "full":
        return True
    if X.kind != "sft" or X.dim != 1:
        return False
    try:
        return spec.strong_irreducibility_gap(X) is not None
    except EdenError:
        return False


def cmd_ca_survey(args):
    X = load_shift(args.shift)
    if not args.out:
        raise InvalidInput("survey needs --out <report.tsv>")
    if args.radius < 0:
        raise InvalidInput("radius must be nonnegative")
    N = Window.interval(-args.radius, args.radius)
    rows, combos, flags, replays = [], Counter(), Counter(), Counter()
    tri = {True: "yes", False: "no", None: "inconclusive"}
    for T in ca.enumerate_endomorphisms(X, N):
        r = ca.classify(T, parallel=False)
        combos[f"surjective={tri[r.surjective]},pre_injective={tri[r.pre_injective]},"
               f"injective={tri[r.injective]}"] += 1
        for fl in r.flags:
            flags[fl] += 1
        if r.flags:  # every reported violation must survive the replays
            _replays(T, r, args.seed)
            replays["passed"] += 1
        rows.append("\t".join([T.rule_id, tri[r.surjective], tri[r.pre_injective], tri[r.injective],
                               ",".join(r.flags), r.witness_text]))
    header = "rule-id\tsurjective\tpre_injective\tinjective\tflags\twitness\n"
    _write(args.out, header + "".join(row + "\n" for row in rows))
    covered = _is_covered(X)
    violations = sum(flags.values()) if covered else 0
    doc = _report("survey", {
        "shift": X.name or args.shift, "radius": args.radius, "rows": len(rows),
        "combinations": dict(sorted(combos.items())), "flags": dict(sorted(flags.items())),
        "covered": covered, "theorem_violations": violations,
        "witness_replays": dict(replays), "out": str(args.out),
    })
    text = (f"{len(rows)} endomorphisms of {doc['shift']} at radius {args.radius} -> {args.out}\n"
            + "".join(f"  {n:6d}  {c}\n" for c, n in doc["combinations"].items())
            + (f"  flags: {doc['flags']} ({'theorem violation' if covered else 'reported, not covered'})\n"
               if flags else "  no flags\n"))
    _emit(args, doc, text)
    return InvariantBreach.exit_code if violations else 0


# -- shift ----------------------------------------------------------------------------------


def cmd_shift_info(args):
    X = load_shift(args.shift)
    counts = []
    for n in range(1, args.N + 1):
        w = Window.interval(0, n - 1) if X.dim == 1 else Window.box((0,) * X.dim, (n - 1,) * X.dim)
        counts.append(count_language(X, w))
    body = {"shift": X.name or args.shift, "kind_of_shift": X.kind, "dim": X.dim, "alphabet": X.k,
            "counts": counts}
    if X.dim == 1:
        body["presentation_vertices"] = X.presentation().n_vertices
    if X.dim > 1:
        body["note"] = "counts of n x n boxes (strip approximation of the language)"
    doc = _report("shift_info", body)
    text = (f"{body['shift']}: {X.kind}, dim {X.dim}, alphabet {X.k}\n"
            + "".join(f"  n={n:2d}  {c}\n" for n, c in enumerate(counts, 1)))
    _emit(args, doc, text)
    return 0


# -- spec ----------------------------------------------------------------------------------


def cmd_spec_gap(args):
    X = load_shift(args.shift)
    cert = spec.strong_irreducibility_gap(X, args.max_gap, args.len)
    if cert is not None:
        body = cert.to_dict()
    else:
        fails = spec.gap_failures(X, args.max_gap)
        _, _, checked, _ = spec._gap_analysis(X)
        body = {"gap": None, "checked_length": checked, "witness_policy": "exact",
                "failures": [list(f) for f in fails], "refutations": []}
    _emit(args, _report("spec_gap", {"shift": X.name or args.shift, **body}))
    return 0


def cmd_spec_wspec(args):
    X = load_shift(args.shift)
    holds = spec.weak_specification_check(X, args.eps, args.gap, args.box_bound, args.placement_bound,
                                          args.max_boxes)
    _emit(args, _report("spec_wspec", {"shift": X.name or args.shift, "eps": args.eps, "gap": args.gap,
                                       "holds": holds, "box_bound": args.box_bound,
                                       "placement_bound": args.placement_bound, "max_boxes": args.max_boxes}))
    return 0


def cmd_spec_independence(args):
    X = load_shift(args.shift)
    cylinders = [Pattern.word([int(ch) for ch in w]) for w in args.cylinders.split(",") if w]
    report = spec.independence_density(X, cylinders, Window.interval(-args.n, args.n))
    body = {"shift": X.name or args.shift, **report.to_dict()}
    try:
        cert = spec.strong_irreducibility_gap(X)
    except EdenError:
        cert = None
    if cert is not None:
        bound = spec.ie_density_bound(X, cylinders, cert)
        body["guaranteed_lower_bound"] = f"{bound.numerator}/{bound.denominator}"
    _emit(args, _report("spec_independence", body))
    return 0


# -- entropy ---------------------------------------------------------------------------------


def cmd_entropy(args):
    Y = load_shift(args.shift)
    if args.gap_bound:
        Z = load_shift(args.gap_bound)
        details = ent.gap_bound_details(Y, Z, args.eta)
        exact_gap = ent.entropy_exact_1d(Y).value - ent.entropy_exact_1d(Z).value
        doc = _report("entropy_gap", {"Y": Y.name, "Z": Z.name, "exact_gap": exact_gap, **details.to_dict()})
    elif args.estimate is not None:
        value = ent.entropy_estimate(Y, args.estimate, args.eps, args.kind)
        doc = _report("entropy", {"shift": Y.name or args.shift, **value.to_dict()})
    else:
        doc = _report("entropy", {"shift": Y.name or args.shift, **ent.entropy_exact_1d(Y).to_dict()})
    _emit(args, doc)
    return 0


# -- principal ---------------------------------------------------------------------------------


def cmd_principal_check(args):
    f = parse_poly(args.poly)
    inv = pr.is_l1_invertible(f)
    doc = _report("principal_check", {"poly": f.pretty(), **inv.to_dict(),
                                      "unit_circle_roots": pr.unit_circle_root_count(f)})
    _emit(args, doc)
    return 0


def cmd_principal_homoclinic(args):
    f = parse_poly(args.poly)
    w = pr.l1_inverse(f, args.tol)
    point = pr.fundamental_homoclinic(f, args.tol, args.range)
    body = {"poly": f.pretty(), **w.to_dict(), "summability": point.summability(),
            "relation_residual": point.relation_residual, "range": [point.start, point.stop - 1],
            "values": [float(v) for v in point.values]}
    _emit(args, _report("principal_homoclinic", body))
    return 0


def load_targets(f, path: str):
    """targets.json: {"targets": [{"window": [lo, hi], "generator": {"k": c}} | {"window", "start", "values"}]}."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None
    items = data.get("targets") if isinstance(data, dict) else data
    if not isinstance(items, list) or not items:
        raise InvalidInput(f"{path} must list at least one target")
    targets = []
    for item in items:
        try:
            lo, hi = (int(v) for v in item["window"])
            if "generator" in item:
                point = pr.point_from_generator(f, item["generator"], lo - 64, hi + 64)
            else:
                import numpy as np

                point = pr.PrincipalPoint(f, int(item.get("start", lo)), np.asarray(item["values"], float))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad target {item!r}: {exc}") from None
        targets.append(((lo, hi), point))
    return targets


def cmd_principal_glue(args):
    f = parse_poly(args.poly)
    targets = load_targets(f, args.targets)
    result = pr.glue_specification(f, targets, args.eps)
    body = {"poly": f.pretty(), "eps": args.eps, **result.to_dict()}
    if not args.full:
        body.pop("point")
        body["generator"] = {str(k): int(v) for k, v in sorted(result.point.generator.items())}
    _emit(args, _report("principal_glue", body))
    return 0


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    parser = argparse.ArgumentParser(prog="eden", description="Garden of Eden toolkit for subshifts and algebraic actions")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("ca", help="cellular automata")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="surjectivity / pre-injectivity / injectivity with witnesses")
    p.add_argument("rule", help="eca:<0..255> or a rule file")
    p.add_argument("--domain", help="domain subshift (corpus name or file); default: full shift")
    p.add_argument("--bounded", action="store_true", help="run the bounded searches (required in two dimensions)")
    p.add_argument("--max-side", type=int, default=2, help="side bound for --bounded searches")
    p.add_argument("--seed", type=int, default=0, help="seed for the witness replays")
    p.set_defaults(func=cmd_ca_classify)
    p = sub.add_parser("survey", parents=[common], help="classify every endomorphism of a shift at a radius")
    p.add_argument("--shift", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ca_survey)

    g = groups.add_parser("shift", help="subshifts")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("info", parents=[common], help="language counts for n = 1..N")
    p.add_argument("shift")
    p.add_argument("-N", type=int, default=8)
    p.set_defaults(func=cmd_shift_info)

    g = groups.add_parser("spec", help="strong irreducibility, weak specification, independence")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gap", parents=[common], help="strong-irreducibility gap certificate")
    p.add_argument("shift")
    p.add_argument("--max-gap", type=int, default=16)
    p.add_argument("--len", type=int, default=64, help="longest word length the certificate may rely on")
    p.set_defaults(func=cmd_spec_gap)
    p = sub.add_parser("wspec", parents=[common], help="exhaustive weak-specification check")
    p.add_argument("shift")
    p.add_argument("--eps", type=parse_real, default=1.0)
    p.add_argument("--gap", type=int, required=True)
    p.add_argument("--box-bound", type=int, default=3)
    p.add_argument("--placement-bound", type=int, default=3)
    p.add_argument("--max-boxes", type=int, default=3)
    p.set_defaults(func=cmd_spec_wspec)
    p = sub.add_parser("independence", parents=[common], help="exact independence density on [-n, n]")
    p.add_argument("shift")
    p.add_argument("--cylinders", default="0,1", help="comma-separated words, each a cylinder at offset 0")
    p.add_argument("-n", type=int, default=3)
    p.set_defaults(func=cmd_spec_independence)

    p = groups.add_parser("entropy", parents=[common], help="topological entropy")
    p.add_argument("shift")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="Perron enclosure (default)")
    mode.add_argument("--estimate", type=int, metavar="n", help="(1/|F_n|) log sep(X, F_n, eps)")
    mode.add_argument("--gap-bound", metavar="Z", help="entropy-gap lower bound for a subsystem Z")
    p.add_argument("--eps", type=parse_real, default=1.0)
    p.add_argument("--eta", type=parse_real)
    p.add_argument("--kind", choices=["sep", "spn"], default="sep")
    p.set_defaults(func=cmd_entropy, command="entropy")

    g = groups.add_parser("principal", help="principal algebraic actions")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="l1-invertibility of f")
    p.add_argument("poly")
    p.set_defaults(func=cmd_principal_check)
    p = sub.add_parser("homoclinic", parents=[common], help="fundamental summable homoclinic point")
    p.add_argument("poly")
    p.add_argument("--tol", type=parse_real, default=1e-9)
    p.add_argument("--range", type=int, default=20, metavar="M", help="report x_n for |n| <= M")
    p.set_defaults(func=cmd_principal_homoclinic)
    p = sub.add_parser("glue", parents=[common], help="glue targets into one point (weak specification)")
    p.add_argument("poly")
    p.add_argument("targets", help="targets JSON file")
    p.add_argument("--eps", type=parse_real, default=2.0 ** -6)
    p.add_argument("--full", action="store_true", help="include the glued point's values")
    p.set_defaults(func=cmd_principal_glue)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except EdenError as exc:
        print(f"eden: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
