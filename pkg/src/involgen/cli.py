"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for invalid arguments.  ``--json`` prints the machine-readable record; the
text output is a rendering of the same record.
"""

import argparse
import json
import sys
from math import factorial

from involgen import rep
from involgen.certify import NotGeneratedByInvolutions, certify, select_branch
from involgen.permgrp import PermGroup, canonical_r
from involgen.quotient import MAX_GENUS, enumerate_generated, lickorish_mod, reduce_mod, sp_order
from involgen.surface import NoLantern, SurfaceParams, build_registry, lantern_config, lantern_identity_holds
from involgen.words import evaluate, flavor_generators, lantern_word

MAX_G = 12
MAX_B = 12

PARITY_NOTE = (
    "g = 3 with an odd number of punctures: the pair-swap involutions of the "
    "six-involution construction need fixed-point-free puncture pairings, which "
    "an odd b does not allow; this case only has the nine-involution sketch."
)


class UsageError(Exception):
    pass


def _genus(lo):
    def parse(text):
        v = int(text)
        if not lo <= v <= MAX_G:
            raise argparse.ArgumentTypeError(f"genus must be in {lo}..{MAX_G}")
        return v
    return parse


def _punctures(text):
    v = int(text)
    if not 0 <= v <= MAX_B:
        raise argparse.ArgumentTypeError(f"punctures must be in 0..{MAX_B}")
    return v


def _prime(text):
    v = int(text)
    if v not in (2, 3):
        raise argparse.ArgumentTypeError("prime must be 2 or 3")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the JSON record on stdout")

    ap = argparse.ArgumentParser(prog="involgen", parents=[common],
                                 description="Certify involution generating sets at homology level.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("relations", parents=[common], help="exact relation checks")
    s.add_argument("--genus", type=_genus(3), required=True)
    s.add_argument("--punctures", type=_punctures, default=0)

    s = sub.add_parser("lantern", parents=[common], help="lantern identity and lantern word")
    s.add_argument("--genus", type=_genus(3), required=True)
    s.add_argument("--punctures", type=_punctures, default=0)

    s = sub.add_parser("certify", parents=[common], help="build and verify a certificate")
    s.add_argument("--genus", type=_genus(1), required=True)
    s.add_argument("--punctures", type=_punctures, default=0)
    s.add_argument("--depth", type=int, default=10, help="depth of the delta-twist search")
    s.add_argument("--out", help="write the certificate JSON here")
    s.add_argument("--allow-sketch", action="store_true",
                   help="exit 0 for the sketch-only nine-involution branch")
    s.add_argument("--no-quotient", action="store_true")

    s = sub.add_parser("symgroup", parents=[common], help="orders of <r1,r2> and <r1,r2,r3>")
    s.add_argument("--punctures", type=_punctures, required=True)

    s = sub.add_parser("quotient", parents=[common], help="mod-p generation check")
    s.add_argument("--genus", type=_genus(1), required=True)
    s.add_argument("--prime", type=_prime, default=2)
    s.add_argument("--punctures", type=_punctures, default=0)

    s = sub.add_parser("dump-curves", parents=[common], help="homology classes of named curves")
    s.add_argument("--genus", type=_genus(1), required=True)
    s.add_argument("--punctures", type=_punctures, default=0)
    return ap


# --- commands: each returns (record, passed) ---------------------------------

def cmd_relations(args):
    p = SurfaceParams(args.genus, args.punctures)
    report = rep.check_relations(p)
    return {"params": {"g": p.g, "b": p.b}, "relations": report.to_json(),
            "ok": report.all_hold}, report.all_hold


def cmd_lantern(args):
    p = SurfaceParams(args.genus, args.punctures)
    cfg = lantern_config(p)
    identity = lantern_identity_holds(p, cfg)
    record = {"params": {"g": p.g, "b": p.b}, "m": cfg.m, "pivot": cfg.pivot,
              "boundary": [list(c.coords) for c in cfg.boundary],
              "interior": [list(c.coords) for c in cfg.interior],
              "identity": identity}
    ok = identity
    branch = select_branch(p.g, p.b)
    if branch.count != 9:
        gens = flavor_generators(p, branch.flavor)
        w = lantern_word(p, branch.flavor, gens)
        word_ok = rep.equal(evaluate(w, gens), rep.twist(p, cfg.boundary[3]))
        record["word"] = {"flavor": branch.flavor, "letters": w.to_json(), "ok": word_ok}
        ok = ok and word_ok
    record["ok"] = ok
    return record, ok


def cmd_certify(args):
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    branch = select_branch(args.genus, args.punctures)
    cert = certify(args.genus, args.punctures, depth=args.depth, quotient=not args.no_quotient)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(cert.dumps() + "\n")
    if branch.count == 9:
        print(PARITY_NOTE, file=sys.stderr)
        return cert.to_json(), bool(args.allow_sketch)
    return cert.to_json(), cert.verified


def cmd_symgroup(args):
    b = args.punctures
    r = [canonical_r(b, w) for w in ("r1", "r2", "r3")]
    dihedral = PermGroup(r[:2], b).order()
    full = PermGroup(r, b).order()
    ok = full == factorial(b) and (b < 3 or dihedral == 2 * b)
    return {"b": b, "order_r1r2": dihedral, "order_r1r2r3": full,
            "expected": [2 * b if b >= 3 else None, factorial(b)], "ok": ok}, ok


def cmd_quotient(args):
    g, q = args.genus, args.prime
    if g > MAX_GENUS or (q > 2 and g > 2):
        raise UsageError(f"quotient check skipped (size): Sp({2 * g},F_{q}) is out of enumeration range")
    expected = sp_order(g, q)
    lick = enumerate_generated(lickorish_mod(g, q), p=q)
    record = {"g": g, "p": q, "expected": expected,
              "lickorish": {"order": lick.result, "ok": lick.result == expected}}
    ok = record["lickorish"]["ok"]
    if g == 3 and q == 2:
        branch = select_branch(g, args.punctures)
        if branch.count != 9:
            gens = flavor_generators(SurfaceParams(g, args.punctures), branch.flavor)
            res = enumerate_generated([reduce_mod(e, g, q) for e in gens.values()], p=q)
            record["involutions"] = {"b": args.punctures, "names": list(gens),
                                     "order": res.result, "ok": res.result == expected}
            ok = ok and record["involutions"]["ok"]
    record["ok"] = ok
    return record, ok


def cmd_dump_curves(args):
    p = SurfaceParams(args.genus, args.punctures)
    return {"params": {"g": p.g, "b": p.b}, "curves": build_registry(p).as_table()}, True


COMMANDS = {
    "relations": cmd_relations,
    "lantern": cmd_lantern,
    "certify": cmd_certify,
    "symgroup": cmd_symgroup,
    "quotient": cmd_quotient,
    "dump-curves": cmd_dump_curves,
}


def _render(command, record):
    if command == "certify":
        lines = [f"g={record['params']['g']} b={record['params']['b']} "
                 f"branch {record['branch']['count']} ({record['branch']['case']})",
                 f"verdict: {record['verdict']}"]
        if record.get("reason"):
            lines.append(f"reason: {record['reason']}")
        lines += [f"  FAILED {f}" for f in record.get("failures", [])]
        if record["coverage"]:
            n_ok = sum(c["ok"] for c in record["coverage"])
            lines.append(f"coverage: {n_ok}/{len(record['coverage'])} twists")
        q = record["quotient"]
        lines.append(f"quotient: {q.get('skipped') or q.get('order')}")
        lines.append(f"sym: {record['sym']}")
        return "\n".join(lines)
    if command == "relations":
        bad = [e for e in record["relations"] if not e["holds"]]
        head = f"{len(record['relations']) - len(bad)}/{len(record['relations'])} relations hold"
        return "\n".join([head] + [f"  FAILED {e['relation']}: {e['instance']}" for e in bad])
    if command == "dump-curves":
        return "\n".join(f"{c['curve']:>8}  {c['class']}" for c in record["curves"])
    return "\n".join(f"{k}: {v}" for k, v in record.items())


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        record, passed = COMMANDS[args.command](args)
    except (UsageError, NotGeneratedByInvolutions, NoLantern, rep.BranchNotAvailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "json", False):
        print(json.dumps(record, indent=2))
    else:
        print(_render(args.command, record))
    return 0 if passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
