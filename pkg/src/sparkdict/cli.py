"""Command-line entry point: build, verify, certify, spark, recover, export."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import certify as cert_mod
from . import construct, field, oracle, recover

DEFAULT_GRID = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    r: int | None = None
    t: int | None = None
    k_max: int | None = None
    trials: int | None = None
    seed: int | None = None
    threads: int = 1
    output_path: str | None = None
    format: str = "json"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _spec(args) -> field.FieldSpec:
    modulus = int(args.modulus, 16) if getattr(args, "modulus", None) else None
    return field.build_field(args.r, args.t, modulus)


def cmd_build(args) -> int:
    spec = _spec(args)
    D = construct.build_dictionary(spec)
    if args.format == "text":
        _emit(f"{D.rows} x {len(D)} dictionary, modulus {spec.modulus:#x}, scale 2^{D.scale_log2}\n", args.out)
        return EXIT_OK
    prefix = Path(args.out or f"dictionary_r{spec.r}_t{spec.t}")
    if args.format == "json":
        doc = dict(D.manifest(), matrix=D.matrix.tolist())
        prefix.with_suffix(".json").write_text(dumps(doc))
    else:
        prefix.with_suffix(".csv").write_text(D.to_csv())
        prefix.with_suffix(".json").write_text(construct.manifest_json(D))
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = DEFAULT_GRID if args.all else [(args.r, args.t)]
    results, failed = [], False
    for r, t in grid:
        spec = field.build_field(r, t)
        checks = cert_mod.lemma_suite(spec)
        failed |= not all(c.passed for c in checks)
        results.append({"field": spec.to_json(), "checks": [c.to_json() for c in checks]})
    if args.format == "json":
        _emit(dumps(results), args.out)
    else:
        lines = []
        for res in results:
            f = res["field"]
            for c in res["checks"]:
                status = "PASS" if c["pass"] else "FAIL"
                lines.append(f"r={f['r']} t={f['t']} {c['name']:<14} {status}  {c['detail']}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def _certificate_text(c: cert_mod.SparkCertificate) -> str:
    lines = [
        f"field n={c.spec.n} r={c.spec.r} t={c.spec.t} modulus={c.spec.modulus:#x}",
        f"coherence {c.coherence}",
        f"bounds DE={c.bound_donoho_elad} EB={c.bound_elad_bruckstein} (informational) GN={c.bound_gribonval_nielsen}",
        f"witness size {c.upper_bound}",
        f"concluded spark {c.concluded_spark}",
    ]
    lines += [f"  {'PASS' if ch.passed else 'FAIL'} {ch.name}: {ch.detail}" for ch in c.check_log]
    return "\n".join(lines) + "\n"


def cmd_certify(args) -> int:
    c = cert_mod.certify(_spec(args))
    _emit(_certificate_text(c) if args.format == "text" else c.dumps(), args.out)
    return EXIT_OK if c.all_passed and c.concluded else EXIT_FAIL


def cmd_spark(args) -> int:
    spec = _spec(args)
    D = construct.build_dictionary(spec)
    last = [time.monotonic()]

    def progress(k, branch, examined):
        now = time.monotonic()
        if args.progress and now - last[0] >= args.progress:
            last[0] = now
            print(f"k={k} branch {branch}/{len(D) - k} examined {examined}", file=sys.stderr, flush=True)

    report = oracle.brute_spark(D, args.k_max, prune=not args.no_prune, threads=args.threads,
                                progress=progress)
    if args.format == "text":
        found = f"spark {report.spark}" if report.spark else f"spark >= {report.lower_bound}"
        _emit(f"{found}; {report.subsets_examined} subsets examined, "
              f"{report.subsets_skipped} skipped by the coherence bound; backend {report.backend}\n",
              args.out)
    else:
        _emit(dumps(report.to_json()), args.out)
    if report.witness is not None:
        ok, _ = cert_mod.verify_witness(D, report.witness)
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_recover(args) -> int:
    rep = recover.uniqueness_demo(_spec(args), args.trials, args.seed)
    if args.format == "text":
        _emit(f"k={rep.k}: {rep.successes}/{rep.trials} exact recoveries (seed {rep.seed}); "
              f"collision same_vector={rep.collision['same_vector']}\n", args.out)
    else:
        _emit(dumps(rep.to_json()), args.out)
    ok = rep.successes == rep.trials and rep.collision["same_vector"]
    return EXIT_OK if ok else EXIT_FAIL


def _load_artifact(path: Path):
    """Return (kind, object) for a dictionary CSV/JSON, certificate or report JSON."""
    if path.suffix == ".csv":
        manifest = json.loads(path.with_suffix(".json").read_text())
        return "dictionary", construct.ScaledDictionary.from_csv(path.read_text(), manifest)
    data = json.loads(path.read_text())
    if isinstance(data, dict) and "column_labels" in data:
        if "matrix" in data:
            import numpy as np

            spec = field.FieldSpec.from_json(data["spec"])
            labels = [construct.ColumnLabel.parse(s) for s in data["column_labels"]]
            return "dictionary", construct.ScaledDictionary(spec, labels, np.array(data["matrix"], dtype=np.int64))
        return "dictionary", construct.ScaledDictionary.from_csv(path.with_suffix(".csv").read_text(), data)
    if isinstance(data, dict) and "concluded_spark" in data:
        return "certificate", cert_mod.SparkCertificate.from_json(data)
    return "report", data


def cmd_export(args) -> int:
    kind, obj = _load_artifact(Path(args.input))
    fmt = args.format
    if kind == "dictionary":
        if fmt == "csv":
            if not args.out:
                sys.stdout.write(obj.to_csv())
            else:
                Path(args.out).with_suffix(".csv").write_text(obj.to_csv())
                Path(args.out).with_suffix(".json").write_text(construct.manifest_json(obj))
        elif fmt == "json":
            _emit(dumps(dict(obj.manifest(), matrix=obj.matrix.tolist())), args.out)
        else:
            _emit(f"{obj.rows} x {len(obj)} dictionary, modulus {obj.spec.modulus:#x}\n", args.out)
    elif kind == "certificate":
        if fmt == "csv":
            print("sparkdict: error: certificates have no CSV form", file=sys.stderr)
            return EXIT_USAGE
        _emit(_certificate_text(obj) if fmt == "text" else obj.dumps(), args.out)
    else:
        if fmt == "csv":
            print("sparkdict: error: reports have no CSV form", file=sys.stderr)
            return EXIT_USAGE
        text = dumps(obj) if fmt == "json" else "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n"
                                                        for k, v in sorted(obj.items()))
        _emit(text, args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparkdict", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default, needs_rt=True):
        if needs_rt:
            p.add_argument("-r", type=int, required=True)
            p.add_argument("-t", type=int, required=True)
            p.add_argument("--modulus", help="irreducible modulus in hex (default: smallest)")
        p.add_argument("--format", choices=["json", "csv", "text"], default=fmt_default)
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--threads", type=int, default=1)

    common(sub.add_parser("build", help="write the dictionary as CSV + JSON manifest"), "csv")
    p = sub.add_parser("verify", help="run the lemma checks")
    p.add_argument("-r", type=int)
    p.add_argument("-t", type=int)
    p.add_argument("--all", action="store_true", help="run the default (r, t) grid")
    common(p, "text", needs_rt=False)
    common(sub.add_parser("certify", help="write a spark certificate"), "json")
    p = sub.add_parser("spark", help="brute-force spark search")
    common(p, "json")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--no-prune", action="store_true", help="do not skip levels below the coherence bound")
    p.add_argument("--progress", type=float, default=0.0, metavar="SECONDS",
                   help="print progress to stderr at this interval")
    p = sub.add_parser("recover", help="exhaustive l0 uniqueness demo")
    common(p, "json")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("export", help="re-serialize an existing artifact")
    p.add_argument("--in", dest="input", required=True)
    common(p, "json", needs_rt=False)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "verify" and not args.all and (args.r is None or args.t is None):
        parser.error("verify needs -r and -t, or --all")
    for name in ("r", "t"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            parser.error(f"-{name} must be a positive integer")
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.command == "spark" and args.k_max < 2:
        parser.error("--k-max must be at least 2")
    if args.command == "recover" and args.trials < 0:
        parser.error("--trials must be nonnegative")
    handlers = {
        "build": cmd_build, "verify": cmd_verify, "certify": cmd_certify,
        "spark": cmd_spark, "recover": cmd_recover, "export": cmd_export,
    }
    try:
        return handlers[args.command](args)
    except (field.FieldSizeError, ValueError) as exc:
        print(f"sparkdict: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
