"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a mathematical check failed,
2 bad input (unreadable or malformed spec, bad prime, missing descriptor).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .construct import AbelianCoverSpec, SpecError, build
from .ffcheck import BadPrimeError, run_oracle, _check_prime
from .multipoly import format
from .rank import dihedral_jacobian_group, predict_mw_group
from .specfile import load_spec
from .verify import FAIL, full_verification

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _exponent_table(rows: list[dict]) -> list[str]:
    out = ["layer  n   a (closed)  c (closed)  t (closed)  agrees"]
    for r in rows:
        out.append(f"{r['layer']:<6} {r['n']:<3} {r['a']:>2} ({r['a_closed']:>2})   {r['c']:>2} ({r['c_closed']:>2})"
                   f"   {r['t']:>2} ({r['t_closed']:>2})   {'yes' if r['agrees'] else 'NO'}")
    return out


def _variety_text(title: str, d: dict) -> list[str]:
    lines = [f"[{title}] {d['name']}  variables: {', '.join(d['variables'])}"]
    if d.get("constants"):
        lines.append(f"  constants: {', '.join(d['constants'])}")
    if not d["equations"]:
        lines.append("  (no equations)")
    lines += [f"  {e} = 0" for e in d["equations"]]
    return lines


def build_text(data: dict) -> str:
    lines = [f"spec: {json.dumps(data['spec'], sort_keys=True)}", ""]
    lines += _variety_text("cover", data["cover"]) + [""]
    lines += _variety_text("product", data["product"]) + [""]
    lines += _variety_text("quotient", data["quotient"])
    for k, v in data["quotient"]["generators"].items():
        lines.append(f"  {k} := {v}")
    lines.append("")
    if data["spec"]["m"] < 2:
        lines.append("[twist] empty: m = 1 gives no twist (the extension is trivial)")
    else:
        lines += _variety_text("twist", data["twist"])
        lines += [f"  instance: {e} = 0" for e in data["twist"]["instances"]]
    lines.append("")
    lines.append("[points]")
    for p in data["points"]:
        lines.append(f"  {p['label']} = ({', '.join(p['coordinates'])})")
    lines.append("")
    lines += ["[exponents]"] + _exponent_table(data["exponents"])
    if data["notes"]:
        lines += ["", "[notes]"] + [f"  - {n}" for n in data["notes"]]
    return "\n".join(lines) + "\n"


def report_text(rep: dict) -> str:
    lines = [f"spec: {json.dumps(rep['spec'], sort_keys=True)}", f"overall: {rep['overall'].upper()}", ""]
    if rep["exponents"]:
        lines += ["[exponents]"] + _exponent_table(rep["exponents"]) + [""]
    lines.append("[checks]")
    for c in rep["checks"]:
        lines.append(f"  {c['status'].upper():<7} {c['name']}")
        if c["witness"] is not None:
            lines.append(f"          witness: {c['witness']}")
        for n in c["notes"]:
            if not n.startswith("discrepancy"):
                lines.append(f"          {n}")
    disc = [n for c in rep["checks"] for n in c["notes"] if n.startswith("discrepancy")]
    if disc:
        lines += ["", "[discrepancies with the closed-form exponents]"] + [f"  - {d}" for d in disc]
    lines += ["", "[notes]"] + [f"  - {n}" for n in rep["notes"]]
    return "\n".join(lines) + "\n"


def cmd_build(args) -> int:
    sf = load_spec(args.spec, args.m)
    data = build(sf.cover).to_dict()
    text = build_text(data)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "build.json").write_text(_dump(data) + "\n")
        (out / "build.txt").write_text(text)
        print(f"wrote {out / 'build.json'} and {out / 'build.txt'}")
    elif args.format == "structured":
        print(_dump(data))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    sf = load_spec(args.spec, args.m)
    rep = full_verification(sf.cover).to_dict()
    if args.format == "structured":
        print(_dump(rep))
    else:
        sys.stdout.write(report_text(rep))
    return EXIT_FAIL if rep["overall"] == FAIL else EXIT_OK


def cmd_rank(args) -> int:
    sf = load_spec(args.spec, args.m)
    if sf.descriptor is None:
        raise SpecError("spec has no descriptor block; rank prediction needs rk_end")
    spec = sf.cover
    if isinstance(spec, AbelianCoverSpec):
        pred = predict_mw_group(sf.descriptor, spec.m, spec.degree)
    else:
        pred = dihedral_jacobian_group(sf.descriptor, spec.m, spec.n)
    if args.format == "structured":
        print(_dump(pred.to_dict()))
    else:
        tag = " (lower bound)" if pred.lower_bound else ""
        print(f"rank: {pred.rank}{tag}")
        print(f"group: {pred.shape}")
        for n in pred.notes:
            print(f"  - {n}")
    return EXIT_OK


def cmd_ffcheck(args) -> int:
    sf = load_spec(args.spec, args.m)
    try:
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
    except ValueError:
        raise SpecError(f"bad prime list {args.primes!r}") from None
    for p in primes:
        _check_prime(sf.cover, p)
    if args.trials <= 0:
        print("warning: no samples requested", file=sys.stderr)
        print("no samples")
        return EXIT_OK
    con = build(sf.cover)
    summaries = [run_oracle(con, p, args.trials, seed=args.seed) for p in primes]
    rows = [{"p": s.p, "valid": s.valid, "passed": s.passed, "rejected": s.rejected,
             "ratio": f"{100 * s.ratio:.1f}%"} for s in summaries]
    ok = all(s.passed == s.valid for s in summaries)
    if args.format == "structured":
        print(_dump({"primes": rows, "pass": ok}))
    else:
        for r in rows:
            print(f"p={r['p']:<4} valid={r['valid']:<5} passed={r['passed']:<5} "
                  f"rejected={r['rejected']:<4} pass ratio {r['ratio']}")
        print("pass" if ok else "FAIL")
    if any(s.valid < args.trials for s in summaries):
        print("warning: fewer valid samples than requested for some prime", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covertwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--spec", required=True, help="JSON spec file")
        p.add_argument("--m", type=int, default=None, help="override the number of copies")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--seed", type=int, default=0)
        return p

    b = common(sub.add_parser("build", help="write cover, product, quotient, twist and points"))
    b.add_argument("--out", default=None, help="output directory")
    b.set_defaults(func=cmd_build)
    common(sub.add_parser("verify", help="run all symbolic checks")).set_defaults(func=cmd_verify)
    common(sub.add_parser("rank", help="predict the Mordell-Weil rank")).set_defaults(func=cmd_rank)
    f = common(sub.add_parser("ffcheck", help="finite-field oracle"))
    f.add_argument("--primes", default="7,11,13")
    f.add_argument("--trials", type=int, default=100, help="valid samples per prime")
    f.set_defaults(func=cmd_ffcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, BadPrimeError) as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
