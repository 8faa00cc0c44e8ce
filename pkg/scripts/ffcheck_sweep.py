"""Run the finite-field oracle on the spec files over a list of primes."""
import argparse
from pathlib import Path

from covertwist.construct import build
from covertwist.ffcheck import BadPrimeError, run_oracle
from covertwist.specfile import load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="7,11,13,17,19")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]
    for path in sorted(SPECS.glob("*.json")):
        try:
            con = build(load_spec(path).cover)
        except ValueError as exc:
            print(f"{path.name:<24} skipped: {exc}")
            continue
        cells = []
        for p in primes:
            try:
                s = run_oracle(con, p, args.samples, seed=args.seed)
            except BadPrimeError:
                cells.append(f"p={p}: bad")
                continue
            cells.append(f"p={p}: {s.passed}/{s.valid}")
        print(f"{path.name:<24} " + "  ".join(cells))


if __name__ == "__main__":
    main()
