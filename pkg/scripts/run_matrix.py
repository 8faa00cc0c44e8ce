"""Verify the construction matrix and print one row per spec with timings."""
import argparse
import time

from covertwist.construct import AbelianCoverSpec, DihedralCoverSpec, Layer
from covertwist.multipoly import parse
from covertwist.verify import full_verification


def matrix():
    f = parse("x^3 + 1")
    for n, m in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        yield f"cyclic n={n} m={m}", AbelianCoverSpec(1, (Layer(n, f),), m)
    yield "layered (2,4) m=2", AbelianCoverSpec(1, (Layer(2, f), Layer(4, parse("x^3 + 3"))), 2)
    yield "surface ell=2 m=2", AbelianCoverSpec(2, (Layer(2, parse("x1^3 + x2^3 + 1")),), 2)
    for n in (2, 3):
        for m in (2, 3):
            yield f"dihedral n={n} m={m}", DihedralCoverSpec(n, f, parse("x + 2"), m)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true", help="print discrepancy notes")
    args = ap.parse_args()
    print(f"{'spec':<22} {'overall':<8} {'checks':<8} {'seconds':>8}")
    for name, spec in matrix():
        t0 = time.perf_counter()
        rep = full_verification(spec)
        dt = time.perf_counter() - t0
        passed = sum(c.passed for c in rep.checks)
        print(f"{name:<22} {rep.overall:<8} {passed}/{len(rep.checks):<6} {dt:>8.3f}")
        if args.verbose:
            for d in rep.discrepancies():
                print(f"    {d}")


if __name__ == "__main__":
    main()
