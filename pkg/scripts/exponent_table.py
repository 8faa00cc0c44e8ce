"""Derived exponents a, c, t against the closed forms, for a range of two-layer chains."""
import argparse

from covertwist.construct import AbelianCoverSpec, Layer, build
from covertwist.multipoly import parse


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--chains", default="2,2;2,4;3,3;3,6;2,6;2,8;4,8",
                    help="semicolon-separated n_1,n_2 pairs")
    args = ap.parse_args()
    polys = (parse("x^3 + 1"), parse("x^3 + 3"))
    print(f"{'chain':<8} {'layer':<6} {'a':>3} {'a*':>3} {'c':>3} {'c*':>3} {'t':>3} {'t*':>3}  agrees")
    for chain in args.chains.split(";"):
        ns = [int(n) for n in chain.split(",")]
        spec = AbelianCoverSpec(1, tuple(Layer(n, f) for n, f in zip(ns, polys)), 2)
        for e in build(spec).exponents:
            print(f"{chain:<8} {e.layer:<6} {e.a:>3} {e.a_expected:>3} {e.c:>3} {e.c_expected:>3} "
                  f"{e.t:>3} {e.t_expected:>3}  {'yes' if e.agrees else 'no'}")
    print("\nstarred columns are the closed forms n_1 - 1, n_j - d_j, d_j")


if __name__ == "__main__":
    main()
