"""Peak partial cross-correlation as a function of the window length N.

Writes plot-ready CSV ``N,max_abs,rms`` for one d-sequence pair, every lag
0..P-1 at each window.

    python scripts/window_sweep.py 11 19 > sweep_11_19.csv
"""

import argparse
import sys

from dseqcdma.correlation import cross_correlation_partial, profile_stats, reference_period
from dseqcdma.sequences import generate_dseq, to_bipolar


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("m1", type=int)
    ap.add_argument("m2", type=int)
    ap.add_argument("--mapping", default="bipolar1")
    ap.add_argument("--min-n", type=int, default=1)
    args = ap.parse_args(argv)

    u = to_bipolar(generate_dseq(args.m1), args.mapping)
    c = to_bipolar(generate_dseq(args.m2), args.mapping)
    p = reference_period(u, c)
    out = sys.stdout
    out.write("N,max_abs,rms\n")
    for n in range(args.min_n, p + 1):
        st = profile_stats(cross_correlation_partial(u, c, n, p - 1))
        out.write(f"{n},{st.max_abs:.6f},{st.rms:.6f}\n")


if __name__ == "__main__":
    main()
