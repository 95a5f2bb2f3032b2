"""BER versus Eb/N0 for two-user links, comparing spreading families and windows.

Each row is one (family, chips_per_bit, Eb/N0) point averaged over both users.

    python scripts/ber_sweep.py --bits 20000 > ber.csv
"""

import argparse
from dataclasses import dataclass

import numpy as np

from dseqcdma.cdmasim import SimConfig, UserConfig, ebn0_to_sigma, run_simulation
from dseqcdma.sequences import generate_dseq, preferred_pair, to_bipolar


@dataclass
class Case:
    name: str
    codes: tuple
    chips_per_bit: int
    offsets: tuple = (0, 0)


def cases():
    d11, d19 = to_bipolar(generate_dseq(11)), to_bipolar(generate_dseq(19))
    u, v = preferred_pair(5)
    g1, g2 = to_bipolar(u), to_bipolar(v)
    return [
        Case("dseq-11-19-lcm", (d11, d19), 90),
        Case("dseq-11-19-short", (d11, d19), 80),
        Case("gold5-full", (g1, g2), 31, (0, 7)),
        Case("gold5-short", (g1, g2), 25, (0, 7)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--ebn0", type=float, nargs="+", default=list(np.arange(-4.0, 8.1, 2.0)))
    args = ap.parse_args(argv)

    print("family,chips_per_bit,ebn0_db,ber,peak_mai")
    for case in cases():
        for ebn0 in args.ebn0:
            sigma = ebn0_to_sigma(ebn0, case.chips_per_bit)
            users = tuple(UserConfig(c, case.chips_per_bit, o) for c, o in zip(case.codes, case.offsets))
            res = run_simulation(SimConfig(users, args.bits, sigma, args.seed))
            ber = np.mean([r.ber for r in res.per_user])
            peak = max(r.peak_mai for r in res.per_user)
            print(f"{case.name},{case.chips_per_bit},{ebn0:.1f},{ber:.6f},{peak:.6f}")


if __name__ == "__main__":
    main()
