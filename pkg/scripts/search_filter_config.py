"""Search 3-tap filter word-lengths whose contract bound and exhaustive error
match target values.

    python scripts/search_filter_config.py --bound 0.7690429 --oracle 0.6875
"""

import argparse
import itertools
from fractions import Fraction

from agcontracts.casestudies.fixedpoint import (
    FixedPointFormat as F,
    adder_constant,
    enumeration_oracle,
    quantize_coefficient,
    truncation_error,
)
from agcontracts.casestudies.filters import fir3


def analytic_bound(xf, kf, mf, sf, yf):
    """Closed-form error bound of fir3 with inputs at full range."""
    x_a = xf.max_value
    errs = [quantize_coefficient(c, F(kf, 0))[1] for c in (0.2, 0.6, 0.2)]
    t = truncation_error(xf.frac + kf, mf)
    return x_a * sum(errs) + 3 * t + adder_constant(mf, mf, sf) + adder_constant(sf, mf, yf)


def fit(top, frac):
    """Fewest integer bits holding ``top`` without overflow, at ``frac`` fractional bits."""
    for p in range(-4, 8):
        if p + frac >= 1 and top < 2**p:
            return F(p + frac, p)
    return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=float, default=0.7690429)
    ap.add_argument("--oracle", type=float, default=0.6875)
    ap.add_argument("--tol", type=float, default=5e-7)
    ap.add_argument("--oracle-tol", type=float, default=1e-9)
    ap.add_argument("--limit", type=int, default=2000, help="skip oracle runs above this many input grid points per tap")
    ap.add_argument("--max-bits", type=int, default=8)
    args = ap.parse_args()

    hits = []
    for nx, px in itertools.product(range(1, args.max_bits + 1), range(-2, 6)):
        if px > nx:
            continue
        xf = F(nx, px)
        for kf in range(1, 11):
            ks = [quantize_coefficient(c, F(kf, 0))[0] for c in (0.2, 0.6, 0.2)]
            for fm, fs, fy in itertools.product(range(0, 12), repeat=3):
                mf = fit(max(ks) * xf.max_value, fm)
                if mf is None:
                    continue
                p_max = [min(k * xf.max_value, mf.max_value) for k in ks]
                sf = fit(p_max[0] + p_max[1], fs)
                if sf is None:
                    continue
                yf = fit(min(sf.max_value, p_max[0] + p_max[1]) + p_max[2], fy)
                if yf is None:
                    continue
                b = analytic_bound(xf, kf, mf, sf, yf)
                if abs(b - args.bound) <= args.tol:
                    hits.append((xf, kf, mf, sf, yf, b))
    print(f"{len(hits)} configurations match the bound")
    for xf, kf, mf, sf, yf, b in hits:
        if 2**xf.n > args.limit:
            continue
        path = fir3(xf, F(kf, 0), mf, sf, yf)
        try:
            o = enumeration_oracle(path)
        except OverflowError:
            continue
        mark = "MATCH" if abs(float(o) - args.oracle) <= args.oracle_tol else ""
        print(xf, kf, mf, sf, yf, f"bound={b:.10f}", f"oracle={float(o):.10f}", mark, flush=True)


if __name__ == "__main__":
    main()
