"""Calibrate the pipeline on the classical Rademacher series for p(n)."""
import math

from pod2exact.qseries import partition_series
from pod2exact.rademacher import p_exact_estimate


def main():
    pn = partition_series(1, 200)
    for n in (1, 10, 50, 100, 200):
        k_max = max(10, math.ceil(4 * math.sqrt(n)))
        est = p_exact_estimate(n, k_max)
        print(f"p({n}) ~ {est:.4f} with k_max={k_max}; exact {pn[n]}")


if __name__ == "__main__":
    main()
