"""The omega multiplier is an exact 24k-th root of unity.

We build it from a Kronecker symbol formula and check it against the Dedekind
sum form exp(pi i s(h, k)).
"""
import math

from pod2exact.modular import canonical_inverse, dedekind_sum, eta_phase, omega_multiplier


def main():
    for k in (1, 2, 3, 5, 6, 12):
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            w = omega_multiplier(h, k)
            inv = canonical_inverse(h, k)
            print(f"h={h:2d} k={k:2d} s(h,k)={str(dedekind_sum(h, k)):>8}  omega=exp(2 pi i {w.r})"
                  f"  matches={w == eta_phase(h, k)}  h'={inv.h_prime}")


if __name__ == "__main__":
    main()
