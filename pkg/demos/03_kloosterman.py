"""Kloosterman sums in both of their forms.

The definition multiplies multiplier quotients; the closed form collapses the
same phases into one exponential. The two agree summand by summand.
"""
from pod2exact.kloosterman import FAMILIES, KloostermanSpec, bound_ratio, kloosterman_closed, kloosterman_definition, valid_ks


def main():
    for fam in FAMILIES:
        k = valid_ks(fam, 40)[2]
        v = 1 if fam[1] == "2" else None
        spec = KloostermanSpec(fam, k, 3, 0, v)
        d = kloosterman_definition(spec).value
        c = kloosterman_closed(spec).value
        print(f"{fam} k={k:2d}: definition={d.real:+.6f}{d.imag:+.6f}i  |diff|={abs(d - c):.1e}")
    worst = max(bound_ratio(KloostermanSpec("221", k, 1, 0, 0)) for k in valid_ks("221", 120))
    print(f"largest |K|/(n^(1/3) k^(2/3)) for 221 with v=0, k<=120: {worst:.3f}")


if __name__ == "__main__":
    main()
