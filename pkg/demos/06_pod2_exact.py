"""The exact formula for pod2(n), family by family.

The terms fall into four families labelled by gcd(k, 6); the gcd-2 class
carries two of them. Their sum is the count. We print the family totals and the
size of the last few k-blocks.
"""
from pod2exact.qseries import pod2_count_table
from pod2exact.rademacher import TruncationPolicy, contribution_table, pod2_exact


def main():
    oracle = pod2_count_table(40)
    for n in (0, 6, 20, 40):
        r = pod2_exact(n, TruncationPolicy(k_max=100))
        fams = "  ".join(f"{f.family}:{f.total.real:+.4f}" for f in r.per_family)
        print(f"n={n:2d} estimate={r.estimate:.6f} rounded={r.rounded} oracle={oracle[n]}  {fams}")
        print(f"      tail blocks {['%.1e' % b for b in r.block_norms[-5:]]}")
    print()
    print(contribution_table(pod2_exact(6, TruncationPolicy(k_max=12))))


if __name__ == "__main__":
    main()
