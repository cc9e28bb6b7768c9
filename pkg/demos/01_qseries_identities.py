"""Count pod2 partitions three ways and watch them agree.

pod2(n) counts partitions of n whose largest part is even and whose odd parts
appear at most twice. We compare a direct count with two q-series identities.
"""
from pod2exact.qseries import pod2_count_table, pod2_series_decomposition, pod2_series_identity

N = 30


def main():
    direct = pod2_count_table(N)
    via_rho = list(pod2_series_identity(N))
    via_mock = list(pod2_series_decomposition(N))
    print(" n  direct  zeta1*rho  -zeta1*omega/2+3*zeta2/2")
    for n in range(N + 1):
        print(f"{n:2d} {direct[n]:7d} {via_rho[n]:10d} {via_mock[n]:12d}")
    print("all agree:", direct == via_rho == via_mock)


if __name__ == "__main__":
    main()
