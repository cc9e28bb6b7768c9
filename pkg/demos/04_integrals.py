"""Adaptive Gauss-Legendre quadrature on the finite Bessel-tanh integrals.

For real arguments the integrals are purely imaginary, which makes a handy
sanity check on the quadrature error.
"""
import math

import numpy as np

from pod2exact.analytic import QuadratureConfig, bessel_I1, integral_I_final, integral_J_final, quad_finite


def main():
    r = quad_finite(lambda x: np.sqrt(1 - x * x))
    print(f"int sqrt(1-x^2) = {r.value:.15f}  (pi/2 = {math.pi / 2:.15f}), integrand evaluations: {r.evals}")
    print(f"I1(2) = {bessel_I1(2.0):.15f}")
    cfg = QuadratureConfig(abs_tol=1e-12)
    for k in (6, 12, 30):
        vals = integral_I_final(math.sqrt(6), k, np.arange(k // 2), 10, cfg).value
        print(f"I-integral k={k:2d}: max |Re| = {np.max(np.abs(vals.real)):.1e}, Im(v=0) = {vals[0].imag:+.6e}")
    vals = integral_J_final(7, np.arange(7), 10, cfg).value
    print(f"J-integral k=7: max |Re| = {np.max(np.abs(vals.real)):.1e}")


if __name__ == "__main__":
    main()
