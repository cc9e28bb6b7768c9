"""Exact formula for pod2(n), with its q-series identities, multipliers, Kloosterman sums and integrals."""
from .analytic import QuadratureConfig, QuadResult, bessel_I1, bessel_I32, complex_tanh, quad_finite
from .kloosterman import KloostermanSpec, SumValue, classical_A, kloosterman_closed, kloosterman_definition
from .modular import UnitPhase, canonical_inverse, dedekind_sum, omega_multiplier
from .qseries import IntSeries, pod2_count_oracle, pod2_count_table
from .rademacher import ExactResult, TruncationPolicy, p_exact, pod2_exact

__version__ = "0.1.0"

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "bessel_I1",
    "bessel_I32",
    "complex_tanh",
    "quad_finite",
    "KloostermanSpec",
    "SumValue",
    "classical_A",
    "kloosterman_closed",
    "kloosterman_definition",
    "UnitPhase",
    "canonical_inverse",
    "dedekind_sum",
    "omega_multiplier",
    "IntSeries",
    "pod2_count_oracle",
    "pod2_count_table",
    "ExactResult",
    "TruncationPolicy",
    "p_exact",
    "pod2_exact",
]
