"""Self-consistent oscillator spectra and mean-field perturbation series.

Maps anharmonic and double-well oscillators onto exactly solvable
reference Hamiltonians with variationally fixed parameters, generates the
exact perturbation series around that reference by moment recursions, and
sums the (divergent) series by optimal truncation or conformally mapped
Borel-Laplace integration.  A dense-diagonalization oracle underwrites all
accuracy statements, and a renormalized quartic-scalar vacuum module covers
the field-theory limit of the same construction.
"""

__version__ = "0.1.0"

from .model_core import (  # noqa: F401
    ConvergenceError,
    DomainError,
    EstimationError,
    LOResult,
    NgasError,
    OscKind,
    OscillatorSpec,
    Phase,
    PhaseError,
    SpectralIndex,
    f_xi,
    well_depth_shift,
    xi_of,
)
from .gap_solvers import (  # noqa: F401
    oaho_omega,
    qaho_omega,
    qdwo_critical_coupling,
    qdwo_sr_omega,
    qdwo_ssb_omega,
    saho_omega,
    solve_cubic_paper,
)
from .lo_harmonic import HarmonicLOReport, lo_spectrum  # noqa: F401
from .squarewell import (  # noqa: F401
    SquareWellLO,
    SWModel,
    isw_moment,
    sho_asymptotic_ratio,
    sw_lo,
    sw_reference_energy,
    sw_second_order,
)
from .recursion import (  # noqa: F401
    EvenModel,
    PerturbationSeries,
    Scheme,
    mfpt_coefficients_even,
    mfpt_coefficients_ssb,
    mfpt_series,
    sfpt_coefficients,
    sho_moments,
)
from .resummation import (  # noqa: F401
    BorelAnalysis,
    borel_coefficients,
    borel_sum,
    conformal_map,
    estimate_singularity,
    inverse_map,
    optimal_truncation,
    reexpand_borel,
)
from .phi4 import (  # noqa: F401
    GapSolution,
    Phi4Params,
    condensate_ratio,
    effective_potential,
    sigma_domain,
    solve_gap_t,
)
from .oracle import OracleConfig, diagonalize, second_order_sum_oracle  # noqa: F401
