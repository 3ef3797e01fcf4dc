"""Classical-quantum correspondence toolkit for the circle rotation.

Spectral Koopman dynamics of truncated Fourier observables, heat and
fractional diffusion kernels with their RKHS geometry, density-operator
quantum states, half-order fractional ladder operators, and the isometric
embedding into the Hermite eigenbasis of a Laplace-type Hamiltonian on
two-dimensional Minkowski space.
"""

from .spectral import (
    FourierSeries,
    RotationSystem,
    evaluate,
    frac_derivative,
    generator,
    gl_oracle,
    koopman,
    ladder,
    lower,
    mode,
    number_op,
    pos_mom,
    project,
    raise_,
    zero_series,
)
from .kernels import (
    AtomicMeasure,
    KernelParams,
    embed_measure,
    feature_map,
    kernel_matrix_mineig,
    kernel_value,
    polar_isometry,
    rkha_product,
    rkhs_inner,
    rkhs_norm,
)
from .quantum import (
    DensityOperator,
    ObservableMatrix,
    conj_evolve,
    expectation,
    expectation_rkhs,
    heisenberg,
    mult_operator,
    omega_map,
    psi_map,
    pure_state,
    variance,
)
from .minkowski import (
    Grid2D,
    HermiteBasis,
    MinkowskiState,
    adjoint,
    embed,
    energy,
    evolve,
    fd_hamiltonian,
    hermite_eval,
    synth_wavefunction,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
