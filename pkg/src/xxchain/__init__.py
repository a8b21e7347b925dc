"""Inhomogeneous XX spin chains with high-fidelity end-to-end state transfer."""

__version__ = "0.1.0"

from .chains import (
    ChainFamily,
    coupling_ratio,
    krawtchouk_chain,
    krawtchouk_ratio,
    surgered_chain,
    surgered_spectral_data,
    surgered_spectrum,
    surgered_weights,
    uniform_chain,
)
from .errors import NumericalError
from .jacobi import (
    JacobiMatrix,
    SpectralData,
    eigendecompose,
    is_persymmetric,
    moments_check,
    polynomial_values,
    reconstruct_from_measure,
    weights_from_charpoly,
)
from .surgery import christoffel_remove_pair, surger
from .transfer import (
    PstReport,
    TransferReport,
    amplitude_full,
    amplitude_persym,
    check_pst,
    evolve,
    fidelity_deficit,
    optimize_time,
)
