"""SPDM dynamics of fermionic lattices under resetting and GKLS baths."""

from ._spdmlab import (
    ConfigError,
    ConvergenceError,
    DimensionError,
    DivergenceError,
    DomainError,
    SingularError,
    SpdmError,
    TwoSiteParams,
    exact_embedding_deviation,
    fermi_dirac_target,
    hartree_potential,
    hermitian_eig,
    integrate,
    project_physical,
    propagator,
    rhs_affine,
    rhs_hartree,
    ri_reset,
    ring_hamiltonian,
    run_protocol,
    steady_affine,
    steady_hartree,
    steady_ri,
    subsystem_affine_map,
    two_site_delta_n1,
    two_site_run,
    two_site_sweep_u,
    verify,
)

__version__ = "0.1.0"
