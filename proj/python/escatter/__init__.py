"""Entanglement entropies of electron-electron Coulomb scattering."""

from ._core import (
    __version__,
    SpinChannel,
    GridKind,
    ScatterContext,
    AngularGrid,
    make_context,
    direct_amplitude,
    exchange_amplitude,
    differential_probability,
    ring_grid,
    ring_grid_with_cells,
    meridian_grid,
    postselect_grid,
    equator_grid,
    sphere_pixel_count,
    shannon_bits,
    shannon_ring_discrete,
    shannon_ring_jaynes,
    shannon_sphere_discrete,
    shannon_sphere_jaynes,
    entropy_parallel,
    entropy_antiparallel,
    equator_entropies,
    postselect_range_sweep,
    build_meridian_matrix,
    von_neumann_entropy,
    vn_compare,
    sweep_energies,
    DomainError,
    NumericalError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
