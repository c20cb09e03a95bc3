"""Plasmonic resonances of spheres, shells and dilute composites."""

from ._plasmon import (
    DrudeParams,
    Material,
    MediumPair,
    PlasmonError,
    ResonanceReport,
    bessel_pair,
    drude_permittivity,
    eigen_expansions,
    extinction,
    find_resonance,
    mg_effective_ball,
    periodic_regular_part,
    q1_correction,
    riccati_pair,
    run_cli,
    scattering_coeffs,
    selftest,
    shell_np_eigenvalue,
    shell_resonances,
    w_blocks,
)

__all__ = [
    "DrudeParams",
    "Material",
    "MediumPair",
    "PlasmonError",
    "ResonanceReport",
    "bessel_pair",
    "drude_permittivity",
    "eigen_expansions",
    "extinction",
    "find_resonance",
    "mg_effective_ball",
    "periodic_regular_part",
    "q1_correction",
    "riccati_pair",
    "run_cli",
    "scattering_coeffs",
    "selftest",
    "shell_np_eigenvalue",
    "shell_resonances",
    "w_blocks",
]
