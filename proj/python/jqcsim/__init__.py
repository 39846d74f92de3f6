"""Charge-qubit/cavity simulator bindings.

Everything here is re-exported from the compiled core: parameter records,
closed-form device quantities, Hamiltonian builders, the ideal gate gallery
with audit reports, pulse schedules, the cavity-mediated transfer integrator,
and the in-process CLI entry point.
"""

from ._core import (
    CavityParams,
    DeviceModel,
    QubitParams,
    audit_gate,
    axis_from_params,
    beta_mixing,
    bloch_grid,
    build_h0,
    build_hint_exact,
    build_hint_first_order,
    build_rwa_hamiltonian,
    charging_bias,
    closed_form_alpha2,
    cnot_literal,
    cnot_target_full,
    cnot_verified,
    conditional_phase,
    device_from_json,
    device_to_json,
    device_warnings,
    displacement_factor,
    ej_effective,
    expm,
    hadamard,
    hilbert_dim,
    makhlin_invariants,
    phase_invariant_fidelity,
    r_sideband,
    resonant_bias,
    run_cli,
    run_schedule,
    run_transfer,
    sideband_generator,
    solve_flux_for_ej,
    swap_qubit_photon,
    swap_qubit_qubit,
    u_single,
    vacuum_block_indices,
    validate_device,
    z_phase,
)

__version__ = "0.1.0"

__all__ = [
    "CavityParams",
    "DeviceModel",
    "QubitParams",
    "audit_gate",
    "axis_from_params",
    "beta_mixing",
    "bloch_grid",
    "build_h0",
    "build_hint_exact",
    "build_hint_first_order",
    "build_rwa_hamiltonian",
    "charging_bias",
    "closed_form_alpha2",
    "cnot_literal",
    "cnot_target_full",
    "cnot_verified",
    "conditional_phase",
    "device_from_json",
    "device_to_json",
    "device_warnings",
    "displacement_factor",
    "ej_effective",
    "expm",
    "hadamard",
    "hilbert_dim",
    "makhlin_invariants",
    "phase_invariant_fidelity",
    "r_sideband",
    "resonant_bias",
    "run_cli",
    "run_schedule",
    "run_transfer",
    "sideband_generator",
    "solve_flux_for_ej",
    "swap_qubit_photon",
    "swap_qubit_qubit",
    "u_single",
    "vacuum_block_indices",
    "validate_device",
    "z_phase",
]
