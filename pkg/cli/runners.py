"""
One function per physics command: validated options in, OutputRecord out.

Entropies are reported in units of k_B; everything else carries the unit
string of the active unit system.
"""
import logging

import numpy as np
from django.conf import settings

from blackhole.horizon import coherent_equivalence_report, schwarzschild_radius
from coherent.states import (
    FOCK_MAX_NBAR, CoherentAmplitude, OscillatorConfig, fock_weights, log_partition_function,
)
from kgf_field.source import (
    SphericalSource, field_entropy_area, layer_volume_occupancy, occupancy_estimate, yukawa_potential,
)
from kgf_field.spectrum import (
    ModeSpectrum, field_energy, field_entropy, field_free_energy, field_temperature, mean_frequency,
)
from thermo.relations import entropy_analytic
from thermo.temperature import (
    area_law, bloch_distribution, bloch_temperature, bloch_width, coherent_thermo_point,
    frequency_per_occupation, temperature_ode_solve, zero_point,
)

from .records import OutputRecord

logger = logging.getLogger(__name__)

LINEAR_MODEL_NOTE = (
    "S assumes the linear occupation model nbar ~ T (S = 2 k_B nbar); "
    "S_self_consistent uses the slope implied by E = k_B T^2 dnbar/dT"
)
LOW_OCCUPATION_NOTE = (
    "nbar = {nbar!r} is below 1/2: the closed-form temperature grows without bound as nbar -> 0 "
    "and does not join the zero-point branch T = hbar*omega/2k_B"
)
FOCK_SKIPPED_NOTE = (
    "nbar = {nbar!r} exceeds {limit:g}: the Fock-space weights are not built; "
    "lnQ, E, T and S are evaluated in closed form"
)
ZERO_POINT_NOTE = "nbar = 0: zero-point branch (T = hbar*omega/2k_B, S = k_B)"
ROUTES_NOTE = (
    "route 1 (Boltzmann, S = k_B nbar) closes for beta = 4; "
    "route 2 (coherent state with nbar ~ T, S = 2 k_B nbar) closes for beta = 8"
)


def _base_inputs(data):
    cs = data['cs']
    inputs = {'units': cs.unit_system.value}
    inputs.update((name, value) for name, value in cs.as_dict().items() if name != 'unit_system')
    return inputs


def run_oscillator(data) -> OutputRecord:
    cs = data['cs']
    cfg = OscillatorConfig(m=data['mass'], omega=data['omega'], cs=cs)
    record = OutputRecord('oscillator', _base_inputs(data))
    record.inputs.update(mass=cfg.m, omega=cfg.omega)

    if data.get('nbar') is not None:
        nbar = data['nbar']
        d_abs = cfg.amplitude_for_occupation(nbar)
        record.inputs['nbar'] = nbar
    else:
        amplitude = CoherentAmplitude(cfg, data['d_re'], data['d_im'])
        nbar = amplitude.nbar
        d_abs = abs(amplitude.d)
        record.inputs.update(d_re=amplitude.d_re, d_im=amplitude.d_im)
    record.inputs['fock_tol'] = settings.FOCK_TOLERANCE

    record.add('nbar', nbar, cs.unit('dimensionless'))
    record.add('d_abs', d_abs, cs.unit('length'))
    record.add('lnQ', log_partition_function(nbar), cs.unit('dimensionless'))
    if nbar <= FOCK_MAX_NBAR:
        weights = fock_weights(nbar, settings.FOCK_TOLERANCE)
        record.add('fock_n_max', weights.n_max, cs.unit('dimensionless'))
        record.add('fock_norm', weights.total, cs.unit('dimensionless'))
    else:
        record.warn(FOCK_SKIPPED_NOTE.format(nbar=nbar, limit=FOCK_MAX_NBAR))

    if nbar == 0:
        point = zero_point(cfg)
        record.add('zero_point_branch', True, cs.unit('dimensionless'))
        record.add('T', point.T, cs.unit('temperature'))
        record.add('E', point.E, cs.unit('energy'))
        record.add('F', point.F, cs.unit('energy'))
        record.add('S', point.S / cs.k_B, cs.unit('entropy'))
        record.add('l0', cfg.zero_point_amplitude, cs.unit('length'))
        record.warn(ZERO_POINT_NOTE)
        return record

    point = coherent_thermo_point(cfg, nbar)
    law = area_law(cfg, d_abs)
    record.add('zero_point_branch', False, cs.unit('dimensionless'))
    record.add('T', point.T, cs.unit('temperature'))
    record.add('E', point.E, cs.unit('energy'))
    record.add('F', point.F, cs.unit('energy'))
    record.add('S', entropy_analytic(nbar, nbar, cs) / cs.k_B, cs.unit('entropy'))
    record.add('S_self_consistent', point.S / cs.k_B, cs.unit('entropy'))
    record.add('alpha', frequency_per_occupation(cfg, d_abs), cs.unit('frequency'))
    record.add('A_d', law.A_d, cs.unit('area'))
    record.add('l0', law.l0, cs.unit('length'))
    record.add('nbar_area_law', law.nbar, cs.unit('dimensionless'))
    record.add('nbar_area_law_at_T', law.occupation_at(point.T, cfg), cs.unit('dimensionless'))
    record.add('S_area_law', law.S / cs.k_B, cs.unit('entropy'))
    record.warn(LINEAR_MODEL_NOTE)
    if nbar < 0.5:
        record.warn(LOW_OCCUPATION_NOTE.format(nbar=nbar))

    if data.get('trajectory_to') is not None:
        record.inputs.update(trajectory_to=data['trajectory_to'], trajectory_points=data['trajectory_points'],
                             ode_rtol=settings.ODE_RTOL)
        alpha = cfg.omega / nbar
        trajectory = temperature_ode_solve(alpha, nbar, data['trajectory_to'], point.T, settings.ODE_RTOL, cs)
        record.add('ode_steps', trajectory.n_steps, cs.unit('dimensionless'))
        record.add_table('trajectory', ('nbar', 'T'),
                         trajectory.resample(data['trajectory_points'], log=True))
    return record


def run_bloch(data) -> OutputRecord:
    cs = data['cs']
    # T_Bl does not depend on the mass; it only sets the width of b(q).
    mass = data.get('mass')
    cfg = OscillatorConfig(m=mass if mass is not None else 1.0, omega=data['omega'], cs=cs)
    record = OutputRecord('bloch', _base_inputs(data))
    record.inputs.update(omega=cfg.omega, t_hb=data['t_hb'])

    T_bl = bloch_temperature(cfg, data['t_hb'])
    record.add('T_Bl', T_bl, cs.unit('temperature'))
    record.add('T_zero_point', zero_point(cfg).T, cs.unit('temperature'))
    record.add('T_Bl_over_T_hb', T_bl / data['t_hb'], cs.unit('dimensionless'))
    if mass is None:
        return record

    record.inputs['mass'] = mass
    width = bloch_width(cfg, data['t_hb'])
    record.add('q_width', width, cs.unit('length'))
    record.add('b_peak', bloch_distribution(cfg, data['t_hb'], 0.0), cs.unit('probability_density'))
    if data.get('q_points') is not None:
        q_max = data.get('q_max') or 5.0 * width
        record.inputs.update(q_max=q_max, q_points=data['q_points'])
        q = np.linspace(-q_max, q_max, data['q_points'])
        record.add_table('distribution', ('q', 'b'), zip(q, bloch_distribution(cfg, data['t_hb'], q)))
    return record


def run_field(data) -> OutputRecord:
    cs = data['cs']
    record = OutputRecord('field', _base_inputs(data))

    if data.get('spectrum'):
        spectrum = ModeSpectrum.from_csv(data['spectrum'])
        record.inputs.update(spectrum=data['spectrum'], modes=len(spectrum.modes),
                             nbar_threshold=settings.FIELD_NBAR_THRESHOLD)
        temperature = field_temperature(spectrum, cs, settings.FIELD_NBAR_THRESHOLD)
        record.add('nbar_total', spectrum.nbar_total, cs.unit('dimensionless'))
        record.add('lnQ', spectrum.nbar_total, cs.unit('dimensionless'))
        record.add('omega_bar', mean_frequency(spectrum), cs.unit('frequency'))
        record.add('E', field_energy(spectrum, cs), cs.unit('energy'))
        record.add('T', temperature.value, cs.unit('temperature'))
        record.add('F', field_free_energy(spectrum, temperature.value, cs), cs.unit('energy'))
        record.add('S', field_entropy(spectrum, cs) / cs.k_B, cs.unit('entropy'))
        record.warn(*temperature.warnings)

    if data.get('radius') is not None:
        radius, prefactor = data['radius'], data['prefactor']
        if data.get('compton') is not None:
            lambda_C = data['compton']
            record.inputs.update(radius=radius, compton=lambda_C)
        else:
            src = SphericalSource.from_field_mass(data['coupling'], radius, data['field_mass'], cs)
            lambda_C = src.lambda_C
            record.inputs.update(radius=radius, field_mass=data['field_mass'])
        record.inputs['prefactor'] = prefactor

        occupancy = occupancy_estimate(radius, lambda_C, prefactor)
        entropy = field_entropy_area(radius, lambda_C, prefactor, cs)
        record.add('lambda_C', lambda_C, cs.unit('length'))
        record.add('A_d', 4.0 * np.pi * radius * radius, cs.unit('area'))
        record.add('nbar_estimate', occupancy.value, cs.unit('dimensionless'))
        record.add('nbar_layer_volume', layer_volume_occupancy(radius, lambda_C, prefactor),
                   cs.unit('dimensionless'))
        record.add('S_area_law', entropy.value / cs.k_B, cs.unit('entropy'))
        record.warn(*occupancy.warnings)

        if data.get('potential_at') is not None:
            src = SphericalSource(g=data['coupling'], radius_d=radius, lambda_C=lambda_C,
                                  profile=data['profile'])
            record.inputs.update(coupling=src.g, profile=src.profile.value,
                                 potential_at=data['potential_at'], quad_tol=settings.QUAD_TOL)
            record.add('phi', yukawa_potential(src, data['potential_at'], settings.QUAD_TOL), cs.unit('field'))
    return record


def run_blackhole(data) -> OutputRecord:
    cfg = data['config']
    cs = cfg.cs
    record = OutputRecord('blackhole', _base_inputs(data))
    for name in ('solar_masses', 'mass', 'area'):
        if data.get(name) is not None:
            record.inputs[name] = data[name]
    record.inputs.update(beta=cfg.beta, kappa=cfg.kappa)

    report = coherent_equivalence_report(cfg)
    record.add('M', cfg.mass_M, cs.unit('mass'))
    record.add('A', cfg.area_A, cs.unit('area'))
    record.add('r_s', schwarzschild_radius(cfg.mass_M, cs), cs.unit('length'))
    record.add('S_BH', report.bh_entropy_ratio, cs.unit('entropy'))
    record.add('ln_S_BH', report.bh_entropy_log_ratio, cs.unit('dimensionless'))
    record.add('alpha', cfg.alpha, cs.unit('dimensionless'))
    record.add('nbar', report.nbar, cs.unit('dimensionless'))
    record.add('lnQ_BH', report.log_states, cs.unit('dimensionless'))
    record.add('S_route1_boltzmann', report.route1_entropy / cs.k_B, cs.unit('entropy'))
    record.add('S_route2_coherent', report.route2_entropy / cs.k_B, cs.unit('entropy'))
    record.add('route1_matches', report.route1_matches, cs.unit('dimensionless'))
    record.add('route2_matches', report.route2_matches, cs.unit('dimensionless'))
    record.add('kappa_invariant', report.kappa_invariant, cs.unit('dimensionless'))
    record.warn(ROUTES_NOTE)
    return record


RUNNERS = {
    'oscillator': run_oscillator,
    'bloch': run_bloch,
    'field': run_field,
    'blackhole': run_blackhole,
}
