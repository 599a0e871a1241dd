"""
The self-check suite: every primary result against its oracle or its
published value, aggregated into one pass/fail verdict.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from blackhole.horizon import (
    KAPPA_PROBES, SOLAR_MASS_KG, BlackHoleConfig, alpha_from_kappa,
    bekenstein_log_states, bh_entropy, coherent_equivalence_report, horizon_area,
)
from coherent.states import OscillatorConfig, fock_weights, mean_energy
from constants.units import ConstantsSet, planck_length
from kgf_field.source import SphericalSource, point_potential, yukawa_potential
from thermo.relations import OccupationModel, entropy_analytic, entropy_numeric
from thermo.temperature import (
    area_law, bloch_temperature, temperature_closed_form, temperature_from_alpha,
    temperature_ode_rhs, temperature_ode_solve, temperature_slope, zero_point,
)

from .oracles import Observable, OracleReport, fock_sum_oracle, nested_quadrature_oracle

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240229

NORMALIZATION_NBARS = (0.1, 1.0, 10.0, 100.0, 1000.0)


@dataclass(frozen=True)
class SelfCheckResult:
    reports: Tuple[OracleReport, ...]

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def failures(self) -> Tuple[OracleReport, ...]:
        return tuple(report for report in self.reports if not report.passed)


def check_normalization() -> List[OracleReport]:
    cfg = OscillatorConfig(m=1.0, omega=1.0, cs=ConstantsSet.natural())
    reports = []
    for nbar in NORMALIZATION_NBARS:
        reports.append(OracleReport.compare(f"fock norm nbar={nbar:g}", fock_weights(nbar).total, 1.0, 1e-10))
        reports.append(OracleReport.compare(
            f"fock oracle norm nbar={nbar:g}", fock_sum_oracle(cfg, nbar, Observable.NORM), 1.0, 1e-12,
        ))
    return reports


def check_mean_energy(rng: np.random.Generator, count: int = 20) -> List[OracleReport]:
    cs = ConstantsSet.si()
    reports = []
    for _ in range(count):
        cfg = OscillatorConfig(m=10.0 ** rng.uniform(-30, 0), omega=10.0 ** rng.uniform(0, 15), cs=cs)
        nbar = 10.0 ** rng.uniform(-1, 3)
        reports.append(OracleReport.compare(
            f"mean energy m={cfg.m:.3e} omega={cfg.omega:.3e} nbar={nbar:.4g}",
            mean_energy(cfg, nbar), fock_sum_oracle(cfg, nbar, Observable.ENERGY), 1e-9,
        ))
    return reports


def check_closed_form_solves_ode(count: int = 100) -> List[OracleReport]:
    cs = ConstantsSet.natural()
    reports = []
    for nbar in np.geomspace(0.1, 1e4, count):
        nbar = float(nbar)
        T = temperature_from_alpha(1.0, nbar, cs)
        reports.append(OracleReport.compare(
            f"closed form in ODE nbar={nbar:.6g}",
            temperature_slope(1.0, nbar, cs), temperature_ode_rhs(1.0, nbar, T, cs), 1e-10,
        ))
    return reports


def check_ode_tracks_closed_form(rtol: float = 1e-9) -> List[OracleReport]:
    cs = ConstantsSet.natural()
    trajectory = temperature_ode_solve(1.0, 0.5, 100.0, temperature_from_alpha(1.0, 0.5, cs), rtol, cs)
    reports = []
    for nbar in np.geomspace(0.5, 100.0, 9):
        nbar = float(nbar)
        reports.append(OracleReport.compare(
            f"ODE vs closed form nbar={nbar:.6g}",
            float(trajectory(nbar)), temperature_from_alpha(1.0, nbar, cs), 1e-6,
        ))
    return reports


def check_high_occupation_limit() -> List[OracleReport]:
    cfg = OscillatorConfig(m=1.0, omega=1.0, cs=ConstantsSet.natural())
    reports = [OracleReport.compare("T(nbar=100) in hbar*omega/k_B", temperature_closed_form(cfg, 100.0),
                                    1.00251, 1e-4)]
    deviations = [temperature_closed_form(cfg, nbar) - 1.0 for nbar in (100.0, 200.0, 400.0, 800.0, 1600.0)]
    violations = sum(1 for a, b in zip(deviations, deviations[1:]) if not b < a)
    reports.append(OracleReport.compare("high-occupation deviation monotonicity violations",
                                        float(violations), 0.0, 0.0))
    return reports


def check_entropy_identities(rng: np.random.Generator, count: int = 20) -> List[OracleReport]:
    cs = ConstantsSet.natural()
    reports = []
    for _ in range(count):
        cfg = OscillatorConfig(m=10.0 ** rng.uniform(-2, 2), omega=10.0 ** rng.uniform(-2, 2), cs=cs)
        d_abs = 10.0 ** rng.uniform(-1, 1)
        law = area_law(cfg, d_abs)
        nbar = law.nbar
        expected = 2.0 * cs.k_B * nbar
        T = cs.hbar * cfg.omega / cs.k_B
        label = f"m={cfg.m:.4g} omega={cfg.omega:.4g} |d|={d_abs:.4g}"
        reports.extend((
            OracleReport.compare(f"entropy analytic {label}", entropy_analytic(nbar, nbar, cs), expected, 1e-8),
            OracleReport.compare(
                f"entropy numeric {label}",
                entropy_numeric(OccupationModel.linear_through(nbar, T), T, cs), expected, 1e-8,
            ),
            OracleReport.compare(f"entropy area law {label}", law.S, expected, 1e-8),
        ))
    return reports


def check_zero_point() -> List[OracleReport]:
    cs = ConstantsSet.si()
    cfg = OscillatorConfig(m=1e-26, omega=1e13, cs=cs)
    hbar_omega = cs.hbar * cfg.omega
    point = zero_point(cfg)
    return [
        OracleReport.compare("zero-point T", point.T, hbar_omega / (2.0 * cs.k_B), 0.0),
        OracleReport.compare("zero-point E", point.E, hbar_omega / 2.0, 0.0),
        OracleReport.compare("zero-point F", point.F, 0.0, 0.0),
        OracleReport.compare("zero-point S", point.S, cs.k_B, 0.0),
        OracleReport.compare("Bloch at a cold bath", bloch_temperature(cfg, hbar_omega / (100.0 * cs.k_B)),
                             point.T, 1e-10),
    ]


def check_bloch_classical_limit() -> List[OracleReport]:
    cs = ConstantsSet.si()
    cfg = OscillatorConfig(m=1e-26, omega=1e13, cs=cs)
    T_hb = 20.0 * cs.hbar * cfg.omega / cs.k_B
    return [OracleReport.compare("Bloch classical limit", bloch_temperature(cfg, T_hb), T_hb, 3e-4)]


def check_yukawa(rng: np.random.Generator, count: int = 10) -> List[OracleReport]:
    reports = []
    lam = 1.0
    small = SphericalSource(g=1.0, radius_d=lam / 100.0, lambda_C=lam)
    reports.append(OracleReport.compare("Yukawa small ball vs point", yukawa_potential(small, 10.0 * lam),
                                        point_potential(1.0, lam, 10.0 * lam), 1e-4))
    for _ in range(count):
        lam = 10.0 ** rng.uniform(-1, 1)
        d = lam * rng.uniform(0.2, 5.0)
        r = d + lam * rng.uniform(0.5, 5.0)
        src = SphericalSource(g=1.0, radius_d=d, lambda_C=lam)
        reports.append(OracleReport.compare(
            f"Yukawa ball d={d:.4g} lambda={lam:.4g} r={r:.4g}",
            yukawa_potential(src, r), nested_quadrature_oracle(src, r), 1e-6,
        ))
    return reports


def check_black_hole() -> List[OracleReport]:
    cs = ConstantsSet.si()
    area = horizon_area(SOLAR_MASS_KG, cs)
    target = bh_entropy(area, cs)
    nbar = area / (4.0 * planck_length(cs) ** 2)
    reports = [OracleReport.compare("solar-mass S/k_B", target.ratio, 1.049e77, 5e-3)]
    for kappa in KAPPA_PROBES:
        reports.append(OracleReport.compare(
            f"ln Q_BH kappa={kappa}", bekenstein_log_states(area, kappa, alpha_from_kappa(4.0, kappa), cs),
            nbar, 1e-12,
        ))
    for beta in (4.0, 8.0):
        report = coherent_equivalence_report(BlackHoleConfig(cs=cs, beta=beta, mass_M=SOLAR_MASS_KG))
        route = report.route1_entropy if beta == 4.0 else report.route2_entropy
        reports.append(OracleReport.compare(f"beta={beta:g} route closure", route, target.entropy, 1e-12))
    return reports


def run_self_check(seed: int = DEFAULT_SEED) -> SelfCheckResult:
    rng = np.random.default_rng(seed)
    reports = []
    reports.extend(check_normalization())
    reports.extend(check_mean_energy(rng))
    reports.extend(check_closed_form_solves_ode())
    reports.extend(check_ode_tracks_closed_form())
    reports.extend(check_high_occupation_limit())
    reports.extend(check_entropy_identities(rng))
    reports.extend(check_zero_point())
    reports.extend(check_bloch_classical_limit())
    reports.extend(check_yukawa(rng))
    reports.extend(check_black_hole())
    result = SelfCheckResult(tuple(reports))
    logger.info("self-check: %d checks, %d failed", len(result.reports), len(result.failures))
    return result
