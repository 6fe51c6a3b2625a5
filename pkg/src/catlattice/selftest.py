"""Built-in invariant suite: fast end-to-end checks of the numerical core.

Each check measures a quantity with a known exact value (unitarity defect,
Bessel closed form, golden-rule identity, estimator round-trip, BPM step
convergence, vacuum Wigner value, coherence identity) and reports pass/fail
against a fixed tolerance. `mutate` deliberately injects a known defect so
the suite itself can be validated: a flipped Hamiltonian sign must trip the
Bessel oracle, an undersized chain must trip the truncation check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import lattice as lat
from . import spectrum as spec
from . import cat as catmod
from . import bpm as bpmmod

MUTATIONS = (None, "hamiltonian-sign", "small-truncation")


@dataclass
class SelftestReport:
    checks: List[Tuple[str, bool, str]]

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> List[str]:
        out = []
        for name, ok, detail in self.checks:
            out.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        return out


def _check_unitarity() -> Tuple[bool, str]:
    model = lat.build_defect_lattice(1.3, 0.7, kappa=1.0, num_sites=120)
    z = np.linspace(0.0, 18.0, 301)
    run = lat.propagate(model, z)
    defect = np.abs(np.sum(np.abs(run.amplitudes) ** 2, axis=1) - 1.0).max()
    return defect < 1e-10, f"max unitarity defect {defect:.3e} (tol 1e-10)"


def _check_bessel(mutate: Optional[str]) -> Tuple[bool, str]:
    kappa = 1.0
    z = np.linspace(0.0, 8.0, 161)
    model = lat.build_defect_lattice(kappa, 0.0, kappa=kappa,
                                     num_sites=lat.required_truncation(kappa, z[-1]))
    run = lat.propagate(model, z)
    amplitudes = run.amplitudes
    if mutate == "hamiltonian-sign":
        # H -> -H on a real symmetric chain conjugates every amplitude;
        # inject exactly that defect so the oracle must catch it
        amplitudes = np.conj(amplitudes)
    sites = np.arange(6)
    exact = lat.uniform_edge_amplitudes(kappa, z, sites)
    err = np.abs(amplitudes[:, sites] - exact).max()
    return err < 1e-8, f"max |amplitude - Bessel form| {err:.3e} (tol 1e-8)"


def _check_truncation(mutate: Optional[str]) -> Tuple[bool, str]:
    kappa, z_max = 1.0, 12.0
    n = lat.required_truncation(kappa, z_max)
    if mutate == "small-truncation":
        n = int(kappa * z_max) + 2  # inside the light cone: reflections return
    z = np.linspace(0.0, z_max, 241)
    small = lat.propagate(lat.build_defect_lattice(0.9, 0.3, kappa, n), z)
    big = lat.propagate(lat.build_defect_lattice(0.9, 0.3, kappa, 2 * n), z)
    diff = np.abs(small.survival - big.survival).max()
    return diff < 1e-8, (
        f"survival shift under doubled truncation {diff:.3e} "
        f"(tol 1e-8, N = {n})"
    )


def _check_golden_rule() -> Tuple[bool, str]:
    bath = spec.BlochBath(kappa=1.7, kappa0=0.41, sigma0=0.0)
    gr = spec.golden_rule_rate(bath)
    mk = spec.markovian_rate(bath)
    err = abs(gr - mk)
    return err < 1e-12, (
        f"|golden rule - 2 kappa0^2/kappa| = {err:.3e} (tol 1e-12)"
    )


def _check_estimator() -> Tuple[bool, str]:
    cat = catmod.CatState(3.0, -3.0)
    G, s00, n = 0.37, 0.8, 8
    p = catmod.photon_number_distribution(cat, s00, G, n)
    p_mix = catmod.photon_number_distribution(cat, s00, 0.0, n)
    est = catmod.estimate_G_from_counts(p, p_mix)
    err = abs(est - G)
    return err < 1e-6, f"round-trip error {err:.3e} at G={G} (tol 1e-6)"


def _check_bpm_convergence() -> Tuple[bool, str]:
    model = bpmmod.BpmModel(num_guides=1, gradient=0.0, device_length=0.05)
    kwargs = dict(x_min=-0.01536, x_max=0.01536, num_points=512,
                  absorber_width=0.004)
    grid_a = bpmmod.BpmGrid(dz=5.0e-5, **kwargs)
    grid_b = bpmmod.BpmGrid(dz=2.5e-5, **kwargs)
    mode = bpmmod.solve_fundamental_mode(model, grid_a)
    run_a = bpmmod.bpm_propagate(model, grid_a, mode)
    run_b = bpmmod.bpm_propagate(model, grid_b, mode)
    diff = np.abs(run_a.survival - run_b.survival[::2]).max()
    still = np.abs(np.abs(run_a.survival) - 1.0).max()
    ok = diff < 1e-6 and still < 1e-4
    return ok, (
        f"survival shift under halved dz {diff:.3e} (tol 1e-6), "
        f"stationary-mode drift {still:.3e} (tol 1e-4)"
    )


def _check_wigner_vacuum() -> Tuple[bool, str]:
    state = catmod.reduced_density_matrix(catmod.CatState(0.0, 0.0), 1.0, 1.0,
                                          n_max=12)
    w0 = float(catmod.wigner_function(state, [0.0], [0.0])[0, 0])
    err = abs(w0 - 1.0 / math.pi)
    return err < 1e-6, f"|W(0,0) - 1/pi| = {err:.3e} (tol 1e-6)"


def _check_coherence_identity() -> Tuple[bool, str]:
    cat = catmod.CatState(2.3, -2.3)
    s = np.linspace(1.0, 0.0, 41) * np.exp(1j * np.linspace(0.0, 2.0, 41))
    trace = catmod.coherence_factor(cat, s)
    balanced = np.exp(-2.0 * cat.mean_photons * (1.0 - np.abs(s) ** 2))
    err = np.abs(trace.G - balanced).max()
    exact_start = trace.G[0] == 1.0
    ok = err < 1e-12 and exact_start
    return ok, (
        f"max |general-form - balanced-form| {err:.3e} (tol 1e-12), "
        f"G(0) == 1 exactly: {exact_start}"
    )


def run_selftest(mutate: Optional[str] = None) -> SelftestReport:
    """Run every invariant check; `mutate` injects a known defect.

    mutate='hamiltonian-sign' flips the chain Hamiltonian sign (the Bessel
    oracle must fail); mutate='small-truncation' forces the chain shorter
    than the light cone (the truncation check must fail).
    """
    if mutate not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}; expected one of "
                         f"{MUTATIONS}")
    checks = [
        ("lattice-unitarity", _check_unitarity()),
        ("bessel-oracle", _check_bessel(mutate)),
        ("truncation", _check_truncation(mutate)),
        ("golden-rule", _check_golden_rule()),
        ("estimator-roundtrip", _check_estimator()),
        ("bpm-convergence", _check_bpm_convergence()),
        ("wigner-vacuum", _check_wigner_vacuum()),
        ("coherence-identity", _check_coherence_identity()),
    ]
    return SelftestReport(
        checks=[(name, ok, detail) for name, (ok, detail) in checks]
    )
