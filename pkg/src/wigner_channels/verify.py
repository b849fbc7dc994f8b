"""Cross-validation matrix: closed forms vs quadrature vs Fock-space oracle."""

from __future__ import annotations

import time
import warnings
from dataclasses import asdict, dataclass
from math import log

import numpy as np

from . import __version__
from .evolution import (ChannelParams, evolve_pacs, evolve_pacs_damping, evolve_pacs_thermal,
                        evolve_wigner, positivity_time)
from .oracle import evolve_density, oracle_n_max, pnd_from_density, wigner_from_density
from .photon import pnd_evolved, pnd_pacs_closed
from .states import Coherent, Number, Pacs, fock_density

GRID_5 = np.linspace(-2.0, 2.0, 5)
POINTS_5x5 = (GRID_5[None, :] + 1j * GRID_5[:, None]).ravel()
LN2_2 = 0.5 * log(2.0)

# The literature thermal-bath closed form is checked but, by default, does
# not decide the exit status.
SUSPECT_SUITE = "thermal_closed_form"


@dataclass
class Cell:
    suite: str
    name: str
    max_deviation: float
    tolerance: float
    passed: bool


def _cell(suite, name, dev, tol) -> Cell:
    dev = float(dev)
    return Cell(suite, name, dev, tol, bool(dev <= tol))


def _state_name(s) -> str:
    if isinstance(s, Number):
        return f"number({s.n})"
    if isinstance(s, Coherent):
        return f"coherent({s.z.real:g})"
    return f"pacs({s.m},{s.z.real:g})"


def damping_closed_cells(ms=(1, 2, 3), kts=(0.1, LN2_2, 1.0, 3.0), tol=1e-8):
    for m in ms:
        for kt in kts:
            p = ChannelParams.damping(1.0, kt)
            q = evolve_wigner(Pacs(m, 1.0), p, POINTS_5x5)
            c = evolve_pacs_damping(m, 1.0, 1.0, kt, POINTS_5x5)
            yield _cell("damping_closed_vs_quadrature", f"m={m} kt={kt:.6g}",
                        np.max(np.abs(q - c)), tol)


def oracle_cells(channels, states=(Number(1), Coherent(1.0), Pacs(1, 1.0), Pacs(2, 1.0)),
                 w_tol=1e-4, p_tol=1e-5, n_max_pnd=8):
    for p in channels:
        label = (f"damping kt={p.t:.6g}" if p.nbar == 0 and p.g == 0
                 else f"{p.kind.value} nbar={p.nbar:g} kt={p.kappa * p.t:.6g}")
        for s in states:
            rho = evolve_density(fock_density(s, oracle_n_max(s, p)), p)
            w_or = wigner_from_density(rho, POINTS_5x5)
            w_q = evolve_wigner(s, p, POINTS_5x5)
            name = f"{_state_name(s)} {label}"
            yield _cell("oracle_wigner", name, np.max(np.abs(w_or - w_q)), w_tol)
            if isinstance(s, Pacs):
                w_c = evolve_pacs(s.m, s.z, p, POINTS_5x5)
                yield _cell("oracle_wigner_convolution_closed", name,
                            np.max(np.abs(w_or - w_c)), w_tol)
            p_or = pnd_from_density(rho, n_max_pnd + 1).probs
            p_q = pnd_evolved(s, p, n_max_pnd + 1).probs
            yield _cell("oracle_pnd", name, np.max(np.abs(p_or - p_q)), p_tol)
            if isinstance(s, Pacs):
                # A >= 1 cells fall back to quadrature; the warning is expected here
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    p_c = np.array([pnd_pacs_closed(s.m, s.z, p, n)
                                    for n in range(n_max_pnd + 1)])
                yield _cell("oracle_pnd_closed", name, np.max(np.abs(p_or - p_c)), p_tol)


def thermal_closed_cells(tol=1e-6):
    """Literature thermal-bath formula against kernel quadrature."""
    m, z, nbar, kt = 1, 1.0, 0.5, 1.0
    p = ChannelParams.thermal(1.0, nbar, kt)
    q = evolve_wigner(Pacs(m, z), p, POINTS_5x5)
    c = evolve_pacs_thermal(m, z, 1.0, nbar, kt, POINTS_5x5)
    yield _cell(SUSPECT_SUITE, f"m={m} z={z:g} nbar={nbar:g} kt={kt:g}",
                np.max(np.abs(q - c)), tol)
    yield _cell(SUSPECT_SUITE + "_nbar0", f"m={m} z={z:g} nbar=0 kt={kt:g}",
                np.max(np.abs(evolve_pacs_thermal(m, z, 1.0, 0.0, kt, POINTS_5x5)
                              - evolve_pacs_damping(m, z, 1.0, kt, POINTS_5x5))), 1e-8)


def positivity_grid_min(m: int, z: complex, nbar: float, kt: float, n: int = 41,
                        half: float = 3.0) -> float:
    xs = np.linspace(-half, half, n)
    grid = xs[None, :] + 1j * xs[:, None]
    p = ChannelParams.thermal(1.0, nbar, kt) if nbar else ChannelParams.damping(1.0, kt)
    return float(np.min(evolve_pacs(m, z, p, grid)))


def positivity_cells(ms=(1, 2), nbars=(0.0, 0.5, 1.0), tol=1e-9):
    for m in ms:
        for nbar in nbars:
            tc = positivity_time(nbar)
            for factor in (1.0, 1.2):
                wmin = positivity_grid_min(m, 1.0, nbar, factor * tc)
                yield _cell("positivity", f"m={m} nbar={nbar:g} t={factor:g}tc",
                            max(0.0, -wmin), tol)
    wmin = positivity_grid_min(1, 1.0, 0.0, 0.5 * positivity_time(0.0))
    # negativity must persist before the threshold: deviation is the shortfall
    yield _cell("negativity_before_tc", "m=1 nbar=0 t=0.5tc", max(0.0, wmin + 1e-3), 0.0)


def run_verify(quick: bool = False, strict: bool = False) -> dict:
    """Run the cross-validation matrix and return a JSON-ready report.

    ``quick`` restricts to damping-channel cells.  The literature thermal-bath
    closed form is reported under ``eq412_status`` and only counts towards
    ``ok`` when ``strict`` is set.
    """
    start = time.perf_counter()
    cells: list[Cell] = []
    cells += damping_closed_cells(kts=(0.1, LN2_2, 1.0) if quick else (0.1, LN2_2, 1.0, 3.0))
    damping = [ChannelParams.damping(1.0, kt) for kt in (0.2, LN2_2, 1.0)]
    thermal = [] if quick else [ChannelParams.thermal(1.0, 0.5, kt) for kt in (0.2, 1.0)]
    cells += oracle_cells(damping + thermal)
    if not quick:
        cells += positivity_cells()
    suspect = list(thermal_closed_cells())
    main = cells + [suspect[1]]
    status = "PASS" if suspect[0].passed else "FAIL"
    ok = all(c.passed for c in main) and (status == "PASS" or not strict)
    return {
        "tool_version": __version__,
        "quick": quick,
        "strict": strict,
        "n_cells": len(main) + 1,
        "cells": [asdict(c) for c in main],
        "eq412_status": status,
        "eq412_max_deviation": suspect[0].max_deviation,
        "eq412_tolerance": suspect[0].tolerance,
        "eq412_cell": asdict(suspect[0]),
        "failures": [asdict(c) for c in main if not c.passed],
        "ok": ok,
        "elapsed_s": time.perf_counter() - start,
    }
