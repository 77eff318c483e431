"""Lumped single-compartment reduction.

Merging the heart/lung and peripheral compartments (``gamma1 = gamma2``)
and letting the ECMO transit time vanish turns the VV models into

    gamma2' = beta / (V1 + V2) * (1 - gamma2)

with ``beta = Q1`` for typical ports and ``aQ Q1 / (aQ + Q1)`` for switched
ports.  Its solution is the classical exponential washout of old plasma.

The reduction is derived for VV ECMO.  ``ecmo_mode`` only selects which
volume relations give ``V1 + V2``; passing VA extrapolates the formula.
"""

from __future__ import annotations

import numpy as np

from .kinetics import EcmoMode, ModelParameters, PortMode, compartment_volumes


def _scalar_or_array(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def lumped_beta(p: ModelParameters, port_mode: PortMode) -> float:
    """Effective exchange flow in mL/s."""
    if PortMode(port_mode) is PortMode.TYPICAL:
        return p.Q1
    aQ = p.alpha_Q
    return aQ * p.Q1 / (aQ + p.Q1)


def native_volume(p: ModelParameters, ecmo_mode: EcmoMode = EcmoMode.VV) -> float:
    V1, V2 = compartment_volumes(p, ecmo_mode)
    return V1 + V2


def lumped_solution(p, ecmo_mode=EcmoMode.VV, port_mode=PortMode.TYPICAL, t=0.0):
    """New-plasma fraction ``1 - exp(-beta t / (V1 + V2))``; ``t`` may be an array."""
    t = np.asarray(t, dtype=float)
    rate = lumped_beta(p, port_mode) / native_volume(p, ecmo_mode)
    return _scalar_or_array(-np.expm1(-rate * t))


def plasma_volumes_processed(p, t, ecmo_mode=EcmoMode.VV):
    """``Q1 t / (V1 + V2)``: device throughput in units of native plasma volume."""
    return _scalar_or_array(p.Q1 * np.asarray(t, dtype=float) / native_volume(p, ecmo_mode))


def fraction_old_remaining(pvp, p: ModelParameters, port_mode=PortMode.TYPICAL):
    """Old plasma left after ``pvp`` plasma volumes have been processed.

    Switched ports recirculate part of the returned plasma, which scales the
    effective number of volumes by ``aQ / (aQ + Q1)``.
    """
    pvp = np.asarray(pvp, dtype=float)
    if PortMode(port_mode) is PortMode.SWITCHED:
        aQ = p.alpha_Q
        pvp = pvp * (aQ / (aQ + p.Q1))
    return _scalar_or_array(np.exp(-pvp))
