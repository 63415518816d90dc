"""Closed-form success-probability curves and the compact one-mode-heralded scheme."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .fock import evolve
from .heralding import (
    HeraldOutcome,
    HeraldSpec,
    check_alpha,
    herald_outcome,
    target_state,
)
from .interferometer import BeamSplitter, PhaseShift, Scheme, transmissivity_angle

P_CZ_POSTSELECTED = 1.0 / 9.0
P_CZ_HERALDED = 1.0 / 16.0


def analytic_p_one_mode(alpha: float) -> float:
    alpha = check_alpha(alpha)
    return 1.0 / (6.0 * (1.0 + math.sin(alpha) ** 2))


def tau_of_alpha(alpha: float) -> float:
    """Transmissivity of the programmable splitter that yields the state at ``alpha``."""
    alpha = check_alpha(alpha)
    return 1.0 / (1.0 + 2.0 * math.tan(alpha) ** 2)


def cphase_p(phi: float) -> float:
    """Success probability of the post-selected CPHASE(phi) gate."""
    phi = float(phi)
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi!r}")
    s = math.sin(0.5 * phi)
    return (1.0 + 2.0 * s + 2.0**1.5 * math.sin(0.25 * (math.pi - phi)) * math.sqrt(s)) ** -2


def best_gate_based_p(alpha: float, heralded_cz: bool = False) -> float:
    """Envelope of the CZ-based and CPHASE-based circuits at ``phi = 4 alpha``."""
    alpha = check_alpha(alpha)
    p_cz = P_CZ_HERALDED if heralded_cz else P_CZ_POSTSELECTED
    return max(p_cz, cphase_p(4.0 * alpha))


def _cphase_curve(alpha: float) -> float:
    return cphase_p(4.0 * check_alpha(alpha))


def _cz_curve(alpha: float) -> float:
    check_alpha(alpha)
    return P_CZ_POSTSELECTED


REFERENCE_KINDS: dict[str, Callable[[float], float]] = {
    "one_mode_analytic": analytic_p_one_mode,
    "cphase_postselected": _cphase_curve,
    "cz_constant": _cz_curve,
    "best_gate_based": best_gate_based_p,
}


@dataclass(frozen=True)
class ReferenceCurve:
    kind: str
    samples: tuple[tuple[float, float], ...]


def reference_curve(kind: str, alphas: Sequence[float]) -> ReferenceCurve:
    try:
        fn = REFERENCE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown reference curve {kind!r}; choose from {sorted(REFERENCE_KINDS)}")
    return ReferenceCurve(kind, tuple((float(a), fn(a)) for a in alphas))


# --- compact five-mode scheme -----------------------------------------------
#
# Photons enter modes 0, 1, 2 and 4; mode 3 starts in vacuum. The programmable
# splitter on (3, 4) comes first and shares the mode-4 photon between the two
# input configurations that produce |1010> and |0101> respectively. The static
# part is four real splitters plus one quarter-wave phase. Two photons are
# detected in output mode 3; qubit 1 lives on modes (0, 2), qubit 2 on (1, 4).

COMPACT_INPUT = (1, 1, 1, 0, 1)
COMPACT_HERALD = HeraldSpec(5, (0, 2, 1, 4), (3,), (2,))
COMPACT_STATIC_TAUS = (0.5, 2.0 / 3.0, 0.5, 0.5)
COMPACT_STATIC_PHASE = 0.5 * math.pi
TAU_LAW = "tau = 1/(1 + 2*tan(alpha)**2)"


def compact_scheme(alpha: float, tau_law: Callable[[float], float] = tau_of_alpha) -> Scheme:
    """Element list of the compact scheme programmed for ``alpha``.

    ``tau_law`` exists so that verification can run a deliberately wrong law
    as a negative control.
    """
    alpha = check_alpha(alpha)
    t1, t2, t3, t4 = (transmissivity_angle(t) for t in COMPACT_STATIC_TAUS)
    elements = (
        BeamSplitter((3, 4), transmissivity_angle(tau_law(alpha))),
        BeamSplitter((0, 1), t1),
        BeamSplitter((1, 2), t2),
        PhaseShift(0, COMPACT_STATIC_PHASE),
        BeamSplitter((0, 1), t3),
        BeamSplitter((2, 3), t4),
    )
    return Scheme(5, elements, {"element_index": 0, "law": TAU_LAW})


def compact_scheme_unitary(
    alpha: float, tau_law: Callable[[float], float] = tau_of_alpha
) -> np.ndarray:
    return compact_scheme(alpha, tau_law).unitary()


def compact_scheme_outcome(
    alpha: float, tau_law: Callable[[float], float] = tau_of_alpha
) -> HeraldOutcome:
    """Full simulation: evolve the input, project on the herald, compare with the target."""
    psi = evolve(COMPACT_INPUT, compact_scheme_unitary(alpha, tau_law))
    return herald_outcome(psi, COMPACT_HERALD, target_state(alpha))
