"""Target two-qubit states and heralded projection of interferometer outputs.

The target is the dual-rail state ``cos(alpha)|1010> + sin(alpha)|0101>`` on
four signal modes. A herald fixes the photon counts on the auxiliary modes;
projecting onto it leaves an unnormalized signal state ``chi`` whose squared
norm is the heralding probability.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fock import PureState, _basis, transition_amplitudes

ALPHA_MAX = 0.25 * math.pi
SIGNAL_MODES = 4
SIGNAL_PHOTONS = 2
# below this heralding probability the fidelity is reported as undefined
P_UNDEFINED = 1e-14

KET_1010 = (1, 0, 1, 0)
KET_0101 = (0, 1, 0, 1)


class UndefinedFidelityError(ValueError):
    """Raised when the heralded component is (numerically) empty."""


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= ALPHA_MAX + 1e-15:
        raise ValueError(f"alpha must lie in [0, pi/4], got {alpha!r}")
    return min(alpha, ALPHA_MAX)


@dataclass(frozen=True)
class TargetState:
    alpha: float
    state: PureState


def target_state(alpha: float) -> TargetState:
    alpha = check_alpha(alpha)
    state = PureState.from_dict(
        SIGNAL_MODES,
        SIGNAL_PHOTONS,
        {KET_1010: math.cos(alpha), KET_0101: math.sin(alpha)},
    )
    return TargetState(alpha, state)


def target_vector(alpha: float) -> np.ndarray:
    return target_state(alpha).state.amplitudes


@dataclass(frozen=True)
class HeraldSpec:
    """Split of the output modes into signal and auxiliary, plus the detection pattern.

    ``signal_modes`` is ordered: signal occupation ``(s0, s1, s2, s3)`` means
    ``s_k`` photons in output mode ``signal_modes[k]``.
    """

    total_modes: int
    signal_modes: tuple[int, ...]
    aux_modes: tuple[int, ...]
    pattern: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signal_modes", tuple(int(m) for m in self.signal_modes))
        object.__setattr__(self, "aux_modes", tuple(int(m) for m in self.aux_modes))
        object.__setattr__(self, "pattern", tuple(int(k) for k in self.pattern))
        if sorted(self.signal_modes + self.aux_modes) != list(range(self.total_modes)):
            raise ValueError("signal and auxiliary modes must partition the output modes")
        if len(self.pattern) != len(self.aux_modes):
            raise ValueError("detection pattern needs one count per auxiliary mode")
        if any(k < 0 for k in self.pattern):
            raise ValueError(f"negative count in detection pattern {self.pattern}")

    @classmethod
    def one_mode(cls) -> "HeraldSpec":
        """Five modes, two photons detected in the last one."""
        return cls(5, (0, 1, 2, 3), (4,), (2,))

    @classmethod
    def two_mode(cls) -> "HeraldSpec":
        """Six modes, one photon detected in each of the last two."""
        return cls(6, (0, 1, 2, 3), (4, 5), (1, 1))

    @property
    def heralded_photons(self) -> int:
        return sum(self.pattern)

    def default_input(self) -> tuple[int, ...]:
        """One photon in each of the first four input modes, vacuum elsewhere."""
        return tuple(1 if j < 4 else 0 for j in range(self.total_modes))

    def full_occupation(self, signal: Sequence[int]) -> tuple[int, ...]:
        occ = [0] * self.total_modes
        for m, k in zip(self.signal_modes, signal):
            occ[m] = k
        for m, k in zip(self.aux_modes, self.pattern):
            occ[m] = k
        return tuple(occ)

    def all_patterns(self, photons: int) -> list[tuple[int, ...]]:
        """Every auxiliary outcome compatible with ``photons`` photons in total."""
        n_aux = len(self.aux_modes)
        return [p for k in range(photons + 1) for p in _basis(n_aux, k)] if n_aux else [()]

    def with_pattern(self, pattern: Sequence[int]) -> "HeraldSpec":
        return HeraldSpec(self.total_modes, self.signal_modes, self.aux_modes, tuple(pattern))


@functools.lru_cache(maxsize=None)
def _heralded_outputs(spec: HeraldSpec, photons: int) -> tuple[tuple[int, ...], ...]:
    n_signal = photons - spec.heralded_photons
    return tuple(spec.full_occupation(s) for s in _basis(len(spec.signal_modes), n_signal))


def project_herald(psi: PureState, spec: HeraldSpec) -> PureState:
    """Unnormalized signal state left after detecting ``spec.pattern``."""
    if psi.modes != spec.total_modes:
        raise ValueError(f"state has {psi.modes} modes, herald expects {spec.total_modes}")
    n_signal = psi.photons - spec.heralded_photons
    if n_signal < 0:
        raise ValueError(
            f"pattern {spec.pattern} needs {spec.heralded_photons} photons, state has {psi.photons}"
        )
    index = [psi.index(t) for t in _heralded_outputs(spec, psi.photons)]
    return PureState(len(spec.signal_modes), n_signal, psi.amplitudes[index])


def heralded_amplitudes(u: np.ndarray, spec: HeraldSpec, inp: Sequence[int]) -> np.ndarray:
    """Heralded signal amplitudes straight from ``U`` (batched over leading axes).

    Only the permanents that survive the projection are computed. No unitarity
    check; this is the optimizer's inner loop.
    """
    photons = sum(inp)
    if photons < spec.heralded_photons:
        raise ValueError(
            f"pattern {spec.pattern} needs {spec.heralded_photons} photons, input has {photons}"
        )
    return transition_amplitudes(u, inp, _heralded_outputs(spec, photons))


def success_probability(chi: PureState) -> float:
    return chi.norm_squared()


def fidelity(chi: PureState, target: TargetState) -> float:
    p = success_probability(chi)
    if p < P_UNDEFINED:
        raise UndefinedFidelityError(f"heralding probability {p:.3e} too small for a fidelity")
    overlap = np.vdot(chi.amplitudes, target.state.amplitudes)
    return float(abs(overlap) ** 2 / p)


@dataclass(frozen=True)
class HeraldOutcome:
    chi: PureState
    p_tilde: float
    fidelity: float | None

    @property
    def infidelity(self) -> float | None:
        return None if self.fidelity is None else 1.0 - self.fidelity


def herald_outcome(psi: PureState, spec: HeraldSpec, target: TargetState) -> HeraldOutcome:
    chi = project_herald(psi, spec)
    p = success_probability(chi)
    try:
        f = fidelity(chi, target)
    except UndefinedFidelityError:
        f = None
    return HeraldOutcome(chi, p, f)


def probability_and_fidelity(chi: np.ndarray, target: np.ndarray):
    """``(p_tilde, F)`` for (batched) raw amplitude vectors; ``F = nan`` where undefined."""
    chi = np.asarray(chi)
    p = np.einsum("...k,...k->...", chi.conj(), chi).real
    overlap = np.abs(chi @ np.conj(target)) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(p < P_UNDEFINED, np.nan, overlap / np.where(p > 0, p, 1.0))
    return p, f
