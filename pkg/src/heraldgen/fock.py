"""Fock-basis bookkeeping and multi-photon evolution through linear interferometers.

Occupation vectors are plain tuples of non-negative ints, one entry per mode.
Every basis listing in the package uses the same canonical order: lexicographic
descending on the counts, so ``(M, 0, ..., 0)`` comes first and ``(0, ..., 0, M)``
last.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_PHOTONS = 16
FACTORIALS = tuple(math.factorial(k) for k in range(MAX_PHOTONS + 1))

UNITARY_ATOL = 1e-10


def enumerate_basis(modes: int, photons: int) -> list[tuple[int, ...]]:
    """All occupation vectors with ``photons`` bosons in ``modes`` modes.

    >>> enumerate_basis(2, 1)
    [(1, 0), (0, 1)]
    """
    return list(_basis(modes, photons))


@functools.lru_cache(maxsize=None)
def _basis(modes: int, photons: int) -> tuple[tuple[int, ...], ...]:
    if modes < 1:
        raise ValueError(f"need at least one mode, got {modes}")
    if photons < 0:
        raise ValueError(f"photon number must be non-negative, got {photons}")
    if photons > MAX_PHOTONS:
        raise ValueError(f"at most {MAX_PHOTONS} photons supported")

    def rec(n_modes, n_left):
        if n_modes == 1:
            yield (n_left,)
            return
        for k in range(n_left, -1, -1):
            for rest in rec(n_modes - 1, n_left - k):
                yield (k,) + rest

    return tuple(rec(modes, photons))


@functools.lru_cache(maxsize=None)
def _basis_index(modes: int, photons: int) -> dict[tuple[int, ...], int]:
    return {occ: i for i, occ in enumerate(_basis(modes, photons))}


def basis_size(modes: int, photons: int) -> int:
    return math.comb(photons + modes - 1, photons)


def occupation_factorial(occ: Iterable[int]) -> int:
    out = 1
    for k in occ:
        out *= FACTORIALS[k]
    return out


def mode_indices(occ: Sequence[int]) -> np.ndarray:
    """Mode labels repeated by multiplicity, e.g. ``(2, 0, 1) -> [0, 0, 2]``."""
    return np.repeat(np.arange(len(occ)), occ)


def _check_occupation(occ: Sequence[int]) -> tuple[int, ...]:
    occ = tuple(int(k) for k in occ)
    if any(k < 0 for k in occ):
        raise ValueError(f"negative occupation in {occ}")
    return occ


# --- permanents -------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _gray_walk(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column flipped, add/remove flag and subset parity for each Gray-code step."""
    cols = np.empty(2**n - 1, dtype=np.intp)
    add = np.empty(2**n - 1, dtype=bool)
    parity = np.empty(2**n - 1, dtype=np.int8)
    prev = 0
    for k in range(1, 2**n):
        code = k ^ (k >> 1)
        diff = code ^ prev
        j = diff.bit_length() - 1
        cols[k - 1] = j
        add[k - 1] = bool(code & diff)
        parity[k - 1] = bin(code).count("1") & 1
        prev = code
    return cols, add, parity


def permanents(mats: np.ndarray) -> np.ndarray:
    """Permanents of a stack of square matrices, shape ``(..., n, n) -> (...)``.

    Ryser's inclusion-exclusion formula with a Gray-code walk over column
    subsets, so each step updates the row sums with a single column:
    ``O(2**n * n)`` per matrix, vectorized across the leading axes.
    """
    mats = np.asarray(mats)
    if mats.ndim < 2 or mats.shape[-1] != mats.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {mats.shape}")
    n = mats.shape[-1]
    lead = mats.shape[:-2]
    dtype = np.result_type(mats.dtype, np.complex128)
    if n == 0:
        return np.ones(lead, dtype=dtype)

    cols, add, parity = _gray_walk(n)
    row_sums = np.zeros(lead + (n,), dtype=dtype)
    total = np.zeros(lead, dtype=dtype)
    for j, plus, odd in zip(cols, add, parity):
        if plus:
            row_sums += mats[..., :, j]
        else:
            row_sums -= mats[..., :, j]
        term = row_sums.prod(axis=-1)
        # sign (-1)**(n - |S|)
        if (n - odd) & 1:
            total -= term
        else:
            total += term
    return total


def permanent(a: np.ndarray) -> complex:
    """Permanent of a single square matrix (``perm`` of the 0x0 matrix is 1)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    return complex(permanents(a))


def permanent_naive(a: np.ndarray) -> complex:
    """Direct sum over all permutations; an oracle for small matrices only."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > 8:
        raise ValueError(f"naive permanent limited to n <= 8, got n = {n}")
    rows = range(n)
    return complex(sum(np.prod(a[rows, sigma]) for sigma in itertools.permutations(rows)))


# --- states -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PureState:
    """Dense amplitude vector over the canonical basis of fixed mode/photon number."""

    modes: int
    photons: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (basis_size(self.modes, self.photons),):
            raise ValueError(
                f"expected {basis_size(self.modes, self.photons)} amplitudes for "
                f"{self.modes} modes / {self.photons} photons, got shape {amps.shape}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_occupation(cls, occ: Sequence[int]) -> "PureState":
        occ = _check_occupation(occ)
        modes, photons = len(occ), sum(occ)
        amps = np.zeros(basis_size(modes, photons), dtype=complex)
        amps[_basis_index(modes, photons)[occ]] = 1.0
        return cls(modes, photons, amps)

    @classmethod
    def from_dict(cls, modes: int, photons: int, amps: dict) -> "PureState":
        vec = np.zeros(basis_size(modes, photons), dtype=complex)
        index = _basis_index(modes, photons)
        for occ, c in amps.items():
            occ = _check_occupation(occ)
            if occ not in index:
                raise ValueError(f"{occ} is not a {modes}-mode, {photons}-photon state")
            vec[index[occ]] += c
        return cls(modes, photons, vec)

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return _basis(self.modes, self.photons)

    def index(self, occ: Sequence[int]) -> int:
        return _basis_index(self.modes, self.photons)[tuple(occ)]

    def amplitude(self, occ: Sequence[int]) -> complex:
        occ = tuple(occ)
        if len(occ) != self.modes or sum(occ) != self.photons:
            raise ValueError(f"{occ} does not belong to this state's basis")
        return complex(self.amplitudes[self.index(occ)])

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def as_dict(self, atol: float = 0.0) -> dict[tuple[int, ...], complex]:
        return {occ: complex(c) for occ, c in zip(self.basis, self.amplitudes) if abs(c) > atol}

    def _check_compatible(self, other: "PureState"):
        if (self.modes, self.photons) != (other.modes, other.photons):
            raise ValueError(
                f"state mismatch: ({self.modes} modes, {self.photons} photons) vs "
                f"({other.modes} modes, {other.photons} photons)"
            )

    def __add__(self, other: "PureState") -> "PureState":
        self._check_compatible(other)
        return PureState(self.modes, self.photons, self.amplitudes + other.amplitudes)

    def __mul__(self, c: complex) -> "PureState":
        return PureState(self.modes, self.photons, c * self.amplitudes)

    __rmul__ = __mul__

    def __repr__(self):
        terms = ", ".join(f"{occ}: {c:.6g}" for occ, c in self.as_dict(1e-12).items())
        return f"PureState(modes={self.modes}, photons={self.photons}, {{{terms}}})"


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    a._check_compatible(b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


# --- evolution --------------------------------------------------------------


def check_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"transfer matrix must be square, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])), initial=0.0)
    if err > atol:
        raise ValueError(f"transfer matrix is not unitary (max |U^H U - I| = {err:.3e})")
    return u


@functools.lru_cache(maxsize=None)
def _row_indices(outputs: tuple[tuple[int, ...], ...]) -> tuple[np.ndarray, np.ndarray]:
    rows = np.array([mode_indices(t) for t in outputs], dtype=np.intp)
    norms = np.sqrt(np.array([occupation_factorial(t) for t in outputs], dtype=float))
    return rows, norms


def transition_amplitudes(
    u: np.ndarray, inp: Sequence[int], outputs: Sequence[Sequence[int]]
) -> np.ndarray:
    """Amplitudes ``<t|U|s>`` for the given outputs ``t``, no unitarity check.

    ``u`` may carry leading batch axes, ``(..., N, N)``; the result then has
    shape ``(..., len(outputs))``. Each amplitude is
    ``perm(U[t, s]) / sqrt(t! s!)`` with rows and columns repeated by occupation.
    """
    inp = _check_occupation(inp)
    outputs = tuple(tuple(int(k) for k in t) for t in outputs)
    photons = sum(inp)
    if any(sum(t) != photons for t in outputs):
        raise ValueError("output occupations must carry the same photon number as the input")
    u = np.asarray(u)
    cols = mode_indices(inp)
    if not outputs:
        return np.zeros(u.shape[:-2] + (0,), dtype=complex)
    rows, norms = _row_indices(outputs)
    sub = u[..., rows[:, :, None], cols[None, None, :]]
    return permanents(sub) / (norms * math.sqrt(occupation_factorial(inp)))


def evolve(inp: Sequence[int], u: np.ndarray, atol: float = UNITARY_ATOL) -> PureState:
    """Output state of Fock input ``inp`` after the interferometer ``u``."""
    inp = _check_occupation(inp)
    u = check_unitary(u, atol)
    if len(inp) != u.shape[0]:
        raise ValueError(f"input has {len(inp)} modes but U is {u.shape[0]}x{u.shape[0]}")
    basis = _basis(len(inp), sum(inp))
    return PureState(len(inp), sum(inp), transition_amplitudes(u, inp, basis))


def evolve_state(state: PureState, u: np.ndarray, atol: float = UNITARY_ATOL) -> PureState:
    """Evolve a superposition by linearity over its basis components."""
    u = check_unitary(u, atol)
    if state.modes != u.shape[0]:
        raise ValueError(f"state has {state.modes} modes but U is {u.shape[0]}x{u.shape[0]}")
    out = np.zeros_like(state.amplitudes)
    basis = state.basis
    for occ, c in zip(basis, state.amplitudes):
        if c != 0:
            out = out + c * transition_amplitudes(u, occ, basis)
    return PureState(state.modes, state.photons, out)
