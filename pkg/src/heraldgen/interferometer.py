"""Transfer matrices of beam-splitter meshes.

Modes are indexed from 0. A beam splitter on ``(m, m + 1)`` acts as

    T(t1, t2) = [[exp(i t2) sin t1,  cos t1],
                 [exp(i t2) cos t1, -sin t1]]

where ``t1`` sets the transmissivity ``tau = cos(t1)**2`` and ``t2`` is the
phase difference between the two inputs. Layouts are rectangular: layer ``l``
couples ``(0, 1), (2, 3), ...`` when ``l`` is even and ``(1, 2), (3, 4), ...``
when odd. ``N`` layers hold ``N(N-1)/2`` splitters; after them a diagonal of
``N - 1`` output phases is applied, the last mode being the phase reference.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

HALF_PI = 0.5 * math.pi


def wrap_phase(x):
    """Map angles into ``[-pi, pi)``."""
    return (np.asarray(x) + math.pi) % (2 * math.pi) - math.pi


def beam_splitter(theta_prime: float, theta_double_prime: float = 0.0) -> np.ndarray:
    s, c = math.sin(theta_prime), math.cos(theta_prime)
    e = complex(math.cos(theta_double_prime), math.sin(theta_double_prime))
    return np.array([[e * s, c], [e * c, -s]], dtype=complex)


def transmissivity_angle(tau: float) -> float:
    """``theta'`` with ``cos(theta')**2 == tau``."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {tau}")
    return math.acos(math.sqrt(tau))


def embed_two_mode(t: np.ndarray, m: int, n_modes: int) -> np.ndarray:
    """Place a 2x2 block on modes ``(m, m + 1)`` of an ``n_modes`` identity."""
    t = np.asarray(t)
    if t.shape != (2, 2):
        raise ValueError(f"expected a 2x2 block, got shape {t.shape}")
    if not 0 <= m < n_modes - 1:
        raise ValueError(f"mode pair ({m}, {m + 1}) out of range for {n_modes} modes")
    u = np.eye(n_modes, dtype=complex)
    u[m : m + 2, m : m + 2] = t
    return u


def param_count(n_modes: int) -> int:
    if n_modes < 2:
        raise ValueError(f"a mesh needs at least two modes, got {n_modes}")
    return n_modes**2 - 1


@functools.lru_cache(maxsize=None)
def rectangular_layout(n_modes: int, layers: int | None = None) -> tuple[int, ...]:
    """Top mode ``m`` of every splitter ``(m, m + 1)``, in the order applied."""
    if n_modes < 2:
        raise ValueError(f"a mesh needs at least two modes, got {n_modes}")
    layers = n_modes if layers is None else layers
    if layers < 0:
        raise ValueError(f"layer count must be non-negative, got {layers}")
    return tuple(m for l in range(layers) for m in range(l % 2, n_modes - 1, 2))


def _apply_splitters(u, layout, tp, tpp):
    """Left-multiply the row stack ``u`` (..., N, N) by the splitters in place."""
    s, c = np.sin(tp), np.cos(tp)
    e = np.exp(1j * tpp)
    for q, m in enumerate(layout):
        top = u[..., m, :].copy()
        bottom = u[..., m + 1, :]
        sq, cq, eq = s[..., q, None], c[..., q, None], e[..., q, None]
        u[..., m, :] = eq * sq * top + cq * bottom
        u[..., m + 1, :] = eq * cq * top - sq * bottom
    return u


def compose_mesh_batch(
    n_modes: int,
    layout: Sequence[int],
    theta_prime: np.ndarray,
    theta_double_prime: np.ndarray,
    output_phases: np.ndarray,
) -> np.ndarray:
    """Vectorized mesh composition; parameter arrays share leading batch axes."""
    theta_prime = np.asarray(theta_prime, dtype=float)
    lead = theta_prime.shape[:-1]
    u = np.broadcast_to(np.eye(n_modes, dtype=complex), lead + (n_modes, n_modes)).copy()
    _apply_splitters(u, layout, theta_prime, np.asarray(theta_double_prime, dtype=float))
    phases = np.asarray(output_phases, dtype=float)
    d = np.exp(1j * np.concatenate([phases, np.zeros(lead + (1,))], axis=-1))
    return d[..., :, None] * u


@dataclass(frozen=True)
class MeshParameterSet:
    """Parameters of a rectangular mesh with ``layers`` layers (full depth by default).

    The flat vector form used by the optimizers is
    ``[theta_prime..., theta_double_prime..., output_phases...]``.
    """

    n_modes: int
    theta_prime: np.ndarray
    theta_double_prime: np.ndarray
    output_phases: np.ndarray
    layers: int | None = None

    def __post_init__(self):
        q = len(self.layout)
        for name, size in [
            ("theta_prime", q),
            ("theta_double_prime", q),
            ("output_phases", self.n_modes - 1),
        ]:
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (size,):
                raise ValueError(f"{name} must have length {size}, got shape {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def layout(self) -> tuple[int, ...]:
        return rectangular_layout(self.n_modes, self.layers)

    @staticmethod
    def size(n_modes: int, layers: int | None = None) -> int:
        return 2 * len(rectangular_layout(n_modes, layers)) + n_modes - 1

    @classmethod
    def from_vector(cls, n_modes: int, x, layers: int | None = None) -> "MeshParameterSet":
        x = np.asarray(x, dtype=float)
        q = len(rectangular_layout(n_modes, layers))
        if x.shape != (2 * q + n_modes - 1,):
            raise ValueError(
                f"expected {2 * q + n_modes - 1} parameters for {n_modes} modes, got {x.shape}"
            )
        return cls(n_modes, x[:q], x[q : 2 * q], x[2 * q :], layers)

    @classmethod
    def random(cls, n_modes: int, rng: np.random.Generator, layers: int | None = None):
        q = len(rectangular_layout(n_modes, layers))
        return cls(
            n_modes,
            rng.uniform(0.0, HALF_PI, q),
            rng.uniform(-math.pi, math.pi, q),
            rng.uniform(-math.pi, math.pi, n_modes - 1),
            layers,
        )

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.theta_prime, self.theta_double_prime, self.output_phases])

    def elements(self) -> list["Element"]:
        out: list[Element] = [
            BeamSplitter((m, m + 1), float(a), float(b))
            for m, a, b in zip(self.layout, self.theta_prime, self.theta_double_prime)
        ]
        out += [PhaseShift(j, float(v)) for j, v in enumerate(self.output_phases)]
        return out


def compose_mesh(p: MeshParameterSet) -> np.ndarray:
    return compose_mesh_batch(
        p.n_modes, p.layout, p.theta_prime, p.theta_double_prime, p.output_phases
    )


def split_mesh_vector(n_modes: int, x: np.ndarray, layers: int | None = None):
    """Split flat (possibly batched) mesh vectors into their three parameter blocks."""
    q = len(rectangular_layout(n_modes, layers))
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 2 * q + n_modes - 1:
        raise ValueError(f"expected {2 * q + n_modes - 1} mesh parameters, got {x.shape[-1]}")
    return x[..., :q], x[..., q : 2 * q], x[..., 2 * q :]


def mesh_unitary(n_modes: int, x: np.ndarray, layers: int | None = None) -> np.ndarray:
    """Transfer matrix (or stack of them) straight from flat parameter vectors."""
    layout = rectangular_layout(n_modes, layers)
    return compose_mesh_batch(n_modes, layout, *split_mesh_vector(n_modes, x, layers))


# --- restricted one-variable-phase architecture ------------------------------


@dataclass(frozen=True)
class RestrictedSchemeParams:
    """``V2 . diag(exp(i theta), 1, ..., 1) . V1`` with static meshes ``V1``, ``V2``."""

    v1: MeshParameterSet
    v2: MeshParameterSet
    variable_phase: float = 0.0

    def __post_init__(self):
        if self.v1.n_modes != self.v2.n_modes:
            raise ValueError(
                f"static parts disagree on mode count: {self.v1.n_modes} vs {self.v2.n_modes}"
            )

    @property
    def n_modes(self) -> int:
        return self.v1.n_modes


def restricted_unitary(v1: np.ndarray, v2: np.ndarray, theta) -> np.ndarray:
    """Sandwich a variable phase on mode 0 between two (batched) static matrices."""
    v1, v2 = np.asarray(v1), np.asarray(v2)
    if v1.shape[-1] != v2.shape[-1]:
        raise ValueError(f"static parts disagree on dimension: {v1.shape} vs {v2.shape}")
    theta = np.asarray(theta, dtype=float)
    phase = np.ones(np.broadcast_shapes(theta.shape, v1.shape[:-2]) + (v1.shape[-1],), complex)
    phase[..., 0] = np.exp(1j * theta)
    return v2 @ (phase[..., :, None] * v1)


def compose_restricted(r: RestrictedSchemeParams) -> np.ndarray:
    return restricted_unitary(compose_mesh(r.v1), compose_mesh(r.v2), r.variable_phase)


# --- explicit element lists and their JSON form ------------------------------


@dataclass(frozen=True)
class BeamSplitter:
    modes: tuple[int, int]
    theta_prime: float
    theta_double_prime: float = 0.0

    @property
    def transmissivity(self) -> float:
        return math.cos(self.theta_prime) ** 2

    def matrix(self) -> np.ndarray:
        return beam_splitter(self.theta_prime, self.theta_double_prime)

    def to_dict(self) -> dict:
        return {
            "kind": "bs",
            "modes": list(self.modes),
            "theta_prime": self.theta_prime,
            "theta_double_prime": self.theta_double_prime,
        }


@dataclass(frozen=True)
class PhaseShift:
    mode: int
    value: float

    def to_dict(self) -> dict:
        return {"kind": "phase", "mode": self.mode, "value": self.value}


Element = Union[BeamSplitter, PhaseShift]


def _element_from_dict(d: dict) -> Element:
    kind = d.get("kind")
    if kind == "bs":
        m, n = (int(k) for k in d["modes"])
        if n != m + 1:
            raise ValueError(f"beam splitters couple neighbouring modes, got ({m}, {n})")
        return BeamSplitter((m, n), float(d["theta_prime"]), float(d.get("theta_double_prime", 0.0)))
    if kind == "phase":
        return PhaseShift(int(d["mode"]), float(d["value"]))
    raise ValueError(f"unknown element kind {kind!r}")


def compose_elements(n_modes: int, elements: Sequence[Element]) -> np.ndarray:
    """Transfer matrix of elements listed in the order light meets them."""
    u = np.eye(n_modes, dtype=complex)
    for el in elements:
        if isinstance(el, BeamSplitter):
            m = el.modes[0]
            u[m : m + 2, :] = el.matrix() @ u[m : m + 2, :]
        else:
            if not 0 <= el.mode < n_modes:
                raise ValueError(f"phase on mode {el.mode} out of range for {n_modes} modes")
            u[el.mode, :] *= np.exp(1j * el.value)
    return u


@dataclass(frozen=True)
class Scheme:
    """A concrete interferometer, optionally with one element marked as programmable."""

    n_modes: int
    elements: tuple[Element, ...]
    variable: dict | None = field(default=None)

    def unitary(self) -> np.ndarray:
        return compose_elements(self.n_modes, self.elements)

    def to_dict(self) -> dict:
        out = {"modes": self.n_modes, "elements": [el.to_dict() for el in self.elements]}
        if self.variable is not None:
            out["variable"] = dict(self.variable)
        return out

    def to_json(self, **kwargs) -> str:
        # float repr is the shortest string that round-trips (<= 17 significant digits)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "Scheme":
        elements = tuple(_element_from_dict(e) for e in d["elements"])
        variable = d.get("variable")
        if variable is not None and not 0 <= int(variable["element_index"]) < len(elements):
            raise ValueError(f"variable element index {variable['element_index']} out of range")
        return cls(int(d["modes"]), elements, variable)

    @classmethod
    def from_json(cls, text: str) -> "Scheme":
        return cls.from_dict(json.loads(text))
