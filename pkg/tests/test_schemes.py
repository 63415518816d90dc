import math

import numpy as np
import pytest

from heraldgen.fock import check_unitary
from heraldgen.interferometer import BeamSplitter, PhaseShift, Scheme
from heraldgen.schemes import (
    COMPACT_STATIC_TAUS,
    P_CZ_HERALDED,
    analytic_p_one_mode,
    best_gate_based_p,
    compact_scheme,
    compact_scheme_outcome,
    compact_scheme_unitary,
    cphase_p,
    reference_curve,
    tau_of_alpha,
)


def test_analytic_one_mode_values():
    assert analytic_p_one_mode(0) == pytest.approx(1 / 6, abs=1e-15)
    assert analytic_p_one_mode(math.pi / 4) == pytest.approx(1 / 9, abs=1e-15)
    assert analytic_p_one_mode(math.pi / 6) == pytest.approx(2 / 15, abs=1e-15)
    vals = [analytic_p_one_mode(a) for a in np.linspace(0, math.pi / 4, 200)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_tau_law_values():
    assert tau_of_alpha(0) == 1
    assert tau_of_alpha(math.pi / 4) == pytest.approx(1 / 3)
    assert tau_of_alpha(math.pi / 6) == pytest.approx(3 / 5)


def test_cphase_values():
    assert cphase_p(0) == 1.0
    assert cphase_p(math.pi) == pytest.approx(1 / 9, abs=1e-12)
    assert cphase_p(math.pi / 3) == pytest.approx(1 / 9, abs=1e-12)
    with pytest.raises(ValueError):
        cphase_p(4.0)


def test_cphase_crossover_sign():
    for a in np.linspace(0.001, math.pi / 12 - 0.001, 50):
        assert cphase_p(4 * a) > 1 / 9
    for a in np.linspace(math.pi / 12 + 0.001, math.pi / 4 - 0.001, 50):
        assert cphase_p(4 * a) < 1 / 9


def test_best_gate_based():
    assert best_gate_based_p(0) == 1
    assert best_gate_based_p(math.pi / 4) == pytest.approx(1 / 9)
    assert best_gate_based_p(math.pi / 12) == pytest.approx(1 / 9, abs=1e-12)
    assert best_gate_based_p(0.5, heralded_cz=True) == max(P_CZ_HERALDED, cphase_p(2.0))
    assert best_gate_based_p(0.5) == 1 / 9


def test_reference_curve():
    c = reference_curve("best_gate_based", [0, math.pi / 4])
    assert c.samples[0] == (0.0, 1.0)
    with pytest.raises(ValueError):
        reference_curve("nope", [0])


@pytest.mark.parametrize("alpha", [0.0, math.pi / 8, math.pi / 6, math.pi / 4])
def test_compact_scheme_points(alpha):
    out = compact_scheme_outcome(alpha)
    assert out.p_tilde == pytest.approx(analytic_p_one_mode(alpha), abs=1e-9)
    assert out.infidelity <= 1e-8


def test_compact_scheme_alpha0_state():
    out = compact_scheme_outcome(0)
    assert abs(out.chi.amplitude((1, 0, 1, 0))) ** 2 == pytest.approx(1 / 6)


def test_compact_scheme_on_fine_grid():
    for a in np.linspace(0, math.pi / 4, 101):
        check_unitary(compact_scheme_unitary(a))
        out = compact_scheme_outcome(a)
        assert abs(out.p_tilde - analytic_p_one_mode(a)) <= 1e-9
        assert out.infidelity <= 1e-8


def test_compact_scheme_structure():
    s = compact_scheme(0.3)
    splitters = [e for e in s.elements if isinstance(e, BeamSplitter)]
    phases = [e for e in s.elements if isinstance(e, PhaseShift)]
    assert len(splitters) == 1 + len(COMPACT_STATIC_TAUS) and len(phases) == 1
    assert all(e.theta_double_prime == 0 for e in splitters)
    var = s.elements[s.variable["element_index"]]
    assert var.transmissivity == pytest.approx(tau_of_alpha(0.3))
    assert Scheme.from_json(s.to_json()) == s


def test_wrong_tau_law_breaks_the_scheme():
    out = compact_scheme_outcome(0.4, lambda a: tau_of_alpha(a) + 0.05)
    assert out.infidelity > 1e-4
