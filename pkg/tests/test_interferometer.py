import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heraldgen.interferometer import (
    BeamSplitter,
    MeshParameterSet,
    PhaseShift,
    RestrictedSchemeParams,
    Scheme,
    beam_splitter,
    compose_elements,
    compose_mesh,
    compose_restricted,
    embed_two_mode,
    mesh_unitary,
    param_count,
    rectangular_layout,
    restricted_unitary,
    transmissivity_angle,
)


def unitarity_error(u):
    return np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()


def test_beam_splitter_examples():
    np.testing.assert_allclose(beam_splitter(math.pi / 2, 0), [[1, 0], [0, -1]], atol=1e-15)
    np.testing.assert_allclose(beam_splitter(0, 0), [[0, 1], [1, 0]], atol=1e-15)
    t = beam_splitter(math.pi / 4, 0)
    np.testing.assert_allclose(abs(t), 1 / math.sqrt(2))
    assert np.linalg.det(t) == pytest.approx(-1)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, math.pi / 2), st.floats(-math.pi, math.pi))
def test_transmissivity_convention(tp, tpp):
    t = beam_splitter(tp, tpp)
    assert unitarity_error(t) <= 1e-14
    # tau = cos^2 theta' is the squared magnitude of the (1,2) entry
    assert abs(t[0, 1]) ** 2 == pytest.approx(math.cos(tp) ** 2, abs=1e-14)
    tau = math.cos(tp) ** 2
    assert math.cos(transmissivity_angle(tau)) ** 2 == pytest.approx(tau, abs=1e-12)


def test_transmissivity_angle_range():
    with pytest.raises(ValueError):
        transmissivity_angle(1.5)


def test_embed_two_mode():
    np.testing.assert_array_equal(embed_two_mode(np.eye(2), 1, 4), np.eye(4))
    swap = embed_two_mode(np.array([[0, 1], [1, 0]]), 1, 3)
    np.testing.assert_array_equal(swap @ np.array([0, 1, 0]), [0, 0, 1])
    rng = np.random.default_rng(0)
    t = beam_splitter(rng.uniform(0, 1.5), rng.uniform(-3, 3))
    assert unitarity_error(embed_two_mode(t, 2, 5)) <= 1e-14
    with pytest.raises(ValueError):
        embed_two_mode(t, 4, 5)


def test_param_count():
    assert [param_count(n) for n in (2, 5, 6)] == [3, 24, 35]
    for n in range(2, 8):
        assert MeshParameterSet.size(n) == param_count(n)
        assert len(rectangular_layout(n)) == n * (n - 1) // 2


def test_rectangular_layout_alternates():
    assert rectangular_layout(4) == (0, 2, 1, 0, 2, 1)
    assert rectangular_layout(5, layers=2) == (0, 2, 1, 3)


def test_mesh_examples():
    n = 4
    q = len(rectangular_layout(n))
    diag = compose_mesh(MeshParameterSet(n, [math.pi / 2] * q, [0] * q, [0] * (n - 1)))
    np.testing.assert_allclose(diag, np.diag(np.diag(diag)), atol=1e-15)
    np.testing.assert_allclose(abs(np.diag(diag)), 1)
    np.testing.assert_allclose(np.diag(diag).imag, 0, atol=1e-15)
    single = compose_mesh(MeshParameterSet(2, [math.pi / 4], [0], [0]))
    np.testing.assert_allclose(single, beam_splitter(math.pi / 4, 0), atol=1e-15)


def test_unitarity_of_1000_random_meshes():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        worst = max(worst, unitarity_error(compose_mesh(MeshParameterSet.random(n, rng))))
    assert worst <= 1e-10


def test_real_parameters_give_orthogonal_matrix():
    rng = np.random.default_rng(2)
    p = MeshParameterSet.random(5, rng)
    u = compose_mesh(MeshParameterSet(5, p.theta_prime, np.zeros(10), np.zeros(4)))
    np.testing.assert_allclose(u.imag, 0, atol=1e-15)
    np.testing.assert_allclose(u.T @ u, np.eye(5), atol=1e-12)


def test_mesh_matches_explicit_embedding_product():
    # independent path: left-multiply embedded 2x2 blocks, then the output phases
    rng = np.random.default_rng(3)
    for n in (3, 5, 6):
        p = MeshParameterSet.random(n, rng)
        u = np.eye(n, dtype=complex)
        for m, a, b in zip(p.layout, p.theta_prime, p.theta_double_prime):
            u = embed_two_mode(beam_splitter(a, b), m, n) @ u
        u = np.diag(np.exp(1j * np.append(p.output_phases, 0.0))) @ u
        np.testing.assert_allclose(compose_mesh(p), u, atol=1e-13)
        np.testing.assert_allclose(compose_elements(n, p.elements()), u, atol=1e-13)


def test_batched_mesh_matches_loop():
    rng = np.random.default_rng(4)
    xs = np.stack([MeshParameterSet.random(5, rng).to_vector() for _ in range(6)]).reshape(2, 3, -1)
    batch = mesh_unitary(5, xs)
    for i, j in np.ndindex(2, 3):
        np.testing.assert_allclose(batch[i, j], mesh_unitary(5, xs[i, j]), atol=1e-15)


def test_vector_round_trip_and_validation():
    rng = np.random.default_rng(5)
    p = MeshParameterSet.random(6, rng, layers=3)
    q = MeshParameterSet.from_vector(6, p.to_vector(), layers=3)
    np.testing.assert_array_equal(q.to_vector(), p.to_vector())
    with pytest.raises(ValueError):
        MeshParameterSet.from_vector(6, np.zeros(7))


def test_restricted_examples():
    n = 4
    np.testing.assert_allclose(restricted_unitary(np.eye(n), np.eye(n), 0.0), np.eye(n))
    u = restricted_unitary(np.eye(n), np.eye(n), math.pi)
    np.testing.assert_allclose(u, np.diag([-1, 1, 1, 1]), atol=1e-15)
    rng = np.random.default_rng(6)
    r = RestrictedSchemeParams(MeshParameterSet.random(n, rng), MeshParameterSet.random(n, rng, 2), 1.234)
    u = compose_restricted(r)
    assert unitarity_error(u) <= 1e-10
    expected = compose_mesh(r.v2) @ np.diag([np.exp(1.234j), 1, 1, 1]) @ compose_mesh(r.v1)
    np.testing.assert_allclose(u, expected, atol=1e-14)
    with pytest.raises(ValueError):
        RestrictedSchemeParams(MeshParameterSet.random(3, rng), MeshParameterSet.random(4, rng))


def test_restricted_theta_derivative():
    rng = np.random.default_rng(7)
    n, h = 5, 1e-6
    v1 = mesh_unitary(n, MeshParameterSet.random(n, rng).to_vector())
    v2 = mesh_unitary(n, MeshParameterSet.random(n, rng).to_vector())
    for theta in rng.uniform(-math.pi, math.pi, 5):
        fd = (restricted_unitary(v1, v2, theta + h) - restricted_unitary(v1, v2, theta - h)) / (2 * h)
        e = np.zeros((n, n), dtype=complex)
        e[0, 0] = np.exp(1j * theta)
        np.testing.assert_allclose(fd, 1j * v2 @ e @ v1, atol=1e-6)


def test_scheme_json_round_trip():
    scheme = Scheme(
        4,
        (BeamSplitter((0, 1), 0.3, 0.1), PhaseShift(2, 1.1), BeamSplitter((2, 3), 1.2)),
        {"element_index": 0, "law": "test"},
    )
    text = scheme.to_json()
    back = Scheme.from_json(text)
    assert back == scheme
    np.testing.assert_array_equal(back.unitary(), scheme.unitary())
    d = json.loads(text)
    d["elements"][0]["modes"] = [0, 2]
    with pytest.raises(ValueError):
        Scheme.from_dict(d)
    d = json.loads(text)
    d["variable"]["element_index"] = 9
    with pytest.raises(ValueError):
        Scheme.from_dict(d)
