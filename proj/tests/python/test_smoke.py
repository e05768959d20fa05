"""Smoke tests for the python module: every exposed operation runs and returns
sane values on small instances."""

import json
import math
import os

import pytest

import hjdecay as hj

CONFIGS = os.path.join(os.path.dirname(__file__), "..", "..", "configs")


def sine_u0(amplitude=1.0, k=1):
    return hj.TrigPolynomial.from_json(json.dumps({
        "dim": 1,
        "base_generators": ["1"],
        "terms": [
            {"freq": [[k, 1]], "re": 0.0, "im": -amplitude / 2},
            {"freq": [[-k, 1]], "re": 0.0, "im": amplitude / 2},
        ],
    }))


def test_hamiltonian_eval_and_json():
    h = hj.quadratic([[1.0]])
    assert h([3.0]) == pytest.approx(4.5)
    assert h.kind == "quadratic"
    assert h.is_normalized()
    back = hj.Hamiltonian.from_json(h.to_json())
    assert back([2.0]) == pytest.approx(h([2.0]))

    habs = hj.abs_linear([1.0, math.sqrt(2.0)])
    assert habs([1.0, 0.0]) == pytest.approx(1.0)

    hmax = hj.max_affine([([1.0], 0.0), ([-1.0], 0.0)])
    assert hmax([-2.0]) == pytest.approx(2.0)

    total = hj.hamiltonian_sum([h, hmax])
    assert total([2.0]) == pytest.approx(4.0)


def test_conjugate_and_subdifferential():
    h = hj.quadratic([[1.0, 0.0], [0.0, 1.0]])
    assert hj.conjugate_symbolic(h, [1.0, 2.0]) == pytest.approx(2.5)

    habs = hj.abs_linear([1.0, 0.0])
    assert hj.conjugate_symbolic(habs, [2.0, 0.0]) is None  # +inf

    vertices, approximate = hj.subdifferential_at(hj.max_affine(
        [([1.0], 0.0), ([-1.0], 0.0)]), [0.0])
    assert not approximate
    assert sorted(v[0] for v in vertices) == pytest.approx([-1.0, 1.0])

    assert hj.support_function([[-1.0], [1.0]], [3.0]) == pytest.approx(3.0)
    assert hj.polar_membership([[-1.0], [1.0]], 0.1, [0.05])
    assert not hj.polar_membership([[-1.0], [1.0]], 0.1, [0.2])
    assert hj.minimal_norm_point([[-1.0], [2.0]])[0] == pytest.approx(0.0)


def test_legendre_transform():
    count = 257
    values = [0.5 * v * v for v in
              (-4.0 + 8.0 * i / (count - 1) for i in range(count))]
    out = hj.legendre([(-4.0, 4.0)], [count], values, [(-2.0, 2.0)], [201])
    # quadratic is self-conjugate: H*(1) = 0.5 at the on-grid node p = 1
    p_index = round((1.0 - (-2.0)) / (4.0 / 200))
    assert out["values"][p_index] == pytest.approx(0.5, abs=1e-6)
    assert out["boundary_attained"][p_index] == 0


def test_trig_polynomial_and_bohr():
    u = sine_u0()
    assert u([0.25]) == pytest.approx(1.0)
    assert u.mean_value() == 0.0
    assert u.lipschitz_bound() == pytest.approx(2 * math.pi)
    re, im = hj.bohr_coefficient(u, json.dumps([[1, 1]]), 50.0)
    assert im == pytest.approx(-0.5, abs=1e-6)
    assert re == pytest.approx(0.0, abs=1e-6)


def test_module_and_lift():
    u = hj.TrigPolynomial.from_json(json.dumps({
        "dim": 1,
        "base_generators": ["1", "sqrt2"],
        "terms": [
            {"freq": [[1, 1], [0, 1]], "re": 0.0, "im": -0.5},
            {"freq": [[-1, 1], [0, 1]], "re": 0.0, "im": 0.5},
            {"freq": [[0, 1], [1, 1]], "re": 0.0, "im": -0.5},
            {"freq": [[0, 1], [-1, 1]], "re": 0.0, "im": 0.5},
        ],
    }))
    info = hj.module_info(u)
    assert info["rank"] == 2
    lift = hj.lift_info(u)
    rows = sorted(r[0] for r in lift["lambda"])
    assert rows[0] == pytest.approx(1.0)
    assert rows[1] == pytest.approx(math.sqrt(2.0))
    v0 = hj.TrigPolynomial.from_json(lift["torus_poly"])
    assert v0.dim == 2


def test_check_nd():
    ok = json.loads(hj.check_nd_lattice(hj.abs_linear([1.0, math.sqrt(2.0)]), 2, 10, 0.25))
    assert ok["verdict"] == "satisfied_up_to_bound"
    bad = json.loads(hj.check_nd_lattice(hj.abs_linear([1.0, 2.0]), 2, 3, 0.25))
    assert bad["verdict"] == "violated"
    assert bad["witnesses"][0]["k"] == [2, -1]

    linear, alpha = hj.is_linear_near_zero(hj.abs_linear([1.0, 2.0]), [2.0, -1.0], 0.3)
    assert linear and alpha == 0.0


def test_solve_and_decay():
    h = hj.quadratic([[1.0]])
    u0 = sine_u0(0.5)
    out = hj.solve_decay(h, u0, t=20.0, grid=256)
    assert out["max"] - out["min"] <= 0.05
    assert out["min"] >= -0.5 - 1e-9

    probes = hj.lifted_probe(h, u0, 1.0, [[0.3], [0.8]])
    assert len(probes) == 2

    lf = hj.lax_friedrichs(h, u0, 0.5, 128)
    assert len(lf) == 128
    assert max(lf) <= 0.5 + 1e-9


def test_certificate():
    h = hj.quadratic([[1.0]])
    u0 = sine_u0(0.5)
    cert = json.loads(hj.decay_certificate(h, u0, epsilon=0.1, t_table=[1.0, 10.0, 100.0]))
    assert cert["status"] == "ok"
    alphas = [row["alpha"] for row in cert["certificate"]["alpha_table"]]
    assert alphas == sorted(alphas, reverse=True)
    assert alphas[-1] <= 0.1 + 1e-9


def test_run_decay_config():
    out = hj.run_decay_config(os.path.join(CONFIGS, "concave_quadratic.toml"))
    assert out["c"] == pytest.approx(1.0)
    ts, devs = zip(*out["curve"])
    assert devs[-1] <= 0.05
    assert out["nd_satisfied"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(hj.InvalidInput):
        hj.quadratic([[1.0, 0.0], [0.0, -1.0]])  # indefinite
    with pytest.raises(hj.InvalidInput):
        hj.TrigPolynomial.from_json(json.dumps({
            "dim": 1, "base_generators": ["1"],
            "terms": [{"freq": [[1, 1]], "re": 0.0, "im": -0.5}],
        }))  # not real-valued
