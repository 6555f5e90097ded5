import math

import numpy as np
import pytest

from cbitsim import experiments as ex
from cbitsim import quantum_core as qc
from cbitsim.complex_canonical import CBitState
from cbitsim.errors import DomainError, TruncationError
from cbitsim.hybrid import CouplingSpec


def assert_schema(result):
    names = ex.SCHEMAS[result.experiment][1]
    for r in result.records:
        assert tuple(r.observables) == names
        assert r.param_name == ex.SCHEMAS[result.experiment][0]


# -- records ---------------------------------------------------------------------------

def test_record_validation():
    with pytest.raises(DomainError):
        ex.ExperimentRecord("mz-sweep", "quantum", 0.0, {"i_L": 1.0})
    with pytest.raises(DomainError):
        ex.ExperimentRecord("mz-sweep", "photonic", 0.0, {"i_L": 1.0, "i_R": 0.0})
    with pytest.raises(DomainError):
        ex.ExperimentRecord("bell-test", "quantum", 0.0, {})
    r = ex.ExperimentRecord("jc-compare", "quantum", 0.5, {"p_excited": 0.3, "entropy": 0.1})
    assert r.param_name == "t"


def test_rng_spec_streams_repeat():
    a = ex.RngSpec(7).generator().standard_normal(5)
    b = ex.RngSpec(7).generator().standard_normal(5)
    assert a.tobytes() == b.tobytes()
    assert "PCG64" in ex.RngSpec(7).algorithm


# -- Mach-Zehnder -------------------------------------------------------------------------

def test_mz_sweep_examples():
    res = ex.run_mz_sweep("both", 256)
    assert_schema(res)
    assert res.passed
    for b in ("classical_cbit", "quantum"):
        i_l, i_r = res.column("i_L", b), res.column("i_R", b)
        assert abs(i_l[0] - 1) < 1e-12 and abs(i_r[0]) < 1e-12
        phi = res.column("phi", b)
        assert phi[0] == 0.0 and phi[-1] == 2 * math.pi
        # oracle: cos^2(phi / 2) fringe
        assert np.max(np.abs(i_l - np.cos(phi / 2) ** 2)) < 1e-12
    diff = np.abs(res.column("i_L", "classical_cbit") - res.column("i_L", "quantum"))
    assert diff.max() < 1e-10


def test_mz_phi_pi_and_odd_grid():
    res = ex.run_mz_sweep("quantum", 3)
    assert abs(res.column("i_L")[1]) < 1e-12
    assert ex.mz_intensities("classical_cbit", math.pi, "R")[0] == pytest.approx(0, abs=1e-12)


def test_mz_sweep_rejects_bad_input():
    with pytest.raises(DomainError):
        ex.run_mz_sweep("both", 1)
    with pytest.raises(DomainError):
        ex.run_mz_sweep("photonic", 10)


# -- sharpness --------------------------------------------------------------------------------

def test_sharpness_rows():
    c = ex.cbit_sharpness_row(CBitState(1, 0))
    assert (c["x"], c["y"], c["z"]) == (0.0, 0.0, 1.0) and c["residual"] < 1e-12
    q = ex.qubit_sharpness_row(qc.ket(0))
    assert (q["var_x"], q["var_y"], q["var_z"]) == pytest.approx((1, 1, 0), abs=1e-15)
    assert q["residual"] < 1e-12


def test_sharpness_report():
    res = ex.run_sharpness_report(1000, seed=42)
    assert_schema(res)
    assert res.passed
    assert len(res.records) == 2 * 1001
    assert np.max(res.column("residual")) < 1e-9
    assert np.all(res.column("var_x", "classical_cbit") == 0.0)
    var_sum = sum(res.column(k, "quantum") for k in ("var_x", "var_y", "var_z"))
    assert np.max(np.abs(var_sum - 2)) < 1e-10
    # same stream: qubit k and c-bit k are the same amplitudes, so the triples agree
    for k in ("x", "y", "z"):
        assert np.allclose(res.column(k, "classical_cbit"), res.column(k, "quantum"), atol=1e-12)


# -- swap ----------------------------------------------------------------------------------------

def test_draw_swap_inputs_prefix_stable():
    c5, q5 = ex.draw_swap_inputs(5, 3)
    c2, q2 = ex.draw_swap_inputs(2, 3)
    assert np.array_equal(c5[:2], c2) and np.array_equal(q5[:2], q2)
    assert np.allclose(np.linalg.norm(c5, axis=1), 1) and np.allclose(np.linalg.norm(q5, axis=1), 1)


def test_quantum_swap_reference_is_perfect():
    c, q = ex.draw_swap_inputs(50, 1)
    fid, dist = ex.quantum_swap_reference(c, q)
    assert np.all(np.abs(fid - 1) < 1e-12)
    assert np.all(dist < 1e-12)


def test_swap_experiment_small():
    res = ex.run_swap_experiment(8, seed=5, dt=1e-2, t_end=5.0)
    assert_schema(res)
    per_trial = {b for b in ex.HYBRID_VARIANTS} | {"quantum"}
    assert {r.backend for r in res.records} == per_trial
    assert len(res.records) == 8 * len(per_trial)
    assert np.all(np.abs(res.column("fidelity_final", "quantum") - 1) < 1e-10)
    for b in ex.HYBRID_VARIANTS:
        assert np.all(res.column("max_entropy", b) == 0.0)
        assert np.all(res.column("failed", b) == 0)
    assert res.summary["contrast_entangled_fraction"] > 0.5
    for key in ("hybrid_one_way_best_fidelity_median", "hybrid_ehrenfest_best_fidelity_min"):
        assert key in res.summary


def test_swap_vanishing_coefficients_is_static_overlap():
    cbits = np.array([[1, 0]], dtype=complex)
    rng = np.random.default_rng(2)
    q = qc.random_pure_state(rng)[None]
    fid = ex._swap_variant(cbits, q, CouplingSpec(), 1e-2, 5.0)
    static = abs(q[0, 0]) ** 2  # target is |0>
    assert fid[0][0] == pytest.approx(static, abs=1e-15)
    assert fid[1][0] == pytest.approx(static, abs=1e-15)


def test_swap_failure_recorded_per_trial():
    spec = CouplingSpec(g=80.0, max_iter=3)
    res = ex.run_swap_experiment(2, spec, seed=1, dt=0.2, t_end=0.4, variants=("hybrid_ehrenfest",))
    assert np.all(res.column("failed", "hybrid_ehrenfest") == 1)
    assert np.all(np.isnan(res.column("fidelity_best", "hybrid_ehrenfest")))
    assert not res.passed


def test_swap_rejects_zero_trials():
    with pytest.raises(DomainError):
        ex.run_swap_experiment(0)


# -- Jaynes-Cummings --------------------------------------------------------------------------

def test_jc_quantum_examples():
    p, s = ex.jc_quantum(1.0, [math.pi / 4, math.pi / 2])
    assert p[1] == pytest.approx(0, abs=1e-8)
    assert s[0] == pytest.approx(math.log(2), abs=1e-6)


def test_jc_compare_report():
    res = ex.run_jc_compare()
    assert_schema(res)
    assert res.passed
    t = res.column("t", "quantum")
    assert np.max(np.abs(res.column("p_excited", "quantum") - np.cos(t) ** 2)) < 1e-8
    assert np.all(res.column("entropy", "hybrid_ehrenfest") == 0.0)
    assert res.summary["truncation_gap"] < 1e-8


def test_jc_fock_8_vs_12():
    times = np.linspace(0, math.pi, 101)
    p8, s8 = ex.jc_quantum(1.0, times, 8)
    p12, s12 = ex.jc_quantum(1.0, times, 12)
    assert np.max(np.abs(p8 - p12)) < 1e-8 and np.max(np.abs(s8 - s12)) < 1e-8


def test_jc_rejects_small_fock_dim():
    with pytest.raises(DomainError):
        ex.run_jc_compare(fock_dim=1)


def test_jc_truncation_sensitivity(monkeypatch):
    real = ex.jc_quantum

    def biased(g, times, fock_dim=8, omega=1.0, nu=1.0):
        p, s = real(g, times, fock_dim, omega, nu)
        return (p + 1e-3, s) if fock_dim > 8 else (p, s)

    monkeypatch.setattr(ex, "jc_quantum", biased)
    with pytest.raises(TruncationError, match="fock_dim"):
        ex.run_jc_compare(fock_dim=8)


# -- convergence ----------------------------------------------------------------------------------

def test_oscillator_convergence_slope():
    rep = ex.oscillator_convergence()
    assert rep.slope == pytest.approx(2.0, abs=0.2)


def test_run_convergence_short_horizon():
    res = ex.run_convergence(ehrenfest_dts=(2e-2, 1e-2), t_end=2.0)
    assert_schema(res)
    assert res.column("steps", "hybrid_ehrenfest").tolist() == [100, 200]
    assert 2.5 <= res.summary["ehrenfest_drift_ratio"] <= 6.0
    assert 1.8 <= res.summary["midpoint_slope"] <= 2.2


# -- determinism ------------------------------------------------------------------------------------

@pytest.mark.parametrize("runner", [
    lambda: ex.run_sharpness_report(50, seed=9),
    lambda: ex.run_swap_experiment(3, seed=9, dt=1e-2, t_end=2.0),
    lambda: ex.run_mz_sweep("both", 33),
])
def test_runners_deterministic(runner):
    a, b = runner(), runner()
    assert [(r.backend, r.param_value, r.observables) for r in a.records] == \
           [(r.backend, r.param_value, r.observables) for r in b.records]
