import math

import numpy as np
import pytest

import greenmachine as gm


def test_ideal_transfer_is_unitary():
    t = gm.ideal_transfer(0.7, 1.3)
    assert np.allclose(t.conj().T @ t, np.eye(2), atol=1e-12)
    assert np.allclose(gm.ideal_transfer(math.pi, math.pi), np.eye(2), atol=1e-12)


def test_clements_round_trip():
    u = gm.haar_random_unitary(6, 42)
    mesh = gm.clements_decompose(u)
    assert mesh.coupling_count == 15
    assert gm.distance_up_to_global_phase(mesh.unitary(), u) < 1e-9


def test_compile_and_simulate_match_mesh():
    u = gm.haar_random_unitary(8, 7)
    mesh, residual, converged = gm.fit_mesh(gm.scf_topology(8), u, seed=3)
    assert converged and residual < 1e-9
    hw = gm.scf_hardware(8)
    schedule = gm.compile_schedule(mesh, hw)
    assert schedule.delays == [4, 2, 1, 4, 1, 2, 1]
    assert gm.distance_up_to_global_phase(gm.simulate(schedule, hw), u) < 1e-9


def test_mesh_json_round_trip():
    mesh = gm.clements_decompose(gm.haar_random_unitary(4, 1))
    again = gm.MeshProgram.from_json(mesh.to_json())
    assert np.allclose(again.unitary(), mesh.unitary(), atol=1e-14)


def test_hong_ou_mandel():
    probs = gm.fock_probabilities(gm.ideal_transfer(math.pi / 2, 0.0), [1, 1])
    assert probs.get((1, 1), 0.0) < 1e-12
    assert probs[(2, 0)] == pytest.approx(0.5)


def test_boosted_bsm_ideal():
    r = gm.bsm_benchmark(samples=3)
    assert r["success_rate"] == pytest.approx(0.75, abs=1e-9)
    assert gm.loss_threshold(gm.PERCOLATION_THRESHOLD) == pytest.approx(0.98186, abs=1e-4)


def test_transport_ipr():
    r = gm.run_transport()
    assert r["ipr"] == pytest.approx([2, 4, 8, 4, 2, 1, 2])


def test_cost_anchor():
    hw = gm.clements_hardware(100e-12)
    hw.eta_o = 0.2e-3
    c = gm.architecture_cost("ggm_clements", 100, hw)
    assert c["loss_terms"]["outer_loop"] == pytest.approx(0.04)
    assert gm.mac_rate(64, 10e-9) == pytest.approx(1e8)


def test_errors_carry_kind():
    with pytest.raises(gm.GmError) as info:
        gm.scf_topology(6)
    assert info.value.kind == "invalid-dimension"


def test_run_experiment_is_deterministic(tmp_path):
    files = []
    for run in range(2):
        files.append(gm.run_experiment("bsm", {"sigma": 0.05, "samples": 20}, seed=4, output_path=tmp_path / str(run)))
    for a, b in zip(*files):
        assert open(a, "rb").read() == open(b, "rb").read()
