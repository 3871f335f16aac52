import math

import numpy as np
import pytest

from polarcircuit import circuit as ci
from polarcircuit import dynamics as dy
from polarcircuit import geometry as ge
from polarcircuit import states as st

TABLE = {
    "a": (0.0, 1.0, math.pi / 6, 0.5),
    "b": (math.pi / 3, 1.0, math.pi / 2, 0.5),
    "c": (math.pi / 4, 1.0, math.pi / 12, 0.5),
    "d": (11 * math.pi / 12, 1.0, 3 * math.pi / 4, 0.5),
}


def table_config(key, epsilon=0.05, dt=1e-3):
    phi_r, r_r, phi_t, r_t = TABLE[key]
    return ci.CircuitConfig(
        st.make_state(r_r, phi_r), st.make_state(r_t, phi_t), epsilon=epsilon, dt=dt
    )


class TestCircuitConfig:
    def test_defaults(self):
        cfg = table_config("a")
        assert cfg.params == dy.GklsParams(0.0, 2.0, -2.0)

    def test_rejects_bad_epsilon(self):
        with pytest.raises(ValueError):
            ci.CircuitConfig(st.make_state(1, 0), st.make_state(0.5, 0.1), epsilon=0.0)

    def test_rejects_non_contracting(self):
        with pytest.raises(ValueError):
            ci.CircuitConfig(st.make_state(0.5, 0), st.make_state(0.9, 0.1))


class TestDeviation:
    def setup_method(self):
        self.seg = ge.geodesic_between(st.make_state(1.0, 0.0), st.make_state(0.5, math.pi / 6))

    def test_on_geodesic(self):
        phi = ge.geodesic_phi_at_r(self.seg, 0.8)
        assert ci.deviation(st.make_state(0.8, phi), self.seg) < 1e-14

    def test_offset_value(self):
        phi = ge.geodesic_phi_at_r(self.seg, 0.8)
        val = ci.deviation(st.make_state(0.8, phi + 0.1), self.seg)
        assert val == pytest.approx(0.8 * math.sin(0.1), abs=1e-12)

    def test_equals_equal_r_distance(self):
        s = st.make_state(0.8, 0.4)
        phi_geo = ge.geodesic_phi_at_r(self.seg, s.r)
        assert ci.deviation(s, self.seg) == ge.equal_r_distance(s.r, s.phi, phi_geo)


class TestRunCircuit:
    def test_reaches_target_radius(self):
        res = ci.run_circuit(table_config("a"))
        assert res.final_state.r <= 0.5
        assert res.final_state.r == pytest.approx(0.5, abs=2e-3)
        assert res.final_target_distance < 0.05

    def test_gate_events_on_geodesic_angle(self):
        cfg = table_config("a", epsilon=0.01)
        seg = ge.geodesic_between(cfg.ref_state, cfg.target_state)
        res = ci.run_circuit(cfg)
        assert res.gate_count == len(res.gate_events) > 0
        for e in res.gate_events:
            # fired past the tolerance, reset onto the geodesic angle
            dev = e.r_before * abs(math.sin(e.phi_before - e.gamma))
            assert dev > cfg.epsilon
            assert e.gamma == pytest.approx(
                ge.geodesic_phi_at_r(seg, e.r_before), abs=1e-12
            )
            assert e.r_after <= e.r_before

    def test_monotone_radius(self):
        res = ci.run_circuit(table_config("b", epsilon=0.02))
        assert np.diff(res.trajectory.r).max() <= 0.0

    def test_loose_tolerance_no_gates(self):
        res = ci.run_circuit(table_config("a", epsilon=1.0))
        assert res.gate_count == 0

    def test_tighter_tolerance_more_gates(self):
        n_loose = ci.run_circuit(table_config("c", epsilon=0.04)).gate_count
        n_tight = ci.run_circuit(table_config("c", epsilon=0.01)).gate_count
        assert n_tight > n_loose

    def test_rotated_pair_same_counts(self):
        # configurations (a)/(b) and (c)/(d) differ by a rigid rotation
        for k1, k2 in (("a", "b"), ("c", "d")):
            n1 = ci.run_circuit(table_config(k1, epsilon=0.01)).gate_count
            n2 = ci.run_circuit(table_config(k2, epsilon=0.01)).gate_count
            assert n1 == n2


class TestLogLogFit:
    def test_exact_power_law(self):
        eps = np.logspace(-3, -1, 10)
        rows = [(e, 0.1 / e) for e in eps]
        m, n = ci.loglog_fit(rows)
        assert m == pytest.approx(-1.0, abs=1e-12)
        assert n == pytest.approx(-1.0, abs=1e-12)

    def test_constant_counts(self):
        rows = [(e, 7.0) for e in np.logspace(-3, -1, 5)]
        m, n = ci.loglog_fit(rows)
        assert n == pytest.approx(0.0, abs=1e-12)
        assert m == pytest.approx(math.log10(7.0), abs=1e-12)

    def test_rejects_zero_counts(self):
        with pytest.raises(ValueError):
            ci.loglog_fit([(0.1, 3), (0.01, 0)])

    def test_rejects_single_row(self):
        with pytest.raises(ValueError):
            ci.loglog_fit([(0.1, 3)])


class TestSweepAccuracy:
    def test_rows_descending_and_fit(self):
        cfg = table_config("a", dt=1e-3)
        res = ci.sweep_accuracy(cfg, [0.005, 0.02, 0.01])
        assert [e for e, _ in res.rows] == [0.02, 0.01, 0.005]
        counts = [n for _, n in res.rows]
        assert counts == sorted(counts)
        assert res.fit is not None
        m, n = res.fit
        assert n < 0

    def test_single_epsilon_no_fit(self):
        res = ci.sweep_accuracy(table_config("a"), [0.02])
        assert len(res.rows) == 1
        assert res.fit is None

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ci.sweep_accuracy(table_config("a"), [])

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ci.sweep_accuracy(table_config("a"), [0.01, -0.02])

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            ci.sweep_accuracy(table_config("a"), [0.01, 0.01])

    def test_default_grid_shape(self):
        grid = ci.DEFAULT_EPS_GRID
        assert len(grid) == 24
        assert grid[0] == pytest.approx(5e-4)
        assert grid[-1] == pytest.approx(5e-2)
        ratios = np.diff(np.log10(grid))
        assert np.abs(ratios - ratios[0]).max() < 1e-12


class TestStepSizeRobustness:
    @pytest.mark.parametrize("key", ["a", "c"])
    def test_halving_dt_changes_counts_by_at_most_one(self, key):
        # checked on the coarse end of the accuracy grid; near the fine end
        # the counts approach one gate per step and lose this stability
        for eps in (5e-3, 1e-2, 3e-2):
            n1 = ci.run_circuit(table_config(key, epsilon=eps, dt=5e-5)).gate_count
            n2 = ci.run_circuit(table_config(key, epsilon=eps, dt=2.5e-5)).gate_count
            assert abs(n1 - n2) <= 1
