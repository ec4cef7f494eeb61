import pytest

from leocov.montecarlo import McConfig
from leocov.scenario import load_preset
from leocov.sweeps import (DEFAULT_TAU_GRID_DB, FIGURE_NAMES, SweepSpec,
                           figure_preset, run_figure, run_sweep)


class TestSweepSpec:
    def test_rejects_unknown_variable(self):
        with pytest.raises(ValueError, match="variable"):
            SweepSpec(variable="bogus", values=(1.0,))

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            SweepSpec(variable="tau_db", values=(0.0,), modes=("bogus",))

    def test_rejects_empty_values(self):
        with pytest.raises(ValueError):
            SweepSpec(variable="tau_db", values=())

    def test_default_grid(self):
        assert DEFAULT_TAU_GRID_DB[0] == -10.0
        assert DEFAULT_TAU_GRID_DB[-1] == 30.0
        assert len(DEFAULT_TAU_GRID_DB) == 41


class TestRunSweep:
    def test_tau_sweep_csv_shape(self):
        spec = SweepSpec(variable="tau_db", values=(0.0,),
                         modes=("ideal", "residual"),
                         tau_grid_db=(-5.0, 0.0, 5.0))
        text = run_sweep(spec, load_preset("S"))
        lines = text.strip().splitlines()
        assert lines[0] == "tau_db,p_ideal,p_residual"
        assert len(lines) == 4

    def test_variable_sweep_csv_shape(self):
        spec = SweepSpec(variable="subcarrier_spacing_hz",
                         values=(15e3, 30e3), modes=("residual",),
                         tau_grid_db=(0.0, 5.0))
        text = run_sweep(spec, load_preset("S"))
        lines = text.strip().splitlines()
        assert lines[0] == "subcarrier_spacing_hz,tau_db,p_residual"
        assert len(lines) == 1 + 2 * 2
        assert lines[1].startswith("15000,")
        assert lines[3].startswith("30000,")

    def test_mc_requires_config(self):
        spec = SweepSpec(variable="tau_db", values=(0.0,), modes=("mc",),
                         tau_grid_db=(0.0,))
        with pytest.raises(ValueError, match="Monte-Carlo"):
            run_sweep(spec, load_preset("S"))

    def test_mc_sweep_deterministic_bytes(self):
        spec = SweepSpec(variable="tau_db", values=(0.0,),
                         modes=("residual", "mc"), tau_grid_db=(0.0, 5.0, 6.0))
        sc = load_preset("S")
        texts = {run_sweep(spec, sc, McConfig(samples=50_000, seed=2,
                                              worker_hint=w))
                 for w in (1, 2, 5)}
        assert len(texts) == 1
        repeat = run_sweep(spec, sc, McConfig(samples=50_000, seed=2))
        assert repeat in texts


class TestFigurePresets:
    def test_unknown_name(self):
        with pytest.raises(ValueError, match="figure preset"):
            figure_preset("fig9")

    @pytest.mark.parametrize("name", FIGURE_NAMES)
    def test_jobs_well_formed(self, name):
        jobs = figure_preset(name)
        assert jobs
        labels = [j.label for j in jobs]
        assert len(set(labels)) == len(labels)
        for job in jobs:
            assert job.band in ("S", "Ka")
            assert job.spec.tau_grid_db == DEFAULT_TAU_GRID_DB

    def test_run_figure_returns_label_keyed_csv(self):
        out = run_figure("fig2b")
        assert set(out) == {"fig2b_S"}
        header = out["fig2b_S"].splitlines()[0]
        assert header == "subcarrier_spacing_hz,tau_db,p_ideal,p_residual," \
                         "p_uncompensated"
