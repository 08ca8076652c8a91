# tests/test_cli.py
# Created On: Oct 19, 2026
#
import json

import numpy as np
import pytest
from click.testing import CliRunner

from heisencut.cli import cli
from heisencut.core.operators import PAULI_X, PAULI_Y, PAULI_Z
from heisencut.core import selftest
from heisencut.core.selftest import gell_mann_chain
from heisencut.utils.general_utils import make_rng, random_interaction
from heisencut.utils.io_utils import matrix_to_json, vector_to_json


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def xy_file(write_json, hamiltonian_json, xy_matrix):
    return write_json("xy2x2.json", hamiltonian_json(xy_matrix, 2, 2))


@pytest.fixture
def diagonal_file(write_json, hamiltonian_json, gm):
    return write_json("diag3x2.json", hamiltonian_json(np.kron(gm[2], PAULI_Z), 3, 2))


def read(path):
    with open(path) as f:
        return json.load(f)


class TestDecompose:

    def test_writes_terms_and_metadata(self, runner, xy_file, tmp_path):
        out = tmp_path / "decomp.json"
        result = runner.invoke(cli, ["--seed", "7", "decompose", "--in", xy_file, "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert len(data["interaction_terms"]) == 2
        assert data["metadata"]["command"] == "decompose"
        assert data["metadata"]["seed"] == 7

    def test_bare_matrix_with_dimensions(self, runner, write_json, xy_matrix, tmp_path):
        path = write_json("h.json", matrix_to_json(xy_matrix + np.eye(4)))
        out = tmp_path / "decomp.json"
        result = runner.invoke(cli, ["decompose", "--dim-c", "2", "--dim-s", "2", "--strip", "--in", path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert read(out)["scalar"] == 0.0

    def test_bare_matrix_without_dimensions(self, runner, write_json, xy_matrix):
        path = write_json("h.json", matrix_to_json(xy_matrix))
        result = runner.invoke(cli, ["decompose", "--in", path])
        assert result.exit_code == 2

    def test_malformed_json(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        result = runner.invoke(cli, ["decompose", "--in", str(path)])
        assert result.exit_code == 2
        assert "Error" in result.output

    def test_non_hermitian_input(self, runner, write_json):
        path = write_json("h.json", {"dim_c": 2, "dim_s": 2, "full": matrix_to_json(np.triu(np.ones((4, 4))))})
        result = runner.invoke(cli, ["decompose", "--in", path])
        assert result.exit_code == 2
        assert "HermiticityError" in result.output


class TestClosure:

    @pytest.mark.parametrize("kind, expected", [("lie", 3), ("star", 4)])
    def test_dimension(self, runner, write_json, tmp_path, kind, expected):
        path = write_json("gens.json", [matrix_to_json(PAULI_X), matrix_to_json(PAULI_Y)])
        out = tmp_path / "basis.json"
        result = runner.invoke(cli, ["closure", "--kind", kind, "--in", path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert read(out)["dimension"] == expected

    def test_empty_generators(self, runner, write_json):
        path = write_json("gens.json", {"generators": []})
        assert runner.invoke(cli, ["closure", "--in", path]).exit_code == 2

    def test_trace_rejected_for_lie(self, runner, write_json):
        path = write_json("gens.json", [matrix_to_json(np.eye(2))])
        assert runner.invoke(cli, ["closure", "--kind", "lie", "--in", path]).exit_code == 2


class TestInterface:

    def test_xy_brute_force(self, runner, xy_file, tmp_path):
        out = tmp_path / "analysis.json"
        result = runner.invoke(cli, ["interface", "--in", xy_file, "--brute-force", "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert data["brute_force_dimension"] == 10
        assert data["note"] == "Structure theorem inapplicable: dim_c = 2"

    def test_xy_without_brute_force_is_refused(self, runner, xy_file):
        result = runner.invoke(cli, ["interface", "--in", xy_file])
        assert result.exit_code == 2
        assert "PreconditionError" in result.output

    def test_structural(self, runner, diagonal_file, tmp_path):
        out = tmp_path / "analysis.json"
        result = runner.invoke(cli, ["interface", "--in", diagonal_file, "--brute-force", "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert data["structural_dimension"] == 16
        assert data["brute_force_dimension"] == 16
        assert data["agree"] is True

    def test_cap_skips_brute_force(self, runner, diagonal_file, tmp_path):
        out = tmp_path / "analysis.json"
        result = runner.invoke(cli, ["interface", "--in", diagonal_file, "--brute-force", "--cap", "4", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert read(out)["verified"] is False

    @pytest.mark.parametrize("cap", ["0", "300"])
    def test_cap_outside_the_allowed_range(self, runner, diagonal_file, cap):
        result = runner.invoke(cli, ["interface", "--in", diagonal_file, "--cap", cap])
        assert result.exit_code == 2
        assert "dim_cap" in result.output


class TestVerdicts:

    def test_check_control(self, runner, xy_file, diagonal_file):
        assert runner.invoke(cli, ["check-control", "--in", xy_file]).exit_code == 0
        assert runner.invoke(cli, ["check-control", "--in", diagonal_file]).exit_code == 1

    @pytest.mark.parametrize("observable, code", [(PAULI_Z, 0), (PAULI_X, 1)])
    def test_check_measure(self, runner, write_json, diagonal_file, observable, code):
        path = write_json("a.json", matrix_to_json(observable))
        assert runner.invoke(cli, ["check-measure", "--in", diagonal_file, "--observable", path]).exit_code == code

    def test_check_measure_dimension_mismatch(self, runner, write_json, diagonal_file):
        path = write_json("a.json", matrix_to_json(np.eye(3)))
        assert runner.invoke(cli, ["check-measure", "--in", diagonal_file, "--observable", path]).exit_code == 2


class TestSynthesize:

    def test_invert(self, runner, write_json, hamiltonian_json, tmp_path):
        h = random_interaction(3, 2, make_rng(3))
        path = write_json("spec.json", {"hamiltonian": hamiltonian_json(h, 3, 2), "eps": 0.05})
        out = tmp_path / "proc.json"
        result = runner.invoke(cli, ["synthesize", "--kind", "invert", "--in", path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert data["kind"] == "invert"
        assert len(data["procedure"]["steps"]) == 9
        assert data["t_p"] == pytest.approx(0.4)
        assert data["error"] < 0.05

    def test_trotter(self, runner, write_json, tmp_path):
        terms = [{"G": matrix_to_json(PAULI_X), "c": 1.0}, {"G": matrix_to_json(PAULI_Z), "c": 1.0}]
        path = write_json("spec.json", {"terms": terms, "m": 32, "order": 2})
        out = tmp_path / "proc.json"
        result = runner.invoke(cli, ["synthesize", "--kind", "trotter", "--in", path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert data["error"] < data["error_bound"] * 1.5 + 1e-12
        assert data["error"] < 1e-2

    def test_commutator(self, runner, write_json, tmp_path):
        path = write_json("spec.json", {"A": matrix_to_json(PAULI_X), "B": matrix_to_json(PAULI_Y), "m": 64})
        out = tmp_path / "proc.json"
        result = runner.invoke(cli, ["synthesize", "--kind", "commutator", "--in", path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert read(out)["error"] <= 0.05

    def test_missing_key(self, runner, write_json):
        path = write_json("spec.json", {"A": matrix_to_json(PAULI_X)})
        assert runner.invoke(cli, ["synthesize", "--kind", "commutator", "--in", path]).exit_code == 2


class TestMeasurementCommands:

    def test_simulate_from_observable(self, runner, write_json, tmp_path):
        scheme = write_json("scheme.json", {"observable": matrix_to_json(PAULI_Z), "dim_c": 3})
        psi = np.array([np.sqrt(0.3), np.sqrt(0.7)], dtype=complex)
        state = write_json("psi.json", vector_to_json(psi))
        out = tmp_path / "result.json"
        result = runner.invoke(cli, ["simulate-measurement", "--in", scheme, "--state", state, "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        # outcomes are ordered by eigenvalue: -1 first
        np.testing.assert_allclose(data["probabilities"], [0.7, 0.3], atol=1e-10)
        assert data["max_disturbance"] < 1e-10

    def test_unnormalised_state(self, runner, write_json):
        scheme = write_json("scheme.json", {"observable": matrix_to_json(PAULI_Z), "dim_c": 2})
        state = write_json("psi.json", vector_to_json([1.0, 1.0]))
        assert runner.invoke(cli, ["simulate-measurement", "--in", scheme, "--state", state]).exit_code == 2

    def test_compose_then_simulate(self, runner, write_json, tmp_path):
        ha = write_json("ha.json", {"E": matrix_to_json(PAULI_X), "observable": matrix_to_json(PAULI_Z)})
        hb = write_json("hb.json", {"E": matrix_to_json(PAULI_Z), "observable": matrix_to_json(PAULI_X)})
        scheme = tmp_path / "scheme.json"
        result = runner.invoke(cli, ["compose", "--op", "sum", "--a", ha, "--b", hb, "--m", "32", "--out", str(scheme)])
        assert result.exit_code == 0, result.output
        assert read(scheme)["kind"] == "sum"

        state = write_json("psi.json", vector_to_json([1.0, 0.0]))
        out = tmp_path / "result.json"
        result = runner.invoke(cli, ["simulate-measurement", "--in", str(scheme), "--state", state, "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        np.testing.assert_allclose(data["born_probabilities"], [np.sin(np.pi / 8) ** 2, np.cos(np.pi / 8) ** 2], atol=1e-12)
        assert data["total_variation"] < 1e-3

    def test_compose_commutator_needs_three_levels(self, runner, write_json):
        ha = write_json("ha.json", {"E": matrix_to_json(PAULI_X), "observable": matrix_to_json(PAULI_X)})
        hb = write_json("hb.json", {"E": matrix_to_json(PAULI_Z), "observable": matrix_to_json(PAULI_Y)})
        assert runner.invoke(cli, ["compose", "--op", "commutator", "--a", ha, "--b", hb]).exit_code == 2


class TestChainCheck:

    def test_controllable(self, runner, write_json, tmp_path):
        path = write_json("chain.json", gell_mann_chain().json())
        out = tmp_path / "cut.json"
        result = runner.invoke(cli, ["chain-check", "--spec", path, "--cut", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = read(out)
        assert data["closure_dim"] == 80
        assert data["hypotheses"]["all_passed"] is True

    def test_not_controllable(self, runner, write_json):
        path = write_json("chain.json", gell_mann_chain(b_side=(2, 7)).json())
        assert runner.invoke(cli, ["chain-check", "--spec", path, "--cut", "1"]).exit_code == 1

    def test_long_chain_needs_slow(self, runner, write_json):
        path = write_json("chain.json", gell_mann_chain(n_sites=3).json())
        result = runner.invoke(cli, ["chain-check", "--spec", path, "--cut", "1"])
        assert result.exit_code == 2
        assert "--slow" in result.output


class TestStdoutJson:

    def test_decompose_without_out_prints_only_json(self, runner, xy_file):
        result = runner.invoke(cli, ["decompose", "--in", xy_file])
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data["metadata"]["command"] == "decompose"
        assert len(data["interaction_terms"]) == 2

    def test_verdict_command_without_out_prints_only_json(self, runner, write_json):
        path = write_json("chain.json", gell_mann_chain(b_side=(2, 7)).json())
        result = runner.invoke(cli, ["chain-check", "--spec", path, "--cut", "1"])
        assert result.exit_code == 1
        assert json.loads(result.stdout)["closure_dim"] == 24

    def test_tables_come_back_with_out(self, runner, xy_file, tmp_path):
        runner.invoke(cli, ["decompose", "--in", xy_file])
        result = runner.invoke(cli, ["decompose", "--in", xy_file, "--out", str(tmp_path / "d.json")])
        assert result.exit_code == 0, result.output
        assert "Wrote" in result.output


class TestGroup:

    def test_info(self, runner):
        result = runner.invoke(cli, ["--rel-tol", "1e-10", "info"])
        assert result.exit_code == 0, result.output
        assert "rel_tol" in result.output

    def test_help(self, runner):
        result = runner.invoke(cli, ["help"])
        assert result.exit_code == 0
        assert "chain-check" in result.output

    def test_invalid_tolerance(self, runner):
        result = runner.invoke(cli, ["--rel-tol", "0.5", "info"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_selftest(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["selftest", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert read(out)["all_passed"] is True

    def test_selftest_with_extreme_tolerances(self, runner, monkeypatch):
        def failing(config):
            return False, "residual 1.0e+00"

        monkeypatch.setattr(selftest, "CRITERIA", (
            (1, "xy interface algebra", selftest._xy_model),
            (2, "failing", failing),
        ))
        result = runner.invoke(cli, ["--rel-tol", "1e-15", "--member-tol", "1e-15", "selftest"])
        assert result.exit_code == 1
        assert "Failing criteria" in result.output
        assert result.exception is None or isinstance(result.exception, SystemExit)
