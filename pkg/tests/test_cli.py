from fractions import Fraction

from typer.testing import CliRunner

from sparsecut import __version__
from sparsecut.commands.bounds import cmd_bounds
from sparsecut.commands.closure import cmd_closure
from sparsecut.commands.tight import cmd_verify_tightness
from sparsecut.core.constants import SupportMode, TightFamily
from sparsecut.core.smilp import load_instance
from sparsecut.estimator import EstimatorConfig
from sparsecut.main import app

runner = CliRunner()


def test_version():
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == __version__


def test_gen_to_stdout():
    result = runner.invoke(app, ["gen", "--kind", "packing", "--nv", "3", "--sqr", "2"])
    assert result.exit_code == 0
    assert result.stdout.startswith("SMILP 1")


def test_gen_to_file(tmp_path):
    out = tmp_path / "inst.smilp"
    graph_out = tmp_path / "graph.txt"
    result = runner.invoke(
        app,
        ["gen", "--kind", "covering", "--two-stage", "--nv", "4", "--sqr", "2",
         "-o", str(out), "--graph-out", str(graph_out)],
    )
    assert result.exit_code == 0
    document = load_instance(out)
    assert document.instance.num_vars == 8
    assert graph_out.read_text().splitlines()[0] == "3"


def test_gen_rejects_bad_parameters():
    result = runner.invoke(app, ["gen", "--nv", "1"])
    assert result.exit_code == 2
    assert "Error:" in result.stderr


def test_bounds(star_file, tmp_path):
    out = tmp_path / "bound.yaml"
    result = runner.invoke(app, ["bounds", str(star_file), "--mode", "ss", "-o", str(out)])
    assert result.exit_code == 0
    assert "packing_eta" in out.read_text()


def test_bounds_with_custom_supports(star_file):
    result = runner.invoke(
        app, ["bounds", str(star_file), "--mode", "custom", "--support", "1,2", "--support", "1,3"]
    )
    assert result.exit_code == 0


def test_bounds_on_a_missing_file(tmp_path):
    result = runner.invoke(app, ["bounds", str(tmp_path / "nope.smilp")])
    assert result.exit_code == 2
    assert "does not exist" in result.stderr


def test_closure_with_oracle(star_file, tmp_path):
    trace = tmp_path / "trace.csv"
    result = runner.invoke(
        app, ["closure", str(star_file), "--mode", "ss", "--oracle", "-o", str(trace)]
    )
    assert result.exit_code == 0
    assert trace.read_text().startswith("round,support_id,z_value,violation,cut_id")


def test_closure_rejects_decimal_epsilon(star_file):
    result = runner.invoke(app, ["closure", str(star_file), "--eps", "0.01"])
    assert result.exit_code == 2


def test_tight():
    result = runner.invoke(app, ["tight", "3cycle"])
    assert result.exit_code == 0


def test_tight_rejects_foreign_parameters():
    result = runner.invoke(app, ["tight", "3cycle", "--delta", "2"])
    assert result.exit_code == 2
    assert "3cycle takes eps" in result.stderr


def test_experiment_rejects_an_empty_batch():
    result = runner.invoke(app, ["experiment", "--count", "0"])
    assert result.exit_code == 2


def test_experiment_prints_the_csv():
    result = runner.invoke(
        app,
        ["experiment", "--kind", "packing", "--two-stage", "--nv", "3", "--sqr", "2",
         "--count", "2"],
    )
    assert result.exit_code == 0
    assert result.stdout.startswith("id,zI,zClosure,ratio,bound,ok")
    assert "# Closure experiment: packing" in result.stdout


def test_experiment_files_and_store(tmp_path):
    out = tmp_path / "ratios.csv"
    db = tmp_path / "results.db"
    result = runner.invoke(
        app,
        ["experiment", "--kind", "packing", "--two-stage", "--nv", "3", "--sqr", "2",
         "--count", "2", "-o", str(out), "--db", str(db)],
    )
    assert result.exit_code == 0
    assert out.read_text().splitlines()[0] == "id,zI,zClosure,ratio,bound,ok"
    assert out.with_suffix(".md").exists()

    runs = runner.invoke(app, ["db", "runs", "--db", str(db)])
    assert runs.exit_code == 0
    assert "packing-ns-nv3-sqr2-2s-seed0-n2" in runs.stdout

    show = runner.invoke(app, ["db", "show", "packing-ns-nv3-sqr2-2s-seed0-n2", "--db", str(db)])
    assert show.exit_code == 0
    missing = runner.invoke(app, ["db", "show", "other", "--db", str(db)])
    assert missing.exit_code == 2


def test_command_functions(star_file):
    report = cmd_bounds(star_file, SupportMode.NATURAL_SPARSE)
    assert report.value == Fraction(3, 2)
    outcome = cmd_closure(star_file, SupportMode.SUPER_SPARSE, EstimatorConfig(), oracle=True)
    assert outcome.run.z_estimate == outcome.exact == Fraction(5, 2)
    assert outcome.z_int == 2
    assert cmd_verify_tightness(TightFamily.STAR_SS, {"delta": 2}).ok
