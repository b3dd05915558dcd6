from fractions import Fraction

import pytest
from pydantic import ValidationError

from sparsecut.commands.experiment import build_config
from sparsecut.constructions import GenParams
from sparsecut.core.constants import CSV_HEADER, KindTag, SupportMode
from sparsecut.core.database import (get_rows, get_runs, open_database,
                                     run_id_for, save_experiment)
from sparsecut.core.reporter import ratio_csv, render_summary
from sparsecut.experiment import (ExperimentConfig, ExperimentResult, RatioRow,
                                  run_experiment)


@pytest.fixture
def star_config() -> ExperimentConfig:
    return ExperimentConfig(
        generator=GenParams(kind=KindTag.PACKING, nv=3, sqr=2, two_stage=True),
        count=2,
    )


def test_experiment_rows_follow_instance_order(star_config):
    result = run_experiment(star_config)
    assert [r.id for r in result.rows] == [1, 2]
    assert [r.seed for r in result.rows] == [0, 1]
    assert result.ok
    for row in result.measured:
        assert row.exact
        assert row.estimate_bracketed
        assert 1 <= row.ratio <= row.bound
        assert row.graph == "1-2 1-3"


def test_parallel_run_matches_the_serial_one(star_config):
    serial = run_experiment(star_config)
    parallel = run_experiment(star_config.model_copy(update={"workers": 2}))
    assert [r.model_dump() for r in parallel.rows] == [r.model_dump() for r in serial.rows]


def test_progress_callback_sees_every_row(star_config):
    seen = []
    run_experiment(star_config, progress=seen.append)
    assert [r.id for r in seen] == [1, 2]


def test_config_validation():
    generator = GenParams()
    with pytest.raises(ValidationError):
        ExperimentConfig(generator=generator, count=0)
    with pytest.raises(ValidationError):
        ExperimentConfig(generator=generator, mode=SupportMode.CUSTOM)
    assert ExperimentConfig(generator=generator).params_for(3).seed == 3


def test_build_config_merges_file_and_flags():
    file_data = {"nv": 4, "count": 3, "generator": {"sqr": 2}, "estimator": {"max_cuts": 7}}
    config = build_config(file_data, {"nv": 5, "seed": None, "epsilon": "1/10", "workers": 2})
    assert config.generator.nv == 5
    assert config.generator.sqr == 2
    assert config.generator.seed == 0
    assert config.count == 3
    assert config.workers == 2
    assert config.estimator.max_cuts == 7
    assert config.estimator.epsilon == Fraction(1, 10)


def test_row_ok_and_sandwich():
    row = RatioRow(id=1, seed=0, z_int=2, z_closure="5/2", z_lp=3, ratio="5/4", bound="3/2")
    assert row.ok and row.sandwiched
    assert row.to_csv_row() == ["1", "2", "5/2", "5/4", "3/2", "1"]
    above_lp = row.model_copy(update={"z_lp": Fraction(2)})
    assert not above_lp.sandwiched
    broken = row.model_copy(update={"bound": Fraction(1)})
    assert not broken.ok


def test_estimate_must_lie_between_the_closure_and_the_lp(star_config):
    row = RatioRow(
        id=1, seed=0, z_int=2, z_closure="5/2", z_lp=3, exact=True, gap="1/4",
        ratio="5/4", bound="3/2",
    )
    assert row.estimate_bracketed and row.consistent
    below_closure = row.model_copy(update={"gap": Fraction(-1, 4)})
    assert below_closure.ok and below_closure.sandwiched
    assert not below_closure.estimate_bracketed
    above_lp = row.model_copy(update={"gap": Fraction(1)})
    assert not above_lp.estimate_bracketed

    result = ExperimentResult(config=star_config, rows=(row, below_closure))
    assert not result.ok
    assert [r.gap for r in result.violations] == [Fraction(-1, 4)]


def test_minimizing_estimate_is_bracketed_from_below():
    row = RatioRow(
        id=1, seed=0, maximize=False, z_int=3, z_closure="5/2", z_lp=2, exact=True,
        gap="-1/4", ratio="6/5", bound="3/2",
    )
    assert row.consistent
    assert not row.model_copy(update={"gap": Fraction(1, 4)}).estimate_bracketed
    assert not row.model_copy(update={"gap": Fraction(-1)}).estimate_bracketed
    assert row.model_copy(update={"gap": None}).estimate_bracketed


def test_csv_and_summary(star_config):
    result = run_experiment(star_config)
    lines = ratio_csv(result).splitlines()
    assert lines[0] == ",".join(CSV_HEADER) == "id,zI,zClosure,ratio,bound,ok"
    assert len(lines) == 3
    assert all(line.endswith(",1") for line in lines[1:])
    summary = render_summary(result)
    assert summary.startswith("# Closure experiment: packing")
    assert "| 1-2 1-3 | 2 |" in summary
    assert "Violations" not in summary
    assert render_summary(result, title="Stars").startswith("# Stars")


def test_results_store(tmp_path, star_config):
    result = run_experiment(star_config)
    db = open_database(tmp_path / "r.db")
    assert get_runs(db) == []
    run_id = save_experiment(db, result)
    assert run_id == run_id_for(result) == "packing-ns-nv3-sqr2-2s-seed0-n2"
    # storing the same run again replaces it
    save_experiment(db, result)
    runs = get_runs(db)
    assert len(runs) == 1
    assert runs[0]["violations"] == 0
    stored = get_rows(db, run_id)
    assert [r.model_dump() for r in stored] == [r.model_dump() for r in result.rows]
    assert get_rows(db, "missing") == []
