import numpy as np
import pytest

import entrothresh as et
from entrothresh.cli import (
    EXIT_INFEASIBLE,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_OUTPUT,
    EXIT_USAGE,
    RunConfig,
    emit_csv,
    main,
    read_csv,
    run,
)
from conftest import pgm_bytes
from oracles import bimodal_counts, image_from_counts


@pytest.fixture
def two_tone_path(tmp_path):
    rng = np.random.default_rng(3)
    pixels = np.where(rng.random((24, 32)) < 0.4, 10, 200).astype(np.uint8)
    path = tmp_path / "two_tone.pgm"
    path.write_bytes(pgm_bytes(32, 24, pixels.tobytes()))
    return path


@pytest.fixture
def bimodal_path(tmp_path):
    arr = image_from_counts(bimodal_counts(np.random.default_rng(103)))
    path = tmp_path / "bimodal.pgm"
    path.write_bytes(pgm_bytes(arr.shape[1], arr.shape[0], arr.tobytes()))
    return path


# ------------------------------------------------------------ single mode


def test_single_shannon_prints_threshold(two_tone_path, capsys):
    assert main(["--input", str(two_tone_path), "--mode", "single", "--entropy", "shannon"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "threshold: 10" in out
    assert "entropy_total:" in out


def test_single_writes_bilevel_image(two_tone_path, tmp_path, capsys):
    out_img = tmp_path / "bw.pgm"
    code = main(
        [
            "--input", str(two_tone_path), "--mode", "single",
            "--entropy", "tsallis", "--index", "0.5",
            "--out-image", str(out_img),
        ]
    )
    assert code == EXIT_OK
    back = et.load_image(out_img)
    assert set(np.unique(back.pixels)) <= {0, 255}
    # threshold 10: only the 200-tone pixels turn white
    src = et.load_image(two_tone_path)
    assert np.array_equal(back.pixels == 255, src.pixels > 10)


@pytest.mark.parametrize(
    "argv",
    [
        ["--mode", "single", "--entropy", "tsallis"],  # missing index
        ["--mode", "single", "--entropy", "shannon", "--index", "0.5"],
        ["--mode", "single"],  # missing functional
        ["--mode", "single", "--entropy", "tsallis", "--index", "1.5"],  # needs override
        ["--mode", "single", "--entropy", "kaniadakis", "--index", "0.0"],
        ["--mode", "single", "--entropy", "shannon", "--grid", "0.5"],
        ["--mode", "single", "--entropy", "shannon", "--report", "r.csv"],
        ["--mode", "sweep", "--entropy", "shannon", "--grid-default"],
        ["--mode", "sweep", "--entropy", "tsallis", "--grid", ""],
        ["--mode", "sweep", "--entropy", "tsallis", "--grid", "0.5,abc"],
        ["--mode", "sweep", "--entropy", "tsallis", "--grid", "0.5,0.5"],
        ["--mode", "sweep", "--entropy", "tsallis"],  # no grid at all
        ["--mode", "compare", "--entropy", "tsallis", "--grid-default"],
        ["--mode", "compare", "--grid", "0.5", "--index", "0.5"],
        ["--mode", "compare", "--grid", "0.5", "--out-image", "x.pgm"],
        ["--mode", "nonsense"],
    ],
)
def test_usage_errors_exit_one(two_tone_path, argv, capsys):
    assert main(["--input", str(two_tone_path)] + argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_extended_index_override(two_tone_path, capsys):
    code = main(
        [
            "--input", str(two_tone_path), "--mode", "single",
            "--entropy", "tsallis", "--index", "1.5", "--allow-extended-index",
        ]
    )
    assert code == EXIT_OK
    assert "threshold:" in capsys.readouterr().out


# ------------------------------------------------------------ input fails


def test_missing_input_exits_two(tmp_path, capsys):
    code = main(["--input", str(tmp_path / "nope.pgm"), "--mode", "single", "--entropy", "shannon"])
    assert code == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_malformed_input_exits_two(tmp_path, capsys):
    bad = tmp_path / "broken.pgm"
    bad.write_bytes(b"P5\n4 4\n255\n\x00")
    assert main(["--input", str(bad), "--mode", "single", "--entropy", "shannon"]) == EXIT_INPUT


def test_single_tone_image_exits_three(tmp_path, capsys):
    flat = tmp_path / "flat.pgm"
    flat.write_bytes(pgm_bytes(4, 4, bytes([9] * 16)))
    assert main(["--input", str(flat), "--mode", "single", "--entropy", "shannon"]) == EXIT_INFEASIBLE
    assert main(["--input", str(flat), "--mode", "compare", "--grid", "0.5"]) == EXIT_INFEASIBLE


def test_unwritable_report_exits_four_without_partial_file(two_tone_path, tmp_path, capsys):
    report = tmp_path / "no_dir" / "report.csv"
    code = main(
        ["--input", str(two_tone_path), "--mode", "sweep", "--entropy", "tsallis",
         "--grid", "0.1,0.9", "--report", str(report)]
    )
    assert code == EXIT_OUTPUT
    assert not report.exists()
    assert not (tmp_path / "no_dir").exists()


def test_unwritable_out_image_exits_four(two_tone_path, tmp_path):
    out_img = tmp_path / "no_dir" / "bw.pgm"
    code = main(
        ["--input", str(two_tone_path), "--mode", "single", "--entropy", "shannon",
         "--out-image", str(out_img)]
    )
    assert code == EXIT_OUTPUT


# ------------------------------------------------------------- sweep mode


def test_sweep_report_round_trips(bimodal_path, tmp_path, capsys):
    report = tmp_path / "sweep.csv"
    code = main(
        ["--input", str(bimodal_path), "--mode", "sweep", "--entropy", "kaniadakis",
         "--grid", "0.1,0.5,0.9", "--report", str(report)]
    )
    assert code == EXIT_OK
    text = report.read_text()
    assert text.splitlines()[0] == "index,threshold_kaniadakis,edges_kaniadakis"
    (parsed,) = read_csv(report)
    expected = et.sweep(et.load_image(bimodal_path), et.KANIADAKIS, (0.1, 0.5, 0.9))
    assert parsed == expected


def test_sweep_stdout_mentions_best_row(bimodal_path, capsys):
    code = main(
        ["--input", str(bimodal_path), "--mode", "sweep", "--entropy", "tsallis",
         "--grid", "0.2,0.8"]
    )
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("functional: tsallis")
    assert "best: index" in out


# ----------------------------------------------------------- compare mode


def test_compare_two_tone_rows_share_threshold(two_tone_path, tmp_path):
    report = tmp_path / "cmp.csv"
    code = main(
        ["--input", str(two_tone_path), "--mode", "compare", "--grid-default",
         "--report", str(report)]
    )
    assert code == EXIT_OK
    lines = report.read_text().splitlines()
    assert lines[0] == "index,threshold_tsallis,edges_tsallis,threshold_kaniadakis,edges_kaniadakis"
    assert len(lines) == 1 + len(et.DEFAULT_INDEX_GRID)
    for line in lines[1:]:
        _, t_ts, e_ts, t_ka, e_ka = line.split(",")
        assert t_ts == t_ka == "10"
        assert e_ts == e_ka


def test_compare_report_round_trips_and_is_byte_identical(bimodal_path, tmp_path):
    r1, r2 = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["--input", str(bimodal_path), "--mode", "compare", "--grid", "0.1,0.3,0.7,0.9"]
    assert main(argv + ["--report", str(r1)]) == EXIT_OK
    assert main(argv + ["--report", str(r2)]) == EXIT_OK
    assert r1.read_bytes() == r2.read_bytes()
    ts, ka = read_csv(r1)
    img = et.load_image(bimodal_path)
    assert ts == et.sweep(img, et.TSALLIS, (0.1, 0.3, 0.7, 0.9))
    assert ka == et.sweep(img, et.KANIADAKIS, (0.1, 0.3, 0.7, 0.9))


def test_compare_prints_transition_warning(tmp_path, capsys):
    from oracles import transition_counts

    arr = image_from_counts(transition_counts())
    path = tmp_path / "transition.pgm"
    path.write_bytes(pgm_bytes(arr.shape[1], arr.shape[0], arr.tobytes()))
    code = main(["--input", str(path), "--mode", "compare", "--grid-default"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "transition tsallis: index 0.8 -> 0.9" in out
    assert "transition kaniadakis:" in out


def test_jump_tolerance_flag_silences_transitions(tmp_path, capsys):
    from oracles import transition_counts

    arr = image_from_counts(transition_counts())
    path = tmp_path / "transition.pgm"
    path.write_bytes(pgm_bytes(arr.shape[1], arr.shape[0], arr.tobytes()))
    code = main(
        ["--input", str(path), "--mode", "sweep", "--entropy", "tsallis",
         "--grid-default", "--jump-tolerance", "150"]
    )
    assert code == EXIT_OK
    assert "transition" not in capsys.readouterr().out


def test_connectivity_flag_changes_edge_counts(tmp_path):
    rng = np.random.default_rng(107)
    pixels = np.where(rng.random((32, 32)) < 0.5, 60, 190).astype(np.uint8)
    path = tmp_path / "noise.pgm"
    path.write_bytes(pgm_bytes(32, 32, pixels.tobytes()))
    img = et.load_image(path)
    four = et.sweep(img, et.TSALLIS, (0.5,), connectivity=4)
    eight = et.sweep(img, et.TSALLIS, (0.5,), connectivity=8)
    assert eight.rows[0].edge_pixels > four.rows[0].edge_pixels

    r4, r8 = tmp_path / "c4.csv", tmp_path / "c8.csv"
    base = ["--input", str(path), "--mode", "sweep", "--entropy", "tsallis", "--grid", "0.5"]
    assert main(base + ["--connectivity", "4", "--report", str(r4)]) == EXIT_OK
    assert main(base + ["--connectivity", "8", "--report", str(r8)]) == EXIT_OK
    assert read_csv(r4)[0] == four
    assert read_csv(r8)[0] == eight


# ------------------------------------------------------------- csv layer


def test_emit_csv_preserves_index_text(tmp_path):
    rows = (et.SweepRow(0.01, 119, 7807), et.SweepRow(0.99, 120, 7901))
    table = et.SweepTable(et.TSALLIS, rows)
    path = tmp_path / "t.csv"
    emit_csv([table], path)
    assert path.read_text() == (
        "index,threshold_tsallis,edges_tsallis\n0.01,119,7807\n0.99,120,7901\n"
    )


def test_emit_csv_rejects_mismatched_grids(tmp_path):
    ts = et.SweepTable(et.TSALLIS, (et.SweepRow(0.1, 10, 1),))
    ka = et.SweepTable(et.KANIADAKIS, (et.SweepRow(0.2, 10, 1),))
    path = tmp_path / "bad.csv"
    with pytest.raises(ValueError):
        emit_csv([ts, ka], path)
    assert not path.exists()
    with pytest.raises(ValueError):
        emit_csv([ts, ts], tmp_path / "bad2.csv")
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "bad3.csv")


def test_read_csv_rejects_malformed(tmp_path):
    path = tmp_path / "junk.csv"
    path.write_text("foo,bar\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(path)
    path.write_text("")
    with pytest.raises(ValueError):
        read_csv(path)
    path.write_text("index,threshold_tsallis,edges_tsallis\n0.5,1\n")
    with pytest.raises(ValueError):
        read_csv(path)


# --------------------------------------------------------- config objects


def test_run_accepts_config_directly(two_tone_path):
    config = RunConfig(input_path=str(two_tone_path), mode="single", entropy_kind="shannon")
    assert run(config) == EXIT_OK


def test_run_rejects_unknown_tie_break(two_tone_path):
    config = RunConfig(
        input_path=str(two_tone_path), mode="single", entropy_kind="shannon", tie_break="largest"
    )
    assert run(config) == EXIT_USAGE
