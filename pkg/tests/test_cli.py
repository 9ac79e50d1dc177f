"""CLI behavior: report formats, exit codes, determinism, config files."""

import subprocess
import sys

from analine.cli import (EXIT_FINDING, EXIT_IO, EXIT_OK, EXIT_USAGE, main)

FAST_SAMPLER = ["--window", "-2,-2,2,2", "--grid-step", "1/8",
                "--random-points", "300"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- series ----------------------------------------------------------------------

def test_norm_command(capsys):
    code, out, _ = run_cli(capsys, "series", "norm", "0:1 1:1 r=2")
    assert code == EXIT_OK
    assert "norm=3.0" in out and "lo=3" in out


def test_split_command_sign_convention(capsys):
    code, out, _ = run_cli(capsys, "series", "split", "1:1 0:1 -1:1")
    assert code == EXIT_OK
    assert "inner=0:1 1:1" in out
    assert "outer=-1:-1" in out
    assert "bounded_by_h=true" in out


def test_divide_command(capsys):
    code, out, _ = run_cli(capsys, "series", "divide",
                           "--entries", "1:1;0:-1", "--radius", "1/2")
    assert code == EXIT_OK
    assert "quotient=0:1" in out
    assert "certified=true" in out
    assert "bound=2.0" in out


def test_divide_precondition_failure_exits_usage(capsys):
    code, _, err = run_cli(capsys, "series", "divide",
                           "--entries", "0:1;0:1", "--radius", "1/2")
    assert code == EXIT_USAGE
    assert "kernel" in err


def test_pair_command(capsys):
    code, out, _ = run_cli(capsys, "series", "pair", "0:1", "-1:1",
                           "--radius", "1/2")
    assert code == EXIT_OK and "value=1" in out


def test_eval_and_mul(capsys):
    code, out, _ = run_cli(capsys, "series", "eval", "0:1 2:1", "--at", "i")
    assert code == EXIT_OK and "value=0" in out
    code, out, _ = run_cli(capsys, "series", "mul", "0:1 1:1", "0:1 1:-1")
    assert code == EXIT_OK and "product=0:1 2:-1" in out


def test_parse_error_exits_usage(capsys):
    code, _, err = run_cli(capsys, "series", "norm", "garbage::")
    assert code == EXIT_USAGE and "error" in err


# -- axioms ----------------------------------------------------------------------

def test_axioms_default_pass(capsys):
    code, out, _ = run_cli(capsys, "axioms", *FAST_SAMPLER)
    assert code == EXIT_OK
    assert "record=summary pass=true" in out
    assert "item=6" in out and "verdict=NoCounterexampleFound" in out


def test_axioms_negate_six_finds_counterexample(capsys):
    code, out, _ = run_cli(capsys, "axioms", "--f", "1:1", "--g", "0:1",
                           "--r", "1", "--s", "1", "--negate", "6",
                           *FAST_SAMPLER)
    assert code == EXIT_FINDING
    assert "verdict=Counterexample" in out


def test_axioms_empty_sampler_vacuous(capsys):
    code, out, _ = run_cli(capsys, "axioms", "--grid-step", "0",
                           "--random-points", "0")
    assert code == EXIT_OK
    assert "samples=0" in out and "vacuous=true" in out


def test_axioms_bad_branch_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "axioms", "--items", "3", "--r", "2",
                           *FAST_SAMPLER)
    assert code == EXIT_USAGE and "item 3" in err


def test_axioms_fig_written(tmp_path, capsys):
    fig = tmp_path / "axioms.png"
    code, _, _ = run_cli(capsys, "axioms", "--grid-step", "1/4",
                         "--random-points", "50", "--window", "-1,-1,1,1",
                         "--fig", str(fig))
    assert code == EXIT_OK and fig.exists() and fig.stat().st_size > 0


# -- plot -------------------------------------------------------------------------

def test_plot_ppm_and_svg(tmp_path, capsys):
    out_ppm = tmp_path / "disc.ppm"
    code, out, _ = run_cli(capsys, "plot", "|1:1| <= 1",
                           "--window", "-2,-2,2,2", "--grid-step", "1/32",
                           "--out", str(out_ppm))
    assert code == EXIT_OK
    assert out_ppm.read_bytes().startswith(b"P6\n")
    out_svg = tmp_path / "disc.svg"
    code, _, _ = run_cli(capsys, "plot", "|1:1| <= 1 & |1:1| >= 1",
                         "--window", "-2,-2,2,2", "--grid-step", "1/32",
                         "--out", str(out_svg))
    assert code == EXIT_OK
    assert "<svg" in out_svg.read_text()


def test_plot_is_bit_exact_across_runs(tmp_path, capsys):
    args = ["plot", "(|1:1| <= 1) | (|0:-1 1:1| < 1/2)",
            "--window", "-2,-2,2,2", "--grid-step", "1/16"]
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    assert run_cli(capsys, *args, "--out", str(a))[0] == EXIT_OK
    assert run_cli(capsys, *args, "--out", str(b))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_plot_io_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "plot", "|1:1| <= 1",
                           "--out", str(tmp_path / "no" / "dir" / "x.ppm"))
    assert code == EXIT_IO and "i/o" in err


# -- spectrum --------------------------------------------------------------------

def test_spectrum_records(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "0:-1 2:1")     # T^2 - 1
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        re_s, im_s, rad_s = line.split()
        assert abs(abs(float(re_s)) - 1.0) < 1e-9
        assert abs(float(im_s)) < 1e-9
        assert float(rad_s) <= 1e-10


def test_spectrum_markers(capsys):
    assert run_cli(capsys, "spectrum")[1].strip() == "plane"
    assert run_cli(capsys, "spectrum", "0:5")[1].strip() == "empty"


# -- site -------------------------------------------------------------------------

def test_site_covers(capsys):
    code, out, _ = run_cli(capsys, "site", "covers", "--f", "1:1")
    assert code == EXIT_OK
    assert out.count("action=covers") == 2
    assert "inverted=1:1" in out


def test_site_refine_identity(capsys):
    code, out, _ = run_cli(capsys, "site", "refine", "--c1", "tp_t",
                           "--c2", "tp_t")
    assert code == EXIT_OK and "refines=true" in out \
        and "assignment=0,1" in out


def test_site_refine_witness(capsys):
    code, out, _ = run_cli(capsys, "site", "refine", "--c1", "tp_t",
                           "--c2", "tp_tm1")
    assert code == EXIT_OK and "refines=false" in out \
        and "witness_member=0" in out


def test_site_spa_member(capsys):
    code, out, _ = run_cli(capsys, "site", "spa", "--kind", "order",
                           "--at", "0", "--gamma", "1/2",
                           "--nums", "1:1", "--den", "0:1")
    assert code == EXIT_OK and "member=true" in out


def test_site_spa_not_in_spectrum_reported_distinctly(capsys):
    code, out, _ = run_cli(capsys, "site", "spa", "--kind", "order",
                           "--at", "0", "--gamma", "1/2", "--pair", "outer",
                           "--nums", "1:1", "--den", "0:1")
    assert code == EXIT_OK and "in_spectrum=false" in out


def test_site_localize(capsys):
    code, out, _ = run_cli(capsys, "site", "localize", "--nums", "0:1",
                           "--den", "1:1")
    assert code == EXIT_OK and "inverted=1:1" in out


def test_site_unknown_names_are_usage_errors(capsys):
    code, _, err = run_cli(capsys, "site", "covers", "--pair", "nope",
                           "--f", "1:1")
    assert code == EXIT_USAGE and "unknown pair" in err
    code, _, err = run_cli(capsys, "site", "refine", "--c1", "nope",
                           "--c2", "tp_t")
    assert code == EXIT_USAGE


def test_site_corrupt_fixture_path_is_io_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "site", "covers", "--f", "1:1",
                           "--fixtures", str(tmp_path))    # a directory
    assert code == EXIT_IO


def test_site_refine_across_bases_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "site", "refine", "--c1", "tp_t",
                           "--c2", "disc_tp")
    assert code == EXIT_USAGE and "same pair" in err


# -- certify / selftest ------------------------------------------------------------

def test_certify_report_fields(capsys):
    code, out, _ = run_cli(capsys, "certify", "--radius", "1/2",
                           "--trials", "4", "--max-degree", "5")
    assert code == EXIT_OK
    line = [l for l in out.splitlines() if l.startswith("trial=0")][0]
    keys = [kv.split("=")[0] for kv in line.split()]
    assert keys == ["trial", "degree", "normB", "normC", "ratio", "bound",
                    "pass"]
    assert "record=summary" in out


def test_certify_radius_validation(capsys):
    code, _, err = run_cli(capsys, "certify", "--radius", "2")
    assert code == EXIT_USAGE


QUICK_SELFTEST = ["selftest", "--trials", "10", "--configs", "2",
                  "--triples", "2", "--valuations", "2",
                  "--random-points", "200", "--grid-step", "1/8",
                  "--window", "-2,-2,2,2"]


def test_selftest_quick_pass(tmp_path, capsys):
    out_file = tmp_path / "report.txt"
    fig = tmp_path / "matrix.png"
    code, out, _ = run_cli(capsys, *QUICK_SELFTEST, "--out", str(out_file),
                           "--fig", str(fig))
    assert code == EXIT_OK
    text = out_file.read_text()
    assert "record=overall pass=true" in text
    assert "check=division-bound pass=true" in text
    assert text == out
    assert fig.exists() and fig.stat().st_size > 0


def test_selftest_cap_scales_down(capsys):
    code, out, _ = run_cli(capsys, *QUICK_SELFTEST, "--cap", "4")
    assert code == EXIT_OK and "record=overall pass=true" in out


def test_selftest_corrupt_fixtures_io_exit(tmp_path, capsys):
    code, _, _ = run_cli(capsys, *QUICK_SELFTEST, "--fixtures",
                         str(tmp_path / "missing.fixtures"))
    assert code == EXIT_IO


def test_config_file_flags_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid-step = 1/4\nrandom-points = 100\n"
                   "window = -1,-1,1,1\n")
    code, out, _ = run_cli(capsys, "axioms", "--config", str(cfg))
    assert code == EXIT_OK and "grid_step=1/4" in out
    code, out, _ = run_cli(capsys, "axioms", "--config", str(cfg),
                           "--grid-step", "1/2")
    assert code == EXIT_OK and "grid_step=1/2" in out


def test_entrypoint_runs_as_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "analine.cli", "series", "norm", "0:1 1:1 r=2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "norm=3.0" in proc.stdout


def test_selftest_reports_are_byte_identical():
    argv = [sys.executable, "-m", "analine.cli", *QUICK_SELFTEST]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
