"""Tests for the command line client: outputs, files, exit codes."""

from pathlib import Path

import pytest

from surfgrow.cli import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFY,
    _parse_distances,
    main,
)
from surfgrow.synth import full_encoder, growth_stage

GOLDEN_DIR = Path(__file__).parent / "golden"


class TestDistanceSelectors:
    def test_single_and_range(self):
        assert _parse_distances("3") == [3]
        assert _parse_distances("2..5") == [2, 3, 4, 5]
        assert _parse_distances("4..4") == [4]

    @pytest.mark.parametrize("bad", ["", "x", "3..", "5..3", "1..4", "2..2..2", "-3"])
    def test_bad_selectors(self, bad):
        from surfgrow.cli import _CliFailure

        with pytest.raises(_CliFailure) as exc:
            _parse_distances(bad)
        assert exc.value.code == EXIT_CONFIG


class TestGenerate:
    def test_single_to_stdout(self, capsys):
        assert main(["generate", "-d", "3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out == full_encoder(3).to_text() + "\n"

    def test_output_is_deterministic(self, capsys):
        main(["generate", "-d", "5"])
        first = capsys.readouterr().out
        main(["generate", "-d", "5"])
        assert capsys.readouterr().out == first

    def test_stage_and_no_markers(self, capsys):
        assert main(["generate", "-d", "4", "--stage"]) == EXIT_OK
        assert capsys.readouterr().out == growth_stage(4).to_text() + "\n"
        assert main(["generate", "-d", "3", "--no-markers"]) == EXIT_OK
        assert "MARK" not in capsys.readouterr().out

    def test_url_format(self, capsys):
        main(["generate", "-d", "2", "--format", "url"])
        assert capsys.readouterr().out.startswith("https://algassert.com/crumble#circuit=")

    def test_range_requires_out(self, capsys):
        assert main(["generate", "-d", "2..4"]) == EXIT_CONFIG
        assert "needs --out" in capsys.readouterr().err

    def test_range_writes_files(self, tmp_path, capsys):
        out = tmp_path / "circuits"
        assert main(["generate", "-d", "2..4", "--out", str(out)]) == EXIT_OK
        names = sorted(p.name for p in out.iterdir())
        assert names == ["encoder_d2.txt", "encoder_d3.txt", "encoder_d4.txt"]
        assert (out / "encoder_d3.txt").read_text() == full_encoder(3).to_text() + "\n"
        capsys.readouterr()

    def test_written_files_are_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["generate", "-d", "6", "--out", str(a)])
        main(["generate", "-d", "6", "--out", str(b)])
        capsys.readouterr()
        assert (a / "encoder_d6.txt").read_bytes() == (b / "encoder_d6.txt").read_bytes()

    def test_records_files_use_json_suffix(self, tmp_path, capsys):
        main(["generate", "-d", "2", "--format", "records", "--out", str(tmp_path)])
        capsys.readouterr()
        assert (tmp_path / "encoder_d2.json").exists()

    def test_pattern_cap(self, capsys):
        assert main(["generate", "-d", "26"]) == EXIT_CONFIG
        assert main(["generate", "-d", "26", "--max-pattern-d", "26"]) == EXIT_OK
        capsys.readouterr()


class TestVerify:
    def test_range_passes(self, capsys):
        assert main(["verify", "-d", "2..6"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("PASS") == 5
        assert "FAIL" not in out

    def test_stage_verification(self, capsys):
        assert main(["verify", "-d", "3..5", "--stage"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "stage 3 -> 5" in out and "stage 5 -> 7" in out

    def test_strict_flag(self, capsys):
        assert main(["verify", "-d", "3", "--strict"]) == EXIT_OK
        capsys.readouterr()

    def test_verify_golden_file(self, capsys):
        path = GOLDEN_DIR / "base_d3.txt"
        assert main(["verify", "--file", str(path)]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_sabotaged_file_fails_with_verify_code(self, tmp_path, capsys):
        text = full_encoder(3).to_text()
        broken = text.rsplit("CX_", 1)[0].rstrip(";")
        path = tmp_path / "broken.txt"
        path.write_text(broken)
        assert main(["verify", "--file", str(path)]) == EXIT_VERIFY
        out = capsys.readouterr().out
        assert "FAIL" in out and "first unmatched" in out

    def test_unparseable_file_is_parse_error(self, tmp_path, capsys):
        path = tmp_path / "junk.txt"
        path.write_text("Q(0,0)0;NONSENSE_1")
        assert main(["verify", "--file", str(path)]) == EXIT_PARSE
        err = capsys.readouterr().err
        assert "error:" in err and "NONSENSE_1" in err

    def test_verify_without_target_is_config(self, capsys):
        assert main(["verify"]) == EXIT_CONFIG
        capsys.readouterr()

    def test_file_with_range_is_config(self, capsys):
        path = GOLDEN_DIR / "base_d2.txt"
        assert main(["verify", "--file", str(path), "-d", "2..3"]) == EXIT_CONFIG
        capsys.readouterr()


class TestStats:
    def test_table_flags_the_count_discrepancy(self, capsys):
        assert main(["stats", "-d", "3..5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "*" in out
        assert "canonical circuits are authoritative" in out
        # d=3 row: measured 20, claimed 24 flagged, baseline 28.
        row = next(line for line in out.splitlines() if line.strip().startswith("3"))
        assert "20" in row and "24*" in row and "28" in row

    def test_even_rows_have_no_baseline(self, capsys):
        main(["stats", "-d", "4"])
        row = next(line for line in capsys.readouterr().out.splitlines()
                   if line.strip().startswith("4"))
        assert row.rstrip().endswith("-")


class TestOracle:
    def test_impossibility_output(self, capsys):
        assert main(["oracle", "-d", "3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "impossible" in out
        assert "16" in out and "8" in out

    def test_census_output(self, capsys):
        assert main(["oracle", "-D", "4", "--elements"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "weight-1 members 0" in out
        assert "weight-2 members 6" in out
        assert out.count("+") >= 6

    def test_no_arguments_is_config(self, capsys):
        assert main(["oracle"]) == EXIT_CONFIG
        capsys.readouterr()

    def test_census_cap_flag(self, capsys):
        assert main(["oracle", "-D", "13"]) == EXIT_CONFIG
        assert main(["oracle", "-D", "13", "--census-cap", "13"]) == EXIT_OK
        capsys.readouterr()

    def test_formula_backed_impossibility(self, capsys):
        assert main(["oracle", "-d", "15"]) == EXIT_OK
        assert "boundary count" in capsys.readouterr().out


class TestParserShape:
    def test_unknown_subcommand_exits_with_argparse_code(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

    def test_help_mentions_all_subcommands(self, capsys):
        with pytest.raises(SystemExit):
            main(["--help"])
        out = capsys.readouterr().out
        for sub in ("generate", "verify", "stats", "oracle", "serve"):
            assert sub in out
