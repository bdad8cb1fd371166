import pytest

from fdkg.cli import main

TEST_GROUP_FLAGS = ["--group", "modp-2027"]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCeremony:
    def test_all_honest_defaults_succeed(self, capsys):
        code, out, _ = run_cli(capsys, [
            "ceremony", "--n", "8", "--t", "2", "--k", "3", "--seed", "5",
            *TEST_GROUP_FLAGS])
        assert code == 0
        assert "reconstruction: success" in out
        assert "[ceremony] resolved config:" in out

    def test_missing_params_usage_error(self, capsys):
        code, _, err = run_cli(capsys, ["ceremony", "--n", "8"])
        assert code == 2
        assert "required" in err

    def test_scenario_config_file(self, capsys, tmp_path):
        # D = {1,3,5,7,9}, present set {3,5,7}; dealer 1 recovered via {3,5}
        cfg = tmp_path / "scenario.ini"
        cfg.write_text(
            "[ceremony]\n"
            "n = 10\nt = 2\nk = 3\nseed = 4\ngroup = modp-2027\n"
            "[guardians]\n"
            "1 = 2,3,5\n3 = 4,5,7\n5 = 3,6,7\n7 = 3,5,8\n9 = 2,5,7\n"
            "[behaviors]\n"
            "1 = absent-round2\n9 = absent-round2\n"
            "2 = byzantine-silent\n4 = byzantine-silent\n6 = byzantine-silent\n"
            "8 = byzantine-silent\n10 = byzantine-silent\n")
        code, out, _ = run_cli(capsys, ["ceremony", "--config", str(cfg)])
        assert code == 0
        assert "dealer 1: recovered via guardians [3, 5]" in out
        assert "dealer 9: recovered via guardians [5, 7]" in out

    def test_blocked_reconstruction_fails(self, capsys, tmp_path):
        cfg = tmp_path / "blocked.ini"
        cfg.write_text(
            "[ceremony]\nn = 6\nt = 2\nk = 2\nseed = 9\ngroup = modp-2027\n"
            "[guardians]\n1 = 2,3\n2 = 3,4\n3 = 4,5\n4 = 5,6\n5 = 6,1\n6 = 1,2\n"
            "[behaviors]\n1 = absent-round2\n2 = withhold-shares:1\n")
        code, out, _ = run_cli(capsys, ["ceremony", "--config", str(cfg)])
        assert code == 1
        assert "unrecoverable dealers [1]" in out

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "base.ini"
        cfg.write_text("[ceremony]\nn = 6\nt = 2\nk = 3\nseed = 1\ngroup = modp-2027\n")
        code, out, _ = run_cli(capsys, ["ceremony", "--config", str(cfg),
                                        "--seed", "99"])
        assert code == 0
        assert "seed = 99" in out

    def test_transcript_written(self, capsys, tmp_path):
        out_path = tmp_path / "transcript.jsonl"
        code, out, _ = run_cli(capsys, [
            "ceremony", "--n", "6", "--t", "2", "--k", "3", "--seed", "2",
            "--out", str(out_path), *TEST_GROUP_FLAGS])
        assert code == 0
        assert out_path.exists() and out_path.read_text().strip()


class TestSimulate:
    def test_full_retention_rate_one(self, capsys):
        code, out, _ = run_cli(capsys, [
            "simulate", "--n", "10", "--p", "0.8", "--r", "1.0",
            "--k", "3", "--t", "2", "--trials", "20", "--seed", "3"])
        assert code == 0
        assert "n,p,r,k,t,topology,trials,successes,rate" in out
        assert "10,0.8,1.0,3,2,er,20,20,1.0000" in out

    def test_invalid_grid_usage_error(self, capsys):
        code, _, err = run_cli(capsys, [
            "simulate", "--n", "10", "--k", "3", "--trials", "0", "--t", "2"])
        assert code == 2
        assert "trials" in err

    def test_repeat_runs_identical_csv(self, capsys, tmp_path):
        argv = ["simulate", "--n", "20", "--p", "0.8", "--r", "0.5,0.9",
                "--k", "4", "--t", "2,3", "--trials", "30", "--seed", "7"]
        files = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            code, _, _ = run_cli(capsys, argv + ["--out", str(path)])
            assert code == 0
            files.append(path.read_bytes())
        assert files[0] == files[1]

    def test_t_ratio_rule(self, capsys):
        code, out, _ = run_cli(capsys, [
            "simulate", "--n", "10", "--p", "1.0", "--r", "1.0",
            "--k", "4", "--t-ratio", "0.5", "--trials", "5", "--seed", "1"])
        assert code == 0
        assert "10,1.0,1.0,4,2,er,5,5,1.0000" in out


class TestElection:
    def test_honest_exact_counts(self, capsys):
        code, out, _ = run_cli(capsys, [
            "election", "--n", "8", "--t", "2", "--k", "3", "--candidates", "2",
            "--votes", "1,2,1,1,2", "--seed", "6", *TEST_GROUP_FLAGS])
        assert code == 0
        assert "result,1,3" in out
        assert "result,2,2" in out
        assert "valid ballots: 5" in out

    def test_missing_votes_usage_error(self, capsys):
        code, _, err = run_cli(capsys, [
            "election", "--n", "8", "--t", "2", "--k", "3"])
        assert code == 2
        assert "votes" in err

    def test_absent_dealer_within_liveness(self, capsys, tmp_path):
        cfg = tmp_path / "eligible.ini"
        cfg.write_text(
            "[election]\nn = 6\nt = 2\nk = 3\ncandidates = 2\n"
            "votes = 1,1,2\nseed = 13\ngroup = modp-2027\n"
            "[behaviors]\n2 = absent-round2\n")
        code, out, _ = run_cli(capsys, ["election", "--config", str(cfg)])
        assert code == 0
        assert "result,1,2" in out
        assert "result,2,1" in out

    def test_unreachable_dealer_fails(self, capsys, tmp_path):
        cfg = tmp_path / "blocked.ini"
        cfg.write_text(
            "[election]\nn = 5\nt = 2\nk = 2\ncandidates = 2\n"
            "votes = 1,2,1,2\nseed = 14\ngroup = modp-2027\n"
            "[guardians]\n1 = 2,3\n2 = 3,4\n3 = 4,5\n4 = 5,1\n5 = 1,2\n"
            "[behaviors]\n1 = absent-round2\n2 = withhold-shares:1\n")
        code, out, _ = run_cli(capsys, ["election", "--config", str(cfg)])
        assert code == 1
        assert "unrecoverable dealers [1]" in out


class TestCost:
    def test_example_scenario_total(self, capsys):
        code, out, _ = run_cli(capsys, [
            "cost", "--dealers", "50", "--k", "40", "--voters", "50",
            "--direct-revealers", "40", "--shares-revealed", "1600",
            "--n", "100"])
        assert code == 0
        assert "total             880000" in out
        assert "fdkg-distribution 336000" in out

    def test_large_scenario_total(self, capsys):
        code, out, _ = run_cli(capsys, [
            "cost", "--dealers", "2500", "--k", "40", "--voters", "2500",
            "--direct-revealers", "2000", "--shares-revealed", "80000",
            "--n", "5000"])
        assert code == 0
        assert "total             44000000" in out

    def test_zero_scenario(self, capsys):
        code, out, _ = run_cli(capsys, ["cost"])
        assert code == 0
        assert "total             0" in out

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cost.ini"
        cfg.write_text("[cost]\nn = 100\ndealers = 50\nk = 40\nvoters = 50\n"
                       "direct-revealers = 40\nshares-revealed = 1600\n")
        code, out, _ = run_cli(capsys, ["cost", "--config", str(cfg)])
        assert code == 0
        assert "total             880000" in out


def test_unknown_subcommand_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["decrypt-everything"])
