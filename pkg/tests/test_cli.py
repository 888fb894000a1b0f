import json
import math

import pytest

from khinsphere.cli import RunConfig, main, run, table_writer
from khinsphere.errors import DomainError


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConstantsVerb:
    def test_csv(self, capsys):
        code, out, _ = _run(["constants", "--d", "4", "--q", "-2"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d,q,c_two,c_inf,min_c,status"
        fields = lines[1].split(",")
        assert float(fields[2]) == pytest.approx(2.0**-0.5, abs=1e-10)
        assert fields[5] == "proven"

    def test_json(self, capsys):
        code, out, _ = _run(["--format", "json", "constants", "--d", "5", "--q", "-2.0"], capsys)
        assert code == 0
        d = json.loads(out)
        assert d["status"] == "conjectural"


class TestQstarVerb:
    def test_table1_row_d4(self, capsys):
        code, out, _ = _run(["qstar", "--d-min", "1", "--d-max", "5"], capsys)
        assert code == 0
        rows = {int(r.split(",")[0]): r for r in out.strip().splitlines()[1:]}
        assert rows[4].startswith("4,-2.000000000,")
        assert abs(float(rows[2].split(",")[1]) - 0.475617009) < 1e-8

    def test_byte_stable(self, capsys):
        a = _run(["qstar", "--d-min", "2", "--d-max", "4"], capsys)
        b = _run(["qstar", "--d-min", "2", "--d-max", "4"], capsys)
        assert a == b


class TestMomentVerb:
    def test_routes_agree(self, capsys):
        code, out, _ = _run(["--format", "json", "moment", "--d", "4", "--p", "1",
                             "--coeffs", "1,0.7071067811865476", "--n", "50000",
                             "--seed", "3"], capsys)
        assert code == 0
        d = json.loads(out)
        quad_v = d["routes"]["quadrature"]
        hyp_v = d["routes"]["hypergeometric"]
        mc_v = d["routes"]["monte_carlo"]
        assert quad_v == pytest.approx(hyp_v, abs=1e-7)
        assert mc_v == pytest.approx(quad_v, abs=5 * d["mc_std_error"])


class TestVerifyVerb:
    def test_pass_exit_zero(self, capsys):
        code, out, _ = _run(["--format", "json", "verify", "--lemma", "table3"], capsys)
        assert code == 0
        d = json.loads(out)
        assert d["passed"] is True
        assert d["min_margin"] > 0

    def test_failed_verification_exit_two(self, capsys, monkeypatch):
        import khinsphere.cli as cli_mod
        from khinsphere.verify import VerificationReport
        failing = VerificationReport("stub", "r", (1,), passed=False, min_margin=-1.0,
                                     witnesses=(((0.0,), -1.0),))
        monkeypatch.setitem(cli_mod._LEMMAS, "stub", lambda pr: failing)
        code, out, _ = _run(["--format", "json", "verify", "--lemma", "stub"], capsys)
        assert code == 2
        assert json.loads(out)["passed"] is False

    def test_unknown_lemma_exit_one(self, capsys):
        code, _, err = _run(["verify", "--lemma", "nope"], capsys)
        assert code == 1
        assert "unknown lemma" in err

    @pytest.mark.parametrize("lemma", ["two_coeff", "bisubharmonic", "small_lemmas",
                                       "ind_base", "table2", "table3",
                                       "interpolation_tilde", "appendix_claims"])
    def test_cheap_lemmas_pass(self, lemma, capsys):
        code, out, _ = _run(["--format", "json", "verify", "--lemma", lemma], capsys)
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_lemma_params_forwarded(self, capsys):
        code, out, _ = _run(["--format", "json", "verify", "--lemma", "bisubharmonic",
                             "--d", "7", "--p", "2.0"], capsys)
        assert code == 0
        assert "d=7" in json.loads(out)["region"]

    def test_chart_written(self, tmp_path, capsys):
        chart = tmp_path / "chart.csv"
        code, _, _ = _run(["verify", "--lemma", "table2", "--chart", str(chart)], capsys)
        assert code == 0
        lines = chart.read_text().splitlines()
        assert lines[0] == "p,s,H,sign"
        assert len(lines) > 100


class TestSliceVerb:
    def test_axis(self, capsys):
        code, out, _ = _run(["slice", "--coeffs", "1,0"], capsys)
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[1]) == pytest.approx(math.pi, abs=1e-9)

    def test_normalizes_direction(self, capsys):
        code, out, _ = _run(["slice", "--coeffs", "1,1"], capsys)
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[1]) == pytest.approx(2.0 * math.pi, abs=1e-6)


class TestMcVerb:
    def test_stats(self, capsys):
        code, out, _ = _run(["--format", "json", "mc", "--d", "4", "--p", "1",
                             "--coeffs", "1,1", "--n", "20000", "--seed", "5"], capsys)
        assert code == 0
        d = json.loads(out)
        assert d["n_samples"] == 20000
        assert d["method"] == "plain-mean"

    def test_seed_after_subcommand(self, capsys):
        a = _run(["mc", "--d", "4", "--p", "1", "--coeffs", "1,1", "--n", "10000",
                  "--seed", "9"], capsys)
        b = _run(["--seed", "9", "mc", "--d", "4", "--p", "1", "--coeffs", "1,1",
                  "--n", "10000"], capsys)
        assert a == b


class TestTablesVerb:
    def test_table1_golden_rows(self, capsys):
        code, out, _ = _run(["tables", "--which", "1"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d,q_star"
        assert "4,-2.000000" in lines
        assert "2,0.475617" in lines

    def test_table2_shape_and_floors(self, capsys):
        code, out, _ = _run(["tables", "--which", "2"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines[0].split(",")) == 13  # label + i = 0..11
        computed = [float(x) for x in lines[1].split(",")[1:]]
        assert computed[0] >= 1.0

    def test_table3_shape_and_floors(self, capsys):
        code, out, _ = _run(["tables", "--which", "3"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines[0].split(",")) == 7  # label + i = 1..6
        computed = [float(x) for x in lines[1].split(",")[1:]]
        assert computed[0] >= 0.7

    def test_byte_stable(self):
        assert table_writer(2) == table_writer(2)

    def test_bad_which(self, capsys):
        code, _, err = _run(["tables", "--which", "7"], capsys)
        assert code == 1


class TestErrors:
    def test_invalid_args_exit_one(self, capsys):
        assert _run(["bogus-verb"], capsys)[0] == 1
        assert _run(["constants", "--d", "4"], capsys)[0] == 1  # missing --q
        assert _run(["constants", "--d", "0", "--q", "1"], capsys)[0] == 1

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out.csv"
        code = main(["--output", str(path), "tables", "--which", "1"])
        assert code == 0
        assert path.read_text().startswith("d,q_star")


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            RunConfig(command="nope")
        with pytest.raises(DomainError):
            RunConfig(command="qstar", output_format="xml")

    def test_threads_env_default(self, monkeypatch):
        import khinsphere.cli as cli_mod
        monkeypatch.setenv("KHINSPHERE_THREADS", "4")
        parser = cli_mod._build_parser()
        ns = parser.parse_args(["tables", "--which", "1"])
        assert ns.threads == 4

    def test_programmatic_run(self):
        code, text = run(RunConfig(command="tables", params={"which": 1}))
        assert code == 0
        assert text.startswith("d,q_star")
