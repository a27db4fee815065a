import json
import subprocess
import sys

from conftest import GOLDEN, read_golden

BASE = [sys.executable, "-m", "bellkit"]


def run_cli(*args, expect_code=0):
    out = subprocess.run(BASE + list(args), capture_output=True, text=True)
    assert out.returncode == expect_code, out.stderr
    return out


def records(stdout):
    return [json.loads(line) for line in stdout.splitlines()]


class TestHadamardCommand:
    def test_ascii_golden(self):
        out = run_cli("hadamard", "--n", "2")
        assert out.stdout == read_golden("hadamard_n2_ascii.txt")

    def test_json(self):
        out = run_cli("hadamard", "--n", "1", "--format", "json")
        record = json.loads(out.stdout)
        assert record["schema_version"] == 1
        assert record["command"] == "hadamard"
        assert record["payload"]["entries"] == [[1, 1], [1, -1]]

    def test_pbm(self):
        out = run_cli("hadamard", "--n", "1", "--format", "pbm")
        assert out.stdout.splitlines() == ["P1", "2 2", "1 1", "1 0"]

    def test_cap_is_validation_error(self):
        out = run_cli("hadamard", "--n", "20", expect_code=2)
        error = json.loads(out.stderr)
        assert error["command"] == "hadamard"
        assert "capped" in error["error"]["message"]


class TestGenCommand:
    def test_chsh_golden_bytes(self):
        out = run_cli("gen", "--n", "2", "--c", "0b0001")
        assert out.stdout == (GOLDEN / "cli_gen_chsh.json").read_text()

    def test_accepts_decimal_and_hex(self):
        a = run_cli("gen", "--n", "2", "--c", "1").stdout
        b = run_cli("gen", "--n", "2", "--c", "0x1").stdout
        assert a == b

    def test_text_renders_standard_form(self):
        out = run_cli("gen", "--n", "2", "--c", "0b0111", "--format", "text")
        assert out.stdout.strip().startswith("|")

    def test_code_out_of_range(self):
        run_cli("gen", "--n", "1", "--c", "16", expect_code=2)


class TestEnumCommand:
    def test_single_site_records(self):
        out = run_cli("enum", "--n", "1")
        payloads = [r["payload"] for r in records(out.stdout)]
        assert [p["c"] for p in payloads] == [0, 1, 2, 3]
        assert [p["coeffs"] for p in payloads] == [
            [2, 0], [0, -2], [0, 2], [-2, 0]]
        assert all(p["bound"] == 2 and p["terms"] == 1 for p in payloads)

    def test_standard_form_flag(self):
        out = run_cli("enum", "--n", "1", "--standard-form")
        payloads = [r["payload"] for r in records(out.stdout)]
        assert [p["coeffs"] for p in payloads] == [
            [1, 0], [0, 1], [0, 1], [1, 0]]
        assert all(p["bound"] == 1 for p in payloads)

    def test_shorthand_format(self):
        out = run_cli("enum", "--n", "1", "--format", "shorthand")
        assert out.stdout.splitlines() == [
            "(2, 0)", "(0, -2)", "(0, 2)", "(-2, 0)"]

    def test_traditional_format(self):
        out = run_cli("enum", "--n", "1", "--format", "traditional")
        assert out.stdout.splitlines()[0] == "|2E(1)| ≤ 2"

    def test_round_trip_into_verify_and_poly(self):
        out = run_cli("enum", "--n", "2")
        for record in records(out.stdout):
            payload = record["payload"]
            coeff_arg = ",".join(str(c) for c in payload["coeffs"])
            verified = json.loads(
                run_cli("verify", "--coeffs", coeff_arg).stdout)["payload"]
            assert verified["tight"] is True
            assert verified["bound"] == payload["bound"]
            evaluated = json.loads(run_cli(
                "poly", "eval", "--coeffs", coeff_arg, "--z", "1",
            ).stdout)["payload"]
            assert int(evaluated["value"]) == sum(payload["coeffs"])

    def test_stream_required_beyond_four_sites(self):
        run_cli("enum", "--n", "5", expect_code=2)

    def test_cap_exceeded(self):
        out = run_cli("enum", "--n", "6", "--stream", expect_code=2)
        assert "capped" in json.loads(out.stderr)["error"]["message"]


class TestPolyCommand:
    def test_buv_json(self):
        out = run_cli("poly", "buv", "--n", "2", "--u", "0", "--v", "2")
        payload = json.loads(out.stdout)["payload"]
        assert payload["coeffs"] == [1, 1, 1, -1]
        assert payload["poly"] == "1+z+z^2-z^3"

    def test_buv_text(self):
        out = run_cli("poly", "buv", "--n", "4", "--u", "14", "--v", "0",
                      "--format", "text")
        assert out.stdout.strip() == \
            "2+2z^2+2z^4+2z^6-6z^8+2z^10+2z^12+2z^14"

    def test_summand(self):
        out = run_cli("poly", "s", "--n", "3", "--k", "3")
        assert json.loads(out.stdout)["payload"]["poly"] == "1-z^2-z^4+z^6"

    def test_bowtie_golden_bytes(self):
        out = run_cli("poly", "bowtie", "--n", "2",
                      "--a", "1,1,1,-1", "--b", "1,-1,-1,-1")
        assert out.stdout == (GOLDEN / "cli_poly_bowtie_mabk.json").read_text()

    def test_bowtie_second_example(self):
        out = run_cli("poly", "bowtie", "--a", "1,1,1,-1", "--b", "2,0,0,0",
                      "--format", "text")
        assert out.stdout.strip() == "3+z+z^2-z^3-z^4+z^5+z^6-z^7"

    def test_bowtie_site_count_check(self):
        run_cli("poly", "bowtie", "--n", "3",
                "--a", "1,1,1,-1", "--b", "2,0,0,0", expect_code=2)

    def test_eval_exact_rational(self):
        out = run_cli("poly", "eval", "--coeffs", "1,1,1,-1", "--z", "1/2")
        payload = json.loads(out.stdout)["payload"]
        assert payload["value"] == "13/8"

    def test_eval_bad_rational(self):
        run_cli("poly", "eval", "--coeffs", "1,1", "--z", "pi", expect_code=2)


class TestVerifyCommand:
    def test_chsh_golden_bytes(self):
        out = run_cli("verify", "--coeffs", "1,1,1,-1")
        assert out.stdout == (GOLDEN / "cli_verify_chsh.json").read_text()

    def test_explicit_claim(self):
        out = run_cli("verify", "--coeffs", "1,1", "--bound", "3")
        payload = json.loads(out.stdout)["payload"]
        assert payload["max_lhv"] == 2 and payload["tight"] is False

    def test_text_format(self):
        out = run_cli("verify", "--coeffs", "1,0,0,-1,0,1,1,0",
                      "--format", "text")
        assert out.stdout.strip() == "max_lhv 2, claimed 2, tight true"

    def test_bad_coefficients(self):
        run_cli("verify", "--coeffs", "1,x", expect_code=2)


class TestSingletCommand:
    def test_default_table(self):
        out = run_cli("singlet")
        payload = json.loads(out.stdout)["payload"]
        for i in range(3):
            for j in range(3):
                expected = 1.0 if i == j else -0.5
                assert abs(payload["table"][i][j] - expected) < 1e-12
        assert abs(payload["mean"]) < 1e-12

    def test_tilted_table(self):
        out = run_cli("singlet", "--phi", "0.3")
        payload = json.loads(out.stdout)["payload"]
        assert abs(payload["table"][0][0] - 1.0) > 1e-3
        assert abs(payload["mean"]) < 1e-12

    def test_text_table(self):
        out = run_cli("singlet", "--format", "text")
        assert "i=2" in out.stdout


class TestClassifyCommand:
    def test_exhaustive_small(self):
        out = run_cli("classify", "--n", "2")
        payload = json.loads(out.stdout)["payload"]
        assert payload["mode"] == "exhaustive"
        assert payload["full_term"] == 8
        assert payload["trivial_classes"] == 4
        assert payload["zero_counts"] == [6, 6, 6, 6]

    def test_sample_reproducible(self):
        args = ["classify", "--n", "4", "--sample", "5000", "--seed", "7"]
        assert run_cli(*args).stdout == run_cli(*args).stdout

    def test_text_format(self):
        out = run_cli("classify", "--n", "2", "--format", "text")
        assert "full-term: 8" in out.stdout

    def test_cap(self):
        run_cli("classify", "--n", "6", expect_code=2)


class TestConstructCommand:
    def test_three_site_family_text_golden(self):
        out = run_cli("construct", "max-b0", "--n", "3", "--k", "0",
                      "--format", "text")
        assert out.stdout == read_golden("max_b0_n3.txt")

    def test_json_records_carry_index_pairs(self):
        out = run_cli("construct", "max-b0", "--n", "3", "--k", "0")
        payloads = [r["payload"] for r in records(out.stdout)]
        assert [(p["u"], p["v"]) for p in payloads] == [
            (0, 1), (0, 2), (2, 2), (0, 4), (4, 4), (0, 8), (8, 8)]

    def test_reversed_variant(self):
        out = run_cli("construct", "max-b0", "--n", "3", "--k", "1")
        payloads = [r["payload"] for r in records(out.stdout)]
        assert all(p["coeffs"][-1] == 3 for p in payloads)

    def test_too_few_sites(self):
        run_cli("construct", "max-b0", "--n", "2", "--k", "0", expect_code=2)


class TestIdentityCommand:
    def test_exact(self):
        out = run_cli("identity", "--n", "6")
        payload = json.loads(out.stdout)["payload"]
        assert payload["equal"] is True
        assert payload["lhs"] == payload["rhs"]

    def test_text(self):
        out = run_cli("identity", "--n", "2", "--format", "text")
        assert out.stdout.strip() == "6 == 6: true"


class TestUsageErrors:
    def test_unknown_subcommand(self):
        run_cli("frobnicate", expect_code=64)

    def test_missing_required_argument(self):
        run_cli("gen", "--n", "2", expect_code=64)

    def test_bad_choice(self):
        run_cli("hadamard", "--n", "2", "--format", "svg", expect_code=64)
