import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from quadcong import cli, experiments as ex, lattice, modcore, parametrize
from quadcong.experiments import DiscrepancyRow, ExperimentReport


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestExamples:
    def test_rho(self, capsys):
        assert run(["rho", "--a", "1", "--h", "1", "--k", "65"], capsys)[:2] == (0, "4\n")

    def test_heegner_rows(self, capsys):
        code, out, _ = run(["heegner", "--h", "5"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("aa,bb,cc")
        assert sorted(tuple(map(int, l.split(",")[:3])) for l in lines[1:]) == [(3, 1, 2), (5, 0, 1)]

    def test_verify_para3_exit_zero(self, capsys):
        code, out, _ = run(["verify-para3", "--a", "1", "--h", "2", "--y", "2", "--bound", "50"], capsys)
        assert code == 0
        assert "passed,True" in out

    def test_module_entry_point(self):
        p = subprocess.run([sys.executable, "-m", "quadcong", "rho", "--h", "1", "--k", "5"],
                           capture_output=True, text=True, timeout=120)
        assert (p.returncode, p.stdout) == (0, "2\n")


class TestExitCodes:
    def test_verification_failure_is_one(self, capsys):
        code, out, _ = run(["verify-para1", "--h", "5", "--bound", "30", "--gen-bound", "2"], capsys)
        assert code == 1
        assert "passed,False" in out

    @pytest.mark.parametrize("argv", [
        ["bogus"], [], ["rho", "--h", "1"], ["rho", "--h", "x", "--k", "5"],
        ["type1", "--X", "100", "--D", "50"], ["bump", "--lo", "2", "--hi", "1"],
        ["type1", "--X", "100", "--D", "3", "--threads", "0"], ["act", "--gamma", "1,2,3", "--g", "1,0,1"],
        ["type2", "--X", "100", "--M", "10", "--N", "10", "--alpha", "nope"],
    ])
    def test_invalid_arguments_are_two(self, argv, capsys):
        code, _, err = run(argv, capsys)
        assert code == 2
        assert err

    def test_unknown_subcommand_prints_usage(self, capsys):
        _, _, err = run(["bogus"], capsys)
        assert "usage" in err

    def test_unwritable_output_is_three(self, tmp_path, capsys):
        target = tmp_path / "missing-dir" / "out.csv"
        assert run(["rho", "--h", "1", "--k", "5", "--out", str(target)], capsys)[0] == 3

    def test_unreadable_config_is_two(self, tmp_path, capsys):
        assert run(["rho", "--config", str(tmp_path / "nope.cfg")], capsys)[0] == 2


class TestConfig:
    def test_file_supplies_values(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# residues\nh = 1\nk=65  # trailing\n\n")
        assert run(["rho", "--config", str(cfg)], capsys)[:2] == (0, "4\n")

    def test_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("h=1\nk=65\n")
        assert run(["rho", "--config", str(cfg), "--k", "5"], capsys)[1] == "2\n"
        assert run(["rho", "--k", "5", "--config", str(cfg)], capsys)[1] == "2\n"

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("h=1\nk=5\nwidth=3\n")
        assert run(["rho", "--config", str(cfg)], capsys)[0] == 2

    def test_malformed_line_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("h 1\n")
        assert run(["rho", "--config", str(cfg)], capsys)[0] == 2


class TestSerialization:
    def empty(self):
        return ExperimentReport("type1", {"X": 10}, [], 0.0, 0.0, 1.0, 0.0, runtime=0.5)

    def test_empty_report_is_header_only(self, tmp_path):
        path = tmp_path / "r.csv"
        cli.emit_csv(self.empty(), path)
        assert path.read_bytes() == b"cell,exact_count,main_term,error\n"

    def test_same_report_same_bytes(self, tmp_path):
        r = ex.type1(300, 300, 4, 1, 1, ex.bump(1, 2), ex.bump(-1, 1))
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.emit_json(r, a) == cli.emit_json(r, b)
        assert a.read_bytes() == b.read_bytes()
        assert cli.emit_csv(r, tmp_path / "a.csv") == cli.emit_csv(r, tmp_path / "b.csv")

    def test_runtime_not_serialized(self, tmp_path):
        r1, r2 = self.empty(), self.empty()
        r2.runtime = 99.0
        assert cli.json_text(r1) == cli.json_text(r2)

    def test_lf_line_endings(self, tmp_path):
        path = tmp_path / "r.csv"
        cli.emit_csv(ex.type1(300, 300, 4, 1, 1, ex.bump(1, 2), ex.bump(-1, 1)), path)
        assert b"\r" not in path.read_bytes()

    @given(st.lists(st.tuples(st.integers(1, 99), st.floats(-1e6, 1e6), st.floats(-1e6, 1e6)), max_size=6),
           st.floats(0, 1e9))
    def test_json_roundtrip(self, cells, bound):
        rows = [DiscrepancyRow(f"d={d}", e, m, e - m) for d, e, m in cells]
        tot = math.fsum(abs(r.error) for r in rows)
        r = ExperimentReport("type1", {"X": 10, "theta": 7 / 64}, rows, tot, tot, bound,
                             tot / bound if bound else math.inf)
        assert ExperimentReport.from_dict(json.loads(cli.json_text(r))) == r

    def test_equidist_roundtrip(self):
        t = ex.equidist(2000, 1, 1, ex.deciles())
        assert type(t).from_dict(json.loads(cli.json_text(t))) == t

    def test_float_format_round_trips(self):
        for x in (0.1, 1 / 3, 2.0**-40, 1e300):
            assert float(cli._fmt(x)) == x


class TestManifest:
    ARGV = ["type1", "--X", "2000", "--D", "6", "--h", "5"]

    def outputs(self, tmp_path, tag, argv):
        out, js, man = (tmp_path / f"{tag}.{e}" for e in ("csv", "json", "manifest.json"))
        assert cli.main(argv + ["--out", str(out), "--json", str(js), "--manifest", str(man)]) == 0
        return out.read_bytes(), js.read_bytes(), json.loads(man.read_text())

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        one = self.outputs(tmp_path, "t1", self.ARGV + ["--threads", "1"])
        two = self.outputs(tmp_path, "t2", self.ARGV + ["--threads", "2"])
        assert one[:2] == two[:2]
        assert two[2]["workers"] == 2

    def test_manifest_reproduces_outputs(self, tmp_path):
        csv_bytes, json_bytes, man = self.outputs(tmp_path, "first", self.ARGV)
        assert man["subcommand"] == "type1"
        assert set(man["outputs"].values()) == {
            cli.hashlib.sha256(csv_bytes).hexdigest(), cli.hashlib.sha256(json_bytes).hexdigest()}
        cfg = tmp_path / "replay.cfg"
        cfg.write_text("".join(f"{k}={v}\n" for k, v in man["parameters"].items() if v is not None))
        again = self.outputs(tmp_path, "second", [man["subcommand"], "--config", str(cfg)])
        assert again[:2] == (csv_bytes, json_bytes)


# library operations that carry worked examples
EXAMPLED_OPS = {
    modcore: ["jacobi", "sqrt_mod_p", "roots_mod_prime_power", "roots_mod_k", "rho", "factorize", "gpf"],
    lattice: ["act", "c_transform", "reduce", "heegner_points", "coset_reps", "u_invariant", "u_skewed",
              "stabilizer_order"],
    parametrize: ["enumerate_S", "verify_para1", "verify_para2", "hecke_orbits", "cube_decompose", "verify_para3",
                  "hecke_apply"],
    ex: ["bump", "type1", "type2", "hypothesis_sum", "equidist", "weyl_sum", "gpf_scan", "chebyshev_identity",
         "kernel_heegner", "kernel_lowertriang", "rho_cubic", "ypoisson_check", "x2y3_typeI2"],
}


class TestDispatch:
    def test_every_exampled_op_is_reachable(self):
        reachable = {op for _, ops, _ in cli.DISPATCH.values() for op in ops}
        for mod, names in EXAMPLED_OPS.items():
            for name in names:
                assert callable(getattr(mod, name))
                assert name in reachable, name

    def test_required_subcommands_present(self):
        for name in ("roots", "rho", "heegner", "cosets", "verify-para1", "verify-para2", "verify-para3", "type1",
                     "type2", "equidist", "weyl", "gpf", "chebyshev", "hypothesis", "kernel-heegner", "kernel-lt",
                     "x2y3", "ypoisson"):
            assert name in cli.DISPATCH

    def test_required_keys_are_declared(self):
        for name, keys in cli._REQUIRED.items():
            assert set(keys) <= set(cli.DISPATCH[name][2])

    @pytest.mark.parametrize("argv", [
        ["roots", "--h", "1", "--k", "65"], ["roots", "--h", "1", "--p", "5", "--j", "2"],
        ["jacobi", "--n", "2", "--m", "15"], ["sqrt", "--n", "2", "--p", "7"], ["factor", "--n", "10001"],
        ["cosets", "--q", "6"], ["act", "--gamma", "0,-1,1,0", "--g", "2,1,3"], ["reduce", "--g", "13,5,2"],
        ["u", "--w", "2j", "--z", "1j"], ["u", "--matrix", "1,1,0,1", "--R", "2"],
        ["enumerate-s", "--h", "5", "--bound", "10"], ["verify-para2", "--h", "1", "--n1", "1", "--n2", "2",
                                                       "--bound", "30"],
        ["hecke", "--h", "5", "--apply-box", "3"], ["cube", "--g", "3,1,2", "--h", "5", "--y", "1"],
        ["bump"], ["bump", "--x", "0"], ["type2", "--X", "300", "--M", "30", "--N", "10"],
        ["equidist", "--X", "2000"], ["equidist", "--X", "2000", "--intervals", "0:1/2,1/2:1"],
        ["weyl", "--X", "500"], ["gpf", "--X", "200"], ["chebyshev", "--X", "100"],
        ["hypothesis", "--Y", "10", "--Z", "100"], ["kernel-heegner", "--Qlo", "2", "--Qhi", "4", "--Z", "4"],
        ["kernel-lt", "--N2", "2", "--Z", "1"], ["rho-cubic", "--y", "2", "--d", "7"],
        ["ypoisson", "--d", "7", "--B", "100"], ["x2y3", "--X", "300"],
    ])
    def test_subcommand_runs(self, argv, capsys):
        code, out, _ = run(argv, capsys)
        assert code == 0
        assert out.strip()
