import json
import subprocess
import sys
from pathlib import Path

import pytest

from vectorgroupoids.cli import main

DATA = Path(__file__).parent / "data"


class TestVerify:
    def test_golden_exit_zero(self, capsys):
        assert main(["verify", str(DATA / "golden.gd")]) == 0
        out = capsys.readouterr().out
        assert "overall: pass" in out

    def test_json_output(self, capsys):
        assert main(["verify", str(DATA / "golden.gd"), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "pass"
        assert payload["version"] == "0.1.0"

    def test_json_byte_stable(self, capsys):
        main(["verify", str(DATA / "golden.gd"), "--json"])
        a = capsys.readouterr().out
        main(["verify", str(DATA / "golden.gd"), "--json"])
        b = capsys.readouterr().out
        assert a == b

    @pytest.mark.parametrize(
        "name,line",
        [
            ("bad_nonprime.gd", 1),
            ("bad_notinverse.gd", 3),
            ("bad_undeclared.gd", 2),
            ("bad_redeclared.gd", 2),
            ("bad_unknownkind.gd", 3),
        ],
    )
    def test_malformed_exit_two_with_line(self, capsys, name, line):
        assert main(["verify", str(DATA / name)]) == 2
        err = capsys.readouterr().err
        assert f"line {line}," in err

    def test_missing_file(self, capsys):
        assert main(["verify", str(DATA / "nope.gd")]) == 2

    def test_failing_check_exit_one(self, tmp_path, capsys):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism m : G -> G = table{((0),(0)) -> ((0),(0)), ((0),(1)) -> ((1),(0)),"
            " ((1),(0)) -> ((0),(1)), ((1),(1)) -> ((1),(1))}\ncheck m morphism\n"
        )
        f = tmp_path / "fail.gd"
        f.write_text(src)
        assert main(["verify", str(f)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_witness_cap_flag(self, tmp_path, capsys):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism m : G -> G = table{((0),(0)) -> ((0),(0)), ((0),(1)) -> ((1),(0)),"
            " ((1),(0)) -> ((0),(1)), ((1),(1)) -> ((1),(1))}\ncheck m homomorphism\n"
        )
        f = tmp_path / "fail.gd"
        f.write_text(src)
        main(["verify", str(f), "--json", "--witness-cap", "1"])
        payload = json.loads(capsys.readouterr().out)
        total = sum(len(d["witnesses"]) for d in payload["directives"])
        assert total <= 1

    def test_witness_cap_env(self, tmp_path, capsys, monkeypatch):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism m : G -> G = table{((0),(0)) -> ((0),(0)), ((0),(1)) -> ((1),(0)),"
            " ((1),(0)) -> ((0),(1)), ((1),(1)) -> ((1),(1))}\ncheck m homomorphism\n"
        )
        f = tmp_path / "fail.gd"
        f.write_text(src)
        monkeypatch.setenv("VGD_WITNESS_CAP", "2")
        main(["verify", str(f), "--json"])
        payload = json.loads(capsys.readouterr().out)
        total = sum(len(d["witnesses"]) for d in payload["directives"])
        assert total <= 2

    def test_max_carrier_flag(self, tmp_path, capsys):
        src = "field F = Zp(5)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G brandt\n"
        f = tmp_path / "big.gd"
        f.write_text(src)
        assert main(["verify", str(f), "--max-carrier", "10"]) == 2
        assert "SizeGuard" in capsys.readouterr().err


class TestOtherCommands:
    def test_catalog_list(self, capsys):
        assert main(["catalog", "list"]) == 0
        out = capsys.readouterr().out
        for kind in ("pair", "vpq", "whitney", "sg"):
            assert kind in out

    def test_sg_card(self, capsys):
        assert main(["sg-card", "4"]) == 0
        out = capsys.readouterr().out
        assert "64" in out and "15" in out

    def test_sg_card_invalid(self, capsys):
        assert main(["sg-card", "0"]) == 2

    def test_version_subprocess(self):
        out = subprocess.run(
            [sys.executable, "-m", "vectorgroupoids.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0
        assert "vgd 0.1.0" in out.stdout

    def test_entry_point_installed(self):
        out = subprocess.run(["vgd", "--version"], capture_output=True, text=True)
        assert out.returncode == 0
        assert "vgd 0.1.0" in out.stdout
