import json
import subprocess
import sys

import pytest

from hecke_koszul.cli import main
from hecke_koszul.zoo import dj_family, dump_family

REPORT_KEYS = {"command", "inputs", "results", "status", "timings"}


def run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = json.loads(capsys.readouterr().out)
    assert set(out) == REPORT_KEYS
    return code, out


def test_check_dj(capsys):
    code, rep = run(capsys, "check", "--zoo", "dj", "--dim", "2", "--q", "3")
    assert code == 0 and rep["status"] == "pass"
    assert rep["results"]["rank_q"] == "4/9"


def test_check_super_flip_forces_q_one(capsys):
    code, rep = run(capsys, "check", "--zoo", "superflip", "--m", "1", "--n", "1")
    assert code == 0 and rep["results"]["q"] == "1/1"


def test_check_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.rm"
    p.write_text("dim: 2\nentries:\n"
                 "  - {out: [1, 1], in: [1, 1], value: q}\n"
                 "  - {out: [2, 2], in: [2, 2], value: q}\n"
                 "  - {out: [2, 1], in: [1, 2], value: '1'}\n"
                 "  - {out: [1, 2], in: [2, 1], value: '1'}\n"
                 "  - {out: [2, 1], in: [2, 1], value: q-1}\n")
    code, rep = run(capsys, "check", "--file", str(p), "--q", "2")
    assert code == 1 and rep["status"] == "fail"
    assert rep["results"]["witnesses"]


def test_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "broken.rm"
    p.write_text("dim: 2\n")
    code, rep = run(capsys, "check", "--file", str(p), "--q", "2")
    assert code == 2 and rep["results"]["error"]["type"] == "ParseError"


def test_bad_rational(capsys):
    code, _ = run(capsys, "check", "--zoo", "dj", "--dim", "2", "--q", "0.5")
    assert code == 2


def test_root_of_unity(capsys):
    code, rep = run(capsys, "check", "--zoo", "dj", "--dim", "2", "--q", "-1")
    assert code == 2 and rep["results"]["error"]["type"] == "RootOfUnity"


def test_poincare(capsys):
    code, rep = run(capsys, "poincare", "--zoo", "dj", "--dim", "3", "--q", "2")
    assert code == 0 and rep["results"]["birank"] == [3, 0]
    code, rep = run(capsys, "poincare", "--zoo", "sum:dj1+odd", "--q", "2")
    assert code == 0 and rep["results"]["birank"] == [1, 1]


def test_poincare_undetermined(capsys, tmp_path):
    p = tmp_path / "r.rm"
    p.write_text(dump_family(dj_family(2)))
    code, rep = run(capsys, "poincare", "--file", str(p), "--q", "2", "--max-k", "3")
    assert rep["status"] == "undetermined" and code == 1


def test_koszul_super_flip_with_berezinian(capsys):
    code, rep = run(capsys, "koszul", "--zoo", "superflip", "--m", "1", "--n", "1", "--max", "5",
                    "--berezinian", "--seed", "4")
    assert code == 0
    res = rep["results"]
    assert res["nonzero"] == {"1,1": 1}
    assert res["berezinian"]["equal"] is True
    assert "/" in res["berezinian"]["scalar_action"]


def test_koszul_dj(capsys):
    code, rep = run(capsys, "koszul", "--zoo", "dj", "--dim", "2", "--q", "2", "--max", "4")
    assert code == 0 and rep["results"]["nonzero"] == {"2,0": 1}


def test_koszul_scan(capsys):
    code, rep = run(capsys, "koszul", "--zoo", "sum:dj1+odd", "--scan-q", "2,3,5,1/2,7/3")
    assert code == 0 and rep["results"]["identical_tables"] is True
    assert len(rep["results"]["scan"]) == 5


def test_resource_cap(capsys):
    code, rep = run(capsys, "koszul", "--zoo", "dj", "--dim", "3", "--q", "2", "--max-ambient-dim", "100")
    assert code == 3 and rep["results"]["error"]["type"] == "ResourceCapExceeded"


def test_lr(capsys):
    code, rep = run(capsys, "lr", "--m", "1", "--n", "1")
    assert code == 0 and rep["results"]["homs"] == [1, 0, 0]
    code, rep = run(capsys, "lr", "--m", "2", "--n", "2")
    assert code == 0
    code, rep = run(capsys, "lr", "--m", "0", "--n", "1")
    assert code == 2


def test_text_output(capsys):
    assert main(["lr", "--m", "1", "--n", "2"]) == 0
    assert capsys.readouterr().out.startswith("lr: pass")


@pytest.mark.parametrize("argv", [["-m", "hecke_koszul", "lr", "--m", "1", "--n", "1"]])
def test_module_entry_point(argv):
    r = subprocess.run([sys.executable] + argv, capture_output=True, text=True)
    assert r.returncode == 0 and "pass" in r.stdout
