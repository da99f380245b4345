import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from knotsig.cli import run
from knotsig.formatting import format_rational


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_sig_eval():
    assert call("sig", "eval", "torus(2,3)", "--at", "1/2") == (0, "-2\n", "")
    code, out, _ = call("sig", "eval", "torus(2,3)", "--at", "1/6")
    assert out == "-1\n"
    code, out, _ = call("sig", "eval", "sum(torus(2,3),torus(2,5))", "--at", "1/10")
    assert out == "-1\n"
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    code, out, _ = call("sig", "eval", "torus(2,3)", "--at", "1/6", "--json")
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["signature"] == "-1" and doc["nullity"] == 1


def test_cond_example():
    code, out, _ = call("cond", "cable(2,-3,torus(2,3))", "--m", "1", "--p", "73", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass"
    assert doc["sums"] == ["0"] * 8 and len(doc["cosets"]) == 8
    assert {k for k in doc} >= {"schema", "m", "p", "a", "r", "cosets", "sums", "verdict"}
    code, out, _ = call("cond", "torus(2,3)", "--m", "1", "--pmax", "9")
    assert code == 0 and out.count("fail") == 4


def test_dcrit():
    assert call("dcrit", "--d", "5") == (0, "-2/5\n", "")
    code, serial, _ = call("dcrit", "--scan", "31")
    code2, par, _ = call("dcrit", "--scan", "31", "--jobs", "2")
    assert code == code2 == 0 and serial == par
    lines = serial.splitlines()
    assert lines[0] == "d,status,digits"
    assert [int(l.split(",")[0]) for l in lines[1:]] == list(range(3, 32, 2))
    assert all(l.split(",")[1] == "nonzero" for l in lines[1:])


def test_alex_arf_foxmilnor():
    assert call("alex", "wh(cable(2,-3,torus(2,3)),2)")[1] == "2*t^-1 - 5 + 2*t\n"
    assert call("arf", "cable(2,-3,torus(2,3))")[1] == "1\n"
    code, out, _ = call("foxmilnor", "cable(2,-3,torus(2,3))", "--json")
    doc = json.loads(out)
    assert doc["passes"] is False and doc["determinant"] == 3
    code, out, _ = call("alex", "torus(2,3)", "--json")
    assert json.loads(out)["coefficients"] == [1, -1, 1]


def test_tau():
    assert call("tau", "wh(sum(cable(2,-3,torus(2,3)),cable(2,-3,torus(2,3))),2)")[:2] == (0, "1\n")
    code, _, err = call("tau", "satellite(torus(2,3),torus(2,3),2)")
    assert code == 3 and "no tau rule" in err


def test_cover():
    code, out, _ = call("cover", "--knot", "seifert([[-1,1],[0,2]])", "--q", "3", "--p", "7")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["invariant_factors"] == [7, 7] and doc["order"] == 49
    assert doc["deck_eigenvalues"] == [2, 4]
    assert doc["metabolizers"]["count"] == 2 and doc["metabolizers"]["lines_total"] == 8
    code, out, _ = call("cover", "torus(2,3)", "--q", "2")
    assert json.loads(out)["invariant_factors"] == [3]
    code, _, err = call("cover", "seifert([[-1,1],[0,2]])", "--q", "3", "--p", "5")
    assert code == 3


def test_avg_and_primeset():
    code, out, _ = call("avg", "sum(seifert([[1,1],[0,2]]),mirror(cable(2,1,seifert([[1,1],[0,2]]))))", "--m", "1",
                        "--pmax", "21", "--json")
    assert json.loads(out)["verdict"] == "pass"
    assert call("primeset", "--m", "1", "--thm", "8", "--qmax", "9")[1] == "7 31 73 127\n"
    assert call("primeset", "--m", "1", "--thm", "7", "--qmax", "9", "--bound", "100")[1] == "3 5 7 17 31 73\n"
    assert call("primeset", "--m", "1", "--thm", "8", "--qmax", "9", "--bound", "5")[0] == 2


def test_plot(tmp_path):
    svg = tmp_path / "fig.svg"
    code, out, _ = call("sig", "plot", "cable(2,-3,torus(2,3))", "--denominator", "12", "--svg", str(svg))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,value" and len(lines) == 14
    assert "1/2,2" in lines
    root = ET.fromstring(svg.read_text().split("\n", 1)[1])
    assert root.get("version") == "1.1"
    code, _, err = call("sig", "plot", "seifert([[1,1],[0,2]])", "--denominator", "4", "--svg", str(svg))
    assert code == 3


@pytest.mark.parametrize(
    "argv,code",
    [
        (["sig", "eval", "torus(2,3", "--at", "1/2"], 2),
        (["sig", "eval", "torus(2,3)", "--at", "0.5"], 2),
        (["sig", "eval", "torus(2,3)", "--at", "3/2"], 2),
        (["sig", "eval", "torus(2,3)"], 2),
        (["nosuch"], 2),
        (["cond", "torus(2,3)", "--m", "1"], 2),
        (["cond", "torus(2,3)", "--m", "1", "--p", "4"], 3),
        (["dcrit", "--d", "4"], 3),
        (["dcrit"], 2),
        (["sig", "eval", "seifert([[1,3],[0,4]])", "--at", "1/2"], 2),
        (["cover", "--q", "3"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_deterministic_and_module_entry():
    args = [sys.executable, "-m", "knotsig", "cond", "cable(2,-3,torus(2,3))", "--m", "1", "--p", "73", "--json"]
    a = subprocess.run(args, capture_output=True, check=True).stdout
    b = subprocess.run(args, capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["verdict"] == "pass"
