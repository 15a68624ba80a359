from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from koszullab import cli
from koszullab.dsl import parse_script
from koszullab.errors import ScriptNotHomogeneous, ScriptSyntaxError, UndeclaredName
from koszullab.modules import PresentedModule

NONTORLIN = """
ring p=32003 vars x1,x2,x3,y1,y2,y3;
# 2-minors of [x1 x2 y1 y2; x2 x3 y2 y3]
ideal J = x1*x3 - x2^2, x1*y2 - x2*y1, x1*y3 - x2*y2, x2*y2 - x3*y1, x2*y3 - x3*y2, y1*y3 - y2^2;
ideal I = x1, x3;
module A = quotient I;
module R = quotient J;
"""

PRODUCT = """
ring p=32003 vars x1,x2,x3,x4;
ideal I = x1*x3, x1*x4, x2*x3, x2*x4;
family F = (x1, x2), (x3, x4);
poly f = x1*x3 + x2*x4;
"""


def test_parse_ideal():
    s = parse_script("ring p=32003 vars x,y; ideal I = x^2, x*y;")
    assert s.ring.variables == ("x", "y")
    assert s.kind("I") == "ideal"
    assert len(s.get("I").gens) == 2


def test_parse_empty():
    s = parse_script("")
    assert s.ring is None and not s.objects and not s.commands


def test_not_homogeneous_position():
    with pytest.raises(ScriptNotHomogeneous) as e:
        parse_script("ring p=7 vars x;\nideal I = x + x^2;")
    assert (e.value.line, e.value.col) == (2, 13)


def test_undeclared_name():
    with pytest.raises(UndeclaredName) as e:
        parse_script("ring p=7 vars x,y;\nideal I = x, K;")
    assert e.value.line == 2


def test_unknown_variable():
    with pytest.raises(UndeclaredName):
        parse_script("ring p=7 vars x,y;\nideal I = z;")


def test_syntax_error_position():
    with pytest.raises(ScriptSyntaxError) as e:
        parse_script("ring p=7 vars x,y;\nideal I x;")
    assert (e.value.line, e.value.col) == (2, 9)


def test_char_override():
    s = parse_script("ring p=7 vars x;", char=11)
    assert s.ring.p == 11


def test_modules_and_maps():
    s = parse_script(
        "ring p=101 vars x,y; ideal I = x^2; ideal K = x; module A = quotient I; module B = quotient K;"
        "map phi : A -> B = (1); module C = coker [0,1] (y^2, x); family F = (x), (x, y);"
        "module D = quotient K over I; reg A;"
    )
    assert isinstance(s.get("A"), PresentedModule)
    assert s.kind("phi") == "map"
    assert s.get("C").shifts == (0, 1)
    assert s.get("F").d == 2
    assert s.get("D").quotient_ideal is not None
    assert s.commands[0].name == "reg" and s.commands[0].args == ["A"]


def test_command_words():
    s = parse_script("ring p=7 vars x,y; ideal I = x; reg-over I # note\n --f x^2+y^2 --cutoff 3;")
    c = s.commands[0]
    assert c.name == "reg-over"
    assert c.args == ["I", "--f", "x^2+y^2", "--cutoff", "3"]


def run_cli(args, text, env=None):
    full = dict(os.environ)
    full.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "koszullab"] + args, input=text, capture_output=True, text=True, env=full, timeout=300
    )


def call(args, text, capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = cli.main(args)
    return code, capsys.readouterr()


def test_reg_command(capsys, monkeypatch):
    code, out = call(["reg", "I", "--json"], PRODUCT, capsys, monkeypatch)
    assert code == 0 and json.loads(out.out) == {"reg": 1}


def test_betti_json(capsys, monkeypatch):
    code, out = call(["betti", "K", "--json"], "ring p=32003 vars x,y; ideal K = x, y;", capsys, monkeypatch)
    assert code == 0
    assert out.out.strip() == '{"cutoff":null,"entries":[[0,0,1],[1,1,2],[2,2,1]]}'


def test_tor_then_reg(capsys, monkeypatch):
    code, out = call(["tor", "A", "R", "--i", "1", "--json"], NONTORLIN, capsys, monkeypatch)
    assert code == 0
    assert json.loads(out.out)["reg"] == 3


def test_torlinear_command(capsys, monkeypatch):
    code, out = call(["torlinear", "J", "I", "--json"], NONTORLIN, capsys, monkeypatch)
    data = json.loads(out.out)
    assert code == 0 and data["tor_linear"] is False and data["margin"] == 2


def test_script_run(capsys, monkeypatch):
    text = PRODUCT + "reg I;\ncreg I f;\nlinprod-decompose F;\nreg-over I --f f --cutoff 3;\n"
    code, out = call(["run", "--json"], text, capsys, monkeypatch)
    assert code == 0
    res = json.loads(out.out)["results"]
    assert res[0]["result"] == {"reg": 1}
    assert res[1]["result"]["creg"] == 2
    assert len(res) == 4


def test_exit_code_input_error(capsys, monkeypatch):
    code, out = call(["reg", "I"], "ring p=7 vars x;\nideal I = x + x^2;", capsys, monkeypatch)
    assert code == 2
    assert "2:13" in out.err


def test_exit_code_missing_file(capsys, monkeypatch):
    code, out = call(["reg", "I", "--file", "/nonexistent/script.txt"], "", capsys, monkeypatch)
    assert code == 2


def test_exit_code_scenario_pass(capsys, monkeypatch):
    code, out = call(["run-scenario", "example-nontorlin", "--json"], "", capsys, monkeypatch)
    data = json.loads(out.out)
    assert code == 0 and data["pass"]
    assert "wall_clock" not in out.out


def test_every_engine_op_has_one_subcommand():
    ops = [op for _, op in cli.COMMANDS.values()]
    assert len(ops) == len(set(ops))
    parser_cmds = set(cli.build_parser()._subparsers._group_actions[0].choices)
    assert parser_cmds == set(cli.COMMANDS)


def test_subprocess_and_determinism():
    a = run_cli(["run-scenario", "conca-herzog", "--seed", "7", "--trials", "6", "--json"], "")
    b = run_cli(["run-scenario", "conca-herzog", "--seed", "7", "--trials", "6", "--json"], "", {"KOSZULLAB_THREADS": "3"})
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["pass"]


def test_report_only_scenario():
    r = run_cli(["run-scenario", "explore-question13", "--trials", "2", "--json"], "")
    assert r.returncode == 0
