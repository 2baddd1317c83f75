import json
import re
import shutil
import subprocess
import sys

import pytest

from whk import cli, corpus

SLOW = {("poly_gl.json", "envelope-consistency")}
ENTRIES = [
    pytest.param(name, command, want, id=f"{name}:{command}", marks=[pytest.mark.slow] if (name, command) in SLOW else [])
    for name, commands in sorted(corpus.manifest().items())
    for command, want in sorted(commands.items())
]


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,command,want", ENTRIES)
def test_manifest_exit_codes(name, command, want):
    doc, code = cli.run(command, str(corpus.path(name)))
    assert code == want, json.dumps(doc, indent=1)[:2000]
    assert doc["status"] == ("pass" if want == 0 else "fail")


def test_every_command_in_corpus():
    used = {c for cmds in corpus.manifest().values() for c in cmds}
    assert used == set(cli.COMMANDS)


def test_gamma_eqgg(capsys):
    code, out, _ = run_main(capsys, "gamma", str(corpus.path("eqGG.wha.json")))
    assert code == 0
    doc = json.loads(out)
    (res,) = doc["results"]
    assert res["checks"]["round_trip"]["status"] == "pass"
    assert res["info"]["inverse"] == {"e_x": "e_x", "e_y": "e_y", "g": "g^-1", "g^-1": "g"}


def test_inner_faithful_corollary(capsys):
    code, out, _ = run_main(capsys, "inner-faithful", str(corpus.path("corollary47.json")))
    assert code == 1
    doc = json.loads(out)
    fails = doc["results"][0]["checks"]["inner_faithful"]["failures"]
    assert fails[0]["witness"] == ["g2 - e2"]
    code, _, _ = run_main(capsys, "inner-faithful", str(corpus.path("corollary47_trivialized.json")))
    assert code == 0


def test_one_dim_hopf(capsys):
    code, _, _ = run_main(capsys, "check-weak-hopf", str(corpus.path("trivial.json")))
    assert code == 0


def test_envelope_degree_two(capsys):
    code, out, _ = run_main(capsys, "envelope-consistency", str(corpus.path("poly_gl.json")), "--degree", "2")
    assert code == 0
    assert json.loads(out)["results"][0]["info"]["degree"] == 2


def test_operational_errors(capsys, tmp_path, monkeypatch):
    eq = str(corpus.path("eqGG.wha.json"))
    code, out, err = run_main(capsys, "frobnicate", eq)
    assert code == 2 and "unknown command" in err
    assert json.loads(out)["status"] == "error"
    code, _, err = run_main(capsys, "gamma", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 1,\n "blocks": [')
    code, _, err = run_main(capsys, "check-groupoid", str(bad))
    assert code == 2 and re.search(r":2:\d+: syntax error", err)
    code, _, _ = run_main(capsys, "envelope-consistency", str(corpus.path("poly_gl.json")), "--degree", "-1")
    assert code == 2
    code, _, _ = run_main(capsys, "check-groupoid", eq, "--format", "xml")
    assert code == 2
    code, _, err = run_main(capsys, "check-groupoid", eq, "--target", "nope")
    assert code == 2 and "nope" in err
    monkeypatch.setenv("WHK_THREADS", "many")
    code, _, err = run_main(capsys, "check-groupoid", eq)
    assert code == 2 and "WHK_THREADS" in err
    monkeypatch.setenv("WHK_THREADS", "4")
    code, _, _ = run_main(capsys, "check-groupoid", eq)
    assert code == 0


def test_inapplicable_command_is_operational(capsys):
    # no Lie action in this file: nothing to check is an error, not a pass
    code, _, err = run_main(capsys, "check-lie-action", str(corpus.path("eqGG.wha.json")))
    assert code == 2 and err


def test_failing_check_is_exit_one_not_two(capsys):
    code, out, _ = run_main(capsys, "check-weak-hopf", str(corpus.path("fold_to_group.json")))
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def parse_text(text):
    """{(report, check): (status, [witness strings])} from the text rendering."""
    out, current, check = {}, None, None
    for line in text.splitlines()[1:]:
        if not line.startswith(" "):
            current = line.rsplit(":", 1)[0]
            continue
        m = re.match(r"  \[(pass|fail)\] (.+)$", line)
        if m:
            check = m.group(2)
            out[(current, check)] = (m.group(1), [])
            continue
        m = re.match(r"      witness \((.*)\)(?: residual \[[^\]]*\])?(?:  .*)?$", line)
        if m:
            out[(current, check)][1].append(m.group(1))
    return out


FAST = [p for p in ENTRIES if not p.marks]


@pytest.mark.parametrize("name,command,want", FAST)
def test_json_and_text_agree(name, command, want):
    doc, _ = cli.run(command, str(corpus.path(name)))
    text = parse_text(cli.render_text(doc))
    from_json = {}
    for r in doc["results"]:
        for check, entry in r["checks"].items():
            from_json[(r["name"], check)] = (entry["status"], [cli.witness_text(f["witness"]) for f in entry.get("failures", [])])
    assert text == from_json


def test_console_script():
    exe = shutil.which("whk")
    cmd = [exe] if exe else [sys.executable, "-m", "whk.cli"]
    p = subprocess.run(cmd + ["check-groupoid", str(corpus.path("eqGG.wha.json")), "--format", "text"], capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout.startswith("check-groupoid eqGG.wha.json: PASS")
