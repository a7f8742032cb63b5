import json
import subprocess
import sys

import pytest

from superasp import parse_program
from superasp.cli import main

TRUE_PHI = """forall x
exists y
forall z
dnf
x y z
x y -z
-x -y z
-x -y -z
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_sc_odd_loop(files, capsys):
    code, out, _ = run(["check-sc", files("odd.lp", "a :- not a.\n")], capsys)
    assert code == 1
    assert "witness: {}" in out


def test_check_sc_json(files, capsys):
    code, out, _ = run(["check-sc", "--json", files("even.lp", "a :- not b. b :- not a.")], capsys)
    assert code == 0
    assert json.loads(out) == {"super_coherent": True, "witness": None, "facts_checked": 4}


def test_solve_json(files, capsys):
    code, out, _ = run(["solve", files("even.lp", "a :- not b. b :- not a."), "--json"], capsys)
    assert code == 0
    assert json.loads(out) == {"answer_sets": [["a"], ["b"]], "enumerated": 4}


def test_solve_text(files, capsys):
    code, out, _ = run(["solve", files("odd.lp", "a :- not a.")], capsys)
    assert code == 0 and out == "no answer sets\n"


def test_encode_then_check(files, tmp_path, capsys):
    phi = files("phi.qbf", TRUE_PHI)
    target = str(tmp_path / "p.lp")
    code, out, _ = run(["encode", phi, "-o", target], capsys)
    assert code == 0 and "29 rules" in out
    code, out, _ = run(["check-sc", target, "--max-atoms", "9"], capsys)
    assert code == 0 and "super-coherent: yes" in out


def test_encode_to_stdout_and_verify(files, capsys):
    phi = files("phi.qbf", TRUE_PHI)
    code, out, _ = run(["encode", phi], capsys)
    assert code == 0 and len(parse_program(out)) == 29
    prog = files("p.lp", out)
    code, out, _ = run(["verify-reduction", prog, phi], capsys)
    assert code == 0 and out == "passed\n"


def test_verify_reports_items(files, capsys):
    phi = files("phi.qbf", TRUE_PHI)
    main(["encode", phi])
    text = capsys.readouterr().out.replace("_v :- not _u.\n", "")
    code, out, _ = run(["verify-reduction", files("p.lp", text), phi, "--json"], capsys)
    assert code == 1
    data = json.loads(out)
    assert not data["passed"] and data["violations"][0]["item"] == "2"


def test_qbf_valid(files, capsys):
    assert run(["qbf-valid", files("t.qbf", TRUE_PHI)], capsys)[:2] == (0, "true\n")
    false_phi = "forall x / exists y / cnf / x y / x -y"
    assert run(["qbf-valid", files("f.qbf", false_phi)], capsys)[:2] == (1, "false\n")


def test_query(files, capsys):
    prog = files("c.lp", "a | b.")
    assert run(["query", prog, "a", "--mode", "brave"], capsys)[0] == 0
    code, out, _ = run(["query", prog, "a", "--mode", "cautious"], capsys)
    assert code == 1 and out == "a is cautiously false\n"


def test_classify(files, capsys):
    code, out, _ = run(["classify", files("e.lp", "a :- not b. b :- not a."), "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["is_odd_cycle_free"] and not data["is_stratified"]
    code, out, _ = run(["classify", files("e.lp", "a :- not a.")], capsys)
    assert "odd-cycle-free: no" in out


def test_embed_strat(files, capsys):
    code, out, _ = run(["embed", files("n.lp", "a :- not b."), "--transform", "strat"], capsys)
    assert code == 0
    assert "% fail atom: _fail" in out
    assert "_f_a | _t_a." in out
    assert len(parse_program(out)) == 7


def test_embed_shift_warns(files, capsys):
    code, out, err = run(["embed", files("h.lp", "a | b. a :- b. b :- a."), "--transform", "shift"], capsys)
    assert code == 0 and "head-cycle-free" in err


def test_embed_strat_shift_rejects_disjunction(files, capsys):
    code, _, err = run(["embed", files("d.lp", "a | b."), "--transform", "strat-shift"], capsys)
    assert code == 2 and "normal" in err


def test_embed_query(files, capsys):
    code, out, _ = run(["embed-query", files("c.lp", "a | b."), "a", "--mode", "brave", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["query_atom"] == "_q_prime"
    code, _, err = run(["embed-query", files("c.lp", "a | b."), "zz", "--mode", "brave"], capsys)
    assert code == 2 and "zz" in err


def test_equiv(files, capsys):
    odd, empty = files("odd.lp", "a :- not a."), files("empty.lp", "")
    code, out, _ = run(["equiv", odd, empty, "--context", "a"], capsys)
    assert code == 1
    assert out.splitlines()[:3] == ["equivalent: no", "witness: {}", "lhs: {}"]
    code, _, _ = run(["equiv", odd, odd, "--context", "a", "--project", "a"], capsys)
    assert code == 0


def test_parse_error_exit_code(files, capsys):
    code, _, err = run(["solve", files("bad.lp", "a :- .")], capsys)
    assert code == 2 and "1:6" in err


def test_missing_file(capsys):
    assert run(["solve", "/nonexistent/x.lp"], capsys)[0] == 2


def test_guard_exit_code(files, capsys):
    text = "".join(f"a{i}.\n" for i in range(17))
    code, _, err = run(["check-sc", files("big.lp", text)], capsys)
    assert code == 3 and "exceeds the guard of 16" in err


def test_bad_parallel_value(files):
    with pytest.raises(SystemExit) as exc:
        main(["solve", files("a.lp", "a."), "--parallel", "0"])
    assert exc.value.code == 2


def test_module_entry_point(files):
    done = subprocess.run(
        [sys.executable, "-m", "superasp", "solve", files("e.lp", "a :- not b. b :- not a."), "--json"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0
    assert json.loads(done.stdout)["answer_sets"] == [["a"], ["b"]]
