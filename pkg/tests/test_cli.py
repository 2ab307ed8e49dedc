import json
import subprocess
import sys

import pytest

from p3helix.cli import EXIT_CHECK, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from p3helix.epsilon import BundleRecord, bundle_record


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "1/9")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["ch"] == ["9", "2", "-2", "4/3"]
    assert set(data) == {"index", "order", "ch", "rank", "slope", "c", "chi", "wbn", "gg",
                         "foundation", "mark", "resolutions"}
    assert data["wbn"] == {"i": 0, "h": 10, "conjectural": True}


@pytest.mark.parametrize("index", ["1/3", "4/3^3", "-5/9", "7/3"])
def test_eval_round_trip(capsys, index):
    _, out, _ = run(capsys, "eval", "--", index)
    rec = BundleRecord.from_json(json.loads(out))
    assert rec == bundle_record(index)


def test_chi(capsys):
    assert run(capsys, "chi", "(1,0,0,0)", "(1,3,9/2,9/2)")[:2] == (EXIT_OK, "20\n")
    assert run(capsys, "chi", "(3,1,-1/2,1/6)")[1] == "4\n"


def test_perp(capsys):
    code, out, _ = run(capsys, "perp", "(1,0,0,0)", "(1,1,1/2,1/6)", '["1","2","2","4/3"]')
    assert code == EXIT_OK and json.loads(out) == ["3", "1", "-1/2", "1/6"]


def test_mutate(capsys):
    std = json.dumps([["1", "-1", "1/2", "-1/6"], ["1", "0", "0", "0"], ["1", "1", "1/2", "1/6"], ["1", "2", "2", "4/3"]])
    code, out, _ = run(capsys, "mutate", std, "R1")
    assert code == EXIT_OK and json.loads(out)[1] == ["3", "1", "-1/2", "1/6"]
    code, out, _ = run(capsys, "mutate", std, "R(E,F)")
    assert json.loads(out)[1] == ["3", "1", "-1/2", "1/6"]
    code, _, err = run(capsys, "mutate", std, "R7")
    assert code == EXIT_USAGE and "unknown move" in err


def test_resolve_and_parents(capsys):
    code, out, _ = run(capsys, "resolve", "2/9")
    res = json.loads(out)
    assert [r["multiplicity"] for r in res] == [6, 20]
    code, out, _ = run(capsys, "parents", "8/9")
    assert json.loads(out) == {"left": "2/3", "right": "1"}


def test_table_formats(capsys):
    assert len(json.loads(run(capsys, "table", "--max-order", "2")[1])) == 8
    out = run(capsys, "table", "--max-order", "1", "--format", "csv")[1]
    assert out.splitlines()[0].startswith("index,order,slope")
    assert run(capsys, "table", "--max-order", "1", "--format", "md")[1].startswith("| index")


def test_tree(capsys):
    code, out, _ = run(capsys, "tree", "--depth", "1", "--format", "dot")
    assert code == EXIT_OK and out.count("->") == 2
    data = json.loads(run(capsys, "tree", "--depth", "2", "--format", "json")[1])
    assert len(data["root"]["children"]) == 2


def test_verify_and_audit(capsys):
    code, out, _ = run(capsys, "verify", "--max-order", "2", "--tree-depth", "2")
    assert code == EXIT_OK and "all checks passed" in out
    code, out, _ = run(capsys, "verify", "--max-order", "2", "--tree-depth", "2", "--format", "json")
    assert json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "audit", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and len(data["rows"]) == 20


def test_verify_failure_exit_code(capsys, monkeypatch):
    from p3helix import catalog

    real = catalog.run_verification

    def broken(*a, **k):
        rep = real(0, 0)
        rep.checks[0].passed = False
        return rep

    monkeypatch.setattr(catalog, "run_verification", broken)
    assert run(capsys, "verify", "--max-order", "0", "--tree-depth", "0")[0] == EXIT_CHECK


def test_p2(capsys):
    assert json.loads(run(capsys, "p2", "eval", "3/2^3")[1])["alpha"] == "12/29"
    d = json.loads(run(capsys, "p2", "delta", "0", "--cutoff", "0")[1])
    assert d["delta"] == "1" and d["certified"] is True
    assert run(capsys, "p2", "stable", "1", "0", "1", "--cutoff", "3")[1] == "stable\n"
    assert run(capsys, "p2", "stable", "2", "1/2", "3/8")[1] == "exceptional\n"


@pytest.mark.parametrize(
    "argv",
    [("eval", "1/2"), ("chi", "(1,2)"), ("perp", "(1,0,0,0)", "(1,0,0,0)", "(1,1,1/2,1/6)"),
     ("parents", "4/3"), ("resolve", "3"), ("p2", "stable", "2", "1/2", "1/3")],
)
def test_runtime_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_RUNTIME
    assert out == ""
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [(), ("bogus",), ("eval",), ("tree", "--format", "png"), ("p2",)])
def test_usage_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "p3helix", "chi", "(1,0,0,0)", "(1,3,9/2,9/2)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "20\n"


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "p3helix", "table", "--max-order", "2", "--format", "csv"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
