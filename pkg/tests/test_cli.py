import json

from grouplab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_show_named_shorthand(capsys):
    code, out, _ = run(capsys, "show", "holomorph_cyclic:5", "--k", "1,2")
    assert code == 0
    assert "order 20" in out
    assert "supersoluble=True" in out
    assert "k=1: X=False" in out
    assert "k=2: X=True Y=True K=True F=True" in out


def test_show_inline_json(capsys):
    spec = json.dumps({"kind": "named", "name": "sym", "args": [3]})
    code, out, _ = run(capsys, "show", spec)
    assert code == 0 and "order 6" in out


def test_show_spec_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"kind": "generators", "degree": 3,
                             "cycles": ["(1 2 3)"]}))
    code, out, _ = run(capsys, "show", str(p))
    assert code == 0 and "order 3" in out


def test_check_k_submodular_true(capsys):
    code, out, _ = run(capsys, "check", "k-submodular", "holomorph_cyclic:5",
                       "--gens", "(2 3 5 4)", "--k", "2")
    assert code == 0
    assert "witness chain" in out
    assert "True" in out


def test_check_k_submodular_false(capsys):
    # order-6 subgroup of Hol(Z7) is not 1-submodular
    code, out, _ = run(capsys, "check", "submodular", "holomorph_cyclic:7",
                       "--gens", "(2 4 3 7 5 6)")
    assert code == 1 and "False" in out


def test_check_k_lm(capsys):
    code, out, _ = run(capsys, "check", "k-lm", "holomorph_cyclic:5", "--k", "2")
    assert code == 0 and "is a 2-LM group" in out
    code, out, _ = run(capsys, "check", "k-lm", "holomorph_cyclic:5", "--k", "1")
    assert code == 1 and "counterexample pair" in out


def test_check_modular_and_subnormal(capsys):
    assert run(capsys, "check", "modular", "cyclic:12",
               "--gens", "(1 2 3 4 5 6 7 8 9 10 11 12)")[0] == 0
    assert run(capsys, "check", "p-subnormal", "sym:4",
               "--gens", "(1 2 3)")[0] == 1
    assert run(capsys, "check", "n-modular-embedded", "holomorph_cyclic:5",
               "--gens", "(2 3 5 4)", "--n", "2")[0] == 0


def test_check_errors(capsys):
    # missing --gens
    code, _, err = run(capsys, "check", "modular", "sym:3")
    assert code == 2 and "error" in err
    # generator outside the group
    code, _, err = run(capsys, "check", "modular", "sym:3",
                       "--gens", "(1 2)(3 4)")
    assert code == 2
    # k < 1
    code, _, err = run(capsys, "check", "k-submodular", "sym:3",
                       "--gens", "(1 2)", "--k", "0")
    assert code == 2


def test_bad_group_spec(capsys):
    code, _, err = run(capsys, "show", "nosuchfamily:3")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "show", '{"kind": "bogus"}')
    assert code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "alt:5", "--k", "1")
    assert code == 0
    assert "k=1 class X: False" in out and "k=1 class F: False" in out


def test_verify_small(capsys, tmp_path):
    out_path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "--suite", "T3.2", "--k", "1,2",
                       "--cap", "24", "--out", str(out_path))
    assert code == 0
    assert "suite_pass=True" in out
    payload = json.loads(out_path.read_text())
    assert payload["reports"][0]["suite"] == "T3.2"


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "T9.9")
    assert code == 2 and "unknown suite" in err


def test_corpus_list(capsys):
    code, out, _ = run(capsys, "corpus", "list", "--cap", "30")
    assert code == 0
    assert "S4" in out and "total:" in out


def test_export_lattice_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export-lattice", "sym:4", "--emit-dot",
                       "--k", "1")
    assert code == 0 and out.startswith("digraph")
    p = tmp_path / "l.dot"
    code, out, _ = run(capsys, "export-lattice", "dihedral:5", "--emit-dot",
                       "--out", str(p))
    assert code == 0
    assert p.read_text().startswith("digraph")


def test_export_lattice_requires_dot(capsys):
    code, _, err = run(capsys, "export-lattice", "sym:3")
    assert code == 2 and "emit-dot" in err


def test_order_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("GROUPLAB_ORDER_CAP", "10")
    code, _, err = run(capsys, "show", "sym:4")
    assert code == 2 and "error" in err
