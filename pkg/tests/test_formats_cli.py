import json

import pytest

import pgroupoid as pg
from pgroupoid import fixtures
from pgroupoid.cli import main
from pgroupoid.formats import (
    FormatError,
    emit_cat,
    emit_pgd,
    parse_cat,
    parse_pgd,
    parse_string_arg,
    parse_word,
)

from helpers import MODEL_FIXTURES


# -- formats -----------------------------------------------------------------


def test_pgd_round_trip_all_fixtures():
    for name in MODEL_FIXTURES:
        model = fixtures.load_model(name)
        assert parse_pgd(emit_pgd(model)) == model


def test_pgd_emit_is_canonical_fixed_point():
    for name in ("na_square.pgd", "a_square.pgd", "na_pentagon.pgd"):
        text = fixtures.fixture_text(name)
        assert emit_pgd(parse_pgd(text)) == text


def test_pgd_self_inverse_round_trip():
    m = pg.TruncatedModel.symmetric(["o"], [("m", "o", "o")],
                                    self_inverse=["m"])
    text = emit_pgd(m)
    assert "edge m o o self" in text
    assert parse_pgd(text) == m


def test_pgd_parse_errors():
    with pytest.raises(FormatError):
        parse_pgd("mode symmetric\n")
    with pytest.raises(FormatError):
        parse_pgd("pgd 1\nobject a\n")  # missing mode
    with pytest.raises(FormatError):
        parse_pgd("pgd 1\nmode nonsense\n")
    with pytest.raises(FormatError):
        parse_pgd("pgd 1\nmode symmetric\nedge f a b\n")  # dangling objects
    with pytest.raises(FormatError):
        parse_pgd("pgd 1\nmode symmetric\nobject a\nobject a\n")
    with pytest.raises(FormatError):
        parse_pgd("pgd 1\nmode simplicial\nobject a\nedge f! a a\n")


def test_pgd_loader_orbit_closes():
    text = ("pgd 1\nmode symmetric\nobject 0\nobject 1\nobject 2\n"
            "edge f 0 1\nedge g 1 2\nedge h 0 2\ntri f g h\n")
    m = parse_pgd(text)
    assert len(m.triangles) == 6
    assert m.validate().ok


def test_pgd_loader_checks_validity():
    bad = ("pgd 1\nmode simplicial\nobject 0\nobject 1\nobject 2\n"
           "edge f 0 1\nedge g 1 2\nedge h 0 2\nedge h2 0 2\n"
           "tri f g h\ntri f g h2\n")
    with pytest.raises(FormatError):
        parse_pgd(bad)
    broken = parse_pgd(bad, check=False)
    assert not broken.validate().ok


def test_cat_round_trip():
    for name in ("interval.cat", "z3.cat"):
        cat = fixtures.load_category(name)
        again = parse_cat(emit_cat(cat))
        assert sorted(again.morphisms) == sorted(cat.morphisms)
        assert again.nonidentity_morphisms() == cat.nonidentity_morphisms()
        for f in cat.nonidentity_morphisms():
            for g in cat.nonidentity_morphisms():
                if cat.composable(f, g):
                    assert again.compose(g, f) == cat.compose(g, f)


def test_cat_parse_errors():
    with pytest.raises(FormatError):
        parse_cat("objects a\n")
    with pytest.raises(FormatError):
        parse_cat("cat 1\nobjects o\nmor x o o\n")  # missing composite x.x
    with pytest.raises(FormatError):
        parse_cat("cat 1\nobjects o\nmor x o o\nmor y o o\n"
                  "comp x x y\ncomp x y x\ncomp y x y\ncomp y y x\n")


def test_word_syntax():
    assert parse_word("a,b,c") == ("a", "b", "c")
    assert parse_word("f^,1@0") == ("f^", "1@0")
    assert parse_string_arg("(f,g)") == ("f", "g")
    assert parse_string_arg("()") == ()
    with pytest.raises(FormatError):
        parse_word("a,,b")


# -- cli ----------------------------------------------------------------------


def _fx(name):
    return str(fixtures.fixture_path(name))


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_validate_pass(capsys):
    code, out = run_cli(capsys, "validate", _fx("na_square.pgd"))
    assert code == 0
    rec = json.loads(out)
    assert rec["command"] == "validate" and rec["verdict"] == "pass"
    assert rec["counts"] == {"objects": 4, "edges": 14, "triangles": 24}


def test_cli_validate_failure(tmp_path, capsys):
    bad = tmp_path / "bad.pgd"
    bad.write_text("pgd 1\nmode simplicial\nobject 0\nobject 1\nobject 2\n"
                   "edge f 0 1\nedge g 1 2\nedge h 0 2\nedge h2 0 2\n"
                   "tri f g h\ntri f g h2\n")
    code, out = run_cli(capsys, "validate", str(bad))
    assert code == 3
    assert "spine-collision" in out


def test_cli_validate_malformed_input(capsys):
    code, out = run_cli(capsys, "validate", "missing-file.pgd")
    assert code == 2
    assert json.loads(out)["verdict"] == "input-error"


def test_cli_embeddable_na_square(capsys):
    code, out = run_cli(capsys, "embeddable", _fx("na_square.pgd"),
                        "--max-len", "3")
    assert code == 3
    rec = json.loads(out)
    assert rec["witness"] == "s1,s2,s3"
    assert rec["values"] == ["lT", "lT'"]
    assert rec["bound"] == 3


def test_cli_embeddable_kind(capsys):
    code, out = run_cli(capsys, "embeddable", _fx("example2.pgd"),
                        "--max-len", "8")
    assert code == 0
    assert json.loads(out)["verdict"] == "kind-up-to-bound"


def test_cli_mountain(tmp_path, capsys):
    sym = tmp_path / "e1s.pgd"
    code, _ = run_cli(capsys, "symmetrize", _fx("example1.pgd"),
                      "-o", str(sym))
    assert code == 0
    code, out = run_cli(capsys, "mountain", str(sym), "f", "g",
                        "--max-len", "7")
    assert code == 0
    rec = json.loads(out)
    assert rec["witness"] == "a,b,c,r^,q^,p^,g"
    code, out = run_cli(capsys, "mountain", _fx("example2.pgd"), "f", "g",
                        "--max-len", "9")
    assert code == 3
    assert json.loads(out)["verdict"] == "absent"


def test_cli_tau(capsys):
    code, out = run_cli(capsys, "tau", _fx("na_square.pgd"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "generators: dT'_13 dT_02 lT lT' s1 s2 s3"
    assert len(lines) == 5


def test_cli_reflect_reduce(tmp_path, capsys):
    out_path = tmp_path / "r.pgd"
    code, out = run_cli(capsys, "reflect", _fx("na_square.pgd"),
                        "--max-len", "3", "-o", str(out_path))
    assert code == 0
    reflected = pg.load_pgd(out_path)
    assert pg.mean_scan(reflected, 3).is_kind

    code, out = run_cli(capsys, "reduce", _fx("na_square.pgd"),
                        "-o", str(tmp_path / "red.pgd"))
    assert code == 0
    assert json.loads(out)["counts"]["objects"] == 1


def test_cli_symmetrize_failure(tmp_path, capsys):
    bad = tmp_path / "loop.pgd"
    bad.write_text("pgd 1\nmode simplicial\nobject 0\nobject 1\n"
                   "edge f 0 1\nedge g 1 0\ntri f g 1@0\n")
    code, out = run_cli(capsys, "symmetrize", str(bad),
                        "-o", str(tmp_path / "x.pgd"))
    assert code == 3
    assert json.loads(out)["verdict"] == "fail"


def test_cli_na_and_pairs(tmp_path, capsys):
    out_path = tmp_path / "na.pgd"
    code, out = run_cli(capsys, "na", "3", "0", "1", "-o", str(out_path))
    assert code == 0
    built = pg.load_pgd(out_path)
    assert built == fixtures.load_model("na_square.pgd")

    code, out = run_cli(capsys, "na", "3", "0", "0", "-o", str(out_path))
    assert code == 2

    code, out = run_cli(capsys, "pairs", "4")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 25
    classes = [r["class"] for r in rows]
    assert classes.count("incompatible") == 11
    assert classes.count("compatible") == 4
    assert classes.count("well_behaved") == 10
    assert all(r["degree"] == 3 for r in rows if "degree" in r)


def test_cli_orthogonal(capsys):
    code, out = run_cli(capsys, "orthogonal", _fx("na_square.pgd"),
                        "--max-gon", "3")
    assert code == 3
    rec = json.loads(out)
    edge_map = rec["witness"]["edge_map"]
    assert all(k == v for k, v in edge_map.items())

    code, out = run_cli(capsys, "orthogonal", _fx("a_square.pgd"),
                        "--max-gon", "3")
    assert code == 0


def test_cli_degree(capsys):
    code, out = run_cli(capsys, "degree", _fx("na_square.pgd"))
    assert code == 0
    assert json.loads(out)["verdict"] == "3"


def test_cli_monoid(capsys):
    code, out = run_cli(capsys, "monoid", _fx("interval.cat"),
                        "--mult", "(f)", "(f^)")
    assert code == 0
    assert json.loads(out)["witness"] == "()"
    code, out = run_cli(capsys, "monoid", _fx("interval.cat"),
                        "--mult", "(f)", "(f)")
    assert json.loads(out)["witness"] == "(f,f)"


def test_cli_pregroup(capsys):
    code, out = run_cli(capsys, "pregroup", _fx("na_square.pgd"))
    assert code == 3
    rec = json.loads(out)
    assert rec["witness"] == ["dT'_13", "s3^", "dT_02^"]


def test_cli_deterministic_output(capsys):
    first = run_cli(capsys, "pairs", "4")
    second = run_cli(capsys, "pairs", "4")
    assert first == second
    a = run_cli(capsys, "embeddable", _fx("na_pentagon.pgd"), "--max-len", "4")
    b = run_cli(capsys, "embeddable", _fx("na_pentagon.pgd"), "--max-len", "4")
    assert a == b
