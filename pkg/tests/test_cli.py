from pathlib import Path

import pytest

from cli import main

DATA_DIR = Path(__file__).resolve().parent.parent / "test_data"


def run(capsys, *argv):
    code = main(list(argv))
    lines = capsys.readouterr().out.splitlines()
    return code, lines


def data(name):
    return str(DATA_DIR / name)


def test_eq_equal_words(capsys):
    code, lines = run(capsys, "eq", "a0^-1 a1 a0", "a2")
    assert code == 0
    assert lines[-2:] == ["equal: true", "RESULT: ok"]


def test_eq_distinct_words(capsys):
    code, lines = run(capsys, "eq", "a0", "a1")
    assert code == 1
    assert lines[-1] == "RESULT: fail"


def test_parse_error_is_a_usage_error(capsys):
    code, lines = run(capsys, "eq", "a0^0", "a1")
    assert code == 2
    assert lines == ["RESULT: fail"]


def test_nf(capsys):
    assert run(capsys, "nf", "a1 a0") == (0, ["a0 a2", "RESULT: ok"])


def test_pl(capsys):
    code, lines = run(capsys, "pl", "a0")
    assert code == 0
    assert lines == ["0/2^0 -> 0/2^0", "1/2^1 -> 1/2^2", "3/2^2 -> 1/2^1", "1/2^0 -> 1/2^0", "RESULT: ok"]


def test_verify_presentation(capsys):
    code, lines = run(capsys, "verify-presentation", "--depth", "5")
    assert code == 0
    assert lines[0] == "convention: left"


def test_verify_l31(capsys):
    code, lines = run(capsys, "verify-l31", "--imax", "2", "--bound", "2")
    assert code == 0
    assert lines[-1] == "RESULT: ok"


def test_standard_form(capsys):
    code, lines = run(capsys, "standard-form", "a0^2 a3 a1^-1")
    assert code == 0
    assert lines[:3] == ["i: 0", "n: 2", "b: a2 a0^-1"]
    assert run(capsys, "standard-form", "a2")[0] == 1


def test_standard_form_search(capsys):
    code, lines = run(capsys, "standard-form-search", "a3^-1 a4", "--radius", "4")
    assert code == 0
    assert lines[-1] == "RESULT: ok"


def test_unknown_verb_and_bad_flag(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify-all", "--profile", "huge") == (2, ["RESULT: fail"])
    assert run(capsys, "nf", "a0", "--radius", "x")[0] == 2


def test_missing_file_is_an_io_error(capsys):
    code, lines = run(capsys, "endo", "check", data("absent.endo"))
    assert code == 3
    assert lines == ["RESULT: fail"]


def test_endo_check(capsys):
    assert run(capsys, "endo", "check", data("inner_by_w.endo"))[0] == 0
    assert run(capsys, "endo", "check", data("swap.endo"))[0] == 1


def test_endo_split_from_kernel(capsys):
    code, lines = run(capsys, "endo", "split-from-kernel", data("inner_by_w.endo"), "a0 a1^-1")
    assert code == 0
    assert lines == [
        "power: 1", "conjugator: x0 x1",
        "rank 2", "x0 -> x0", "x1 -> x1",
        "RESULT: ok",
    ]


def test_endo_split_with_bump(capsys):
    code, lines = run(
        capsys, "endo", "split", data("inner_by_w.endo"),
        "--i", "0", "--k", "1", "--witness", "x0 x1",
    )
    assert code == 0
    assert lines[0] == "power: 2"


def test_endo_verify_identity(capsys):
    args = ("endo", "verify-identity", data("inner_by_w.endo"), "--m", "2", "--i", "1", "--k", "3")
    assert run(capsys, *args)[0] == 0
    assert run(capsys, *args, "--printed")[0] == 1


def test_endo_e_hom_needs_x0(capsys):
    assert run(capsys, "endo", "e-hom", data("swap.endo"), "a0")[0] == 2
    assert run(capsys, "endo", "e-hom", data("inner_by_w.endo"), "a0 a1^-1") == (0, ["1", "RESULT: ok"])


def test_endo_find_kernel(capsys):
    code, lines = run(capsys, "endo", "find-kernel", data("inner_by_w.endo"), "--maxlen", "2", "--maxindex", "1")
    assert (code, lines[0]) == (0, "a0 a1^-1")


def test_endo_is_inner(capsys):
    code, lines = run(capsys, "endo", "is-inner", data("inner_rank3.endo"))
    assert code == 0
    assert lines[0].startswith("conjugator: ")
    code, lines = run(capsys, "endo", "is-inner", data("swap.endo"))
    assert code == 1
    assert "definitive: true" in lines


def test_pi1_validate(capsys):
    assert run(capsys, "pi1", "validate", data("theta.graph"))[0] == 0
    assert run(capsys, "pi1", "validate", data("theta_cycle_base.graph"))[0] == 1


def test_pi1_class_and_product(capsys):
    assert run(capsys, "pi1", "class", data("theta.graph"), "e0 e1^-1") == (0, ["e1^-1", "RESULT: ok"])
    code, lines = run(capsys, "pi1", "product", data("theta.graph"), "e1 e0^-1", "e2 e0^-1")
    assert (code, lines[0]) == (0, "e1 e0^-1 e2")


def test_pi1_enumerate(capsys):
    code, lines = run(capsys, "pi1", "enumerate", data("wedge2.graph"), "--maxlen", "2")
    assert code == 0
    assert lines[0] == "classes: 17"
    assert lines[1] == "@0"


def test_pi1_enumerate_rejects_invalid_base(capsys):
    assert run(capsys, "pi1", "enumerate", data("theta_cycle_base.graph"), "--maxlen", "1")[0] == 2


def test_pi1_iso_check(capsys):
    args = ("pi1", "iso-check", data("theta.graph"), "--maxlen", "3")
    assert run(capsys, *args, "--x0", "1")[0] == 0
    assert run(capsys, *args, "--x0", "5")[0] == 2


def test_examples(capsys):
    code, lines = run(capsys, "examples", "--data-dir", str(DATA_DIR))
    assert code == 0
    assert any(line.startswith("graph  Theta  ") for line in lines)
    assert any(line.startswith("endo  Inner By W  ") for line in lines)


@pytest.mark.parametrize("argv", [
    ("--seed", "3", "nf", "a0"),
    ("--log-level", "DEBUG", "nf", "a0"),
])
def test_global_flags(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_verify_all_rejects_malformed_seed(capsys):
    code, lines = run(capsys, "verify-all", "--profile", "standard", "--seed", "x")
    assert (code, lines) == (2, ["RESULT: fail"])


@pytest.mark.parametrize("argv", [
    ("class", "e0"),
    ("product", "e0", "e1"),
])
def test_pi1_class_and_product_reject_invalid_base(capsys, argv):
    verb, *paths = argv
    assert run(capsys, "pi1", verb, data("theta_cycle_base.graph"), *paths) == (2, ["RESULT: fail"])


def test_nf_with_a_huge_exponent(capsys):
    assert run(capsys, "nf", "a1^1000000000 a0") == (0, ["a0 a2^1000000000", "RESULT: ok"])
