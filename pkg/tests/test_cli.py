import json

import pytest

from realpgonal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_area(capsys):
    assert run(capsys, "area", "(0,+,[3,3],{(3,3,3,3)})")[:2] == (0, "5/3 * 2π\n")
    code, out, _ = run(capsys, "area", "--json", "(2,[-])")
    assert code == 0 and json.loads(out)["area"] == "2"


def test_bad_signature_is_a_domain_error(capsys):
    code, _, err = run(capsys, "area", "(0,+,[3")
    assert code == 1 and "realpgonal:" in err


def test_usage_error(capsys):
    assert run(capsys, "species", "--construction", "theta9", "--p", "3", "--genus", "5")[0] == 2
    assert run(capsys, "enumerate", "(0,+,[3],{(3,3)})", "--group", "C_5")[0] == 2
    assert run(capsys, "verify", "--case", "1a", "--p", "3", "--param", "q")[0] == 2


def test_signatures(capsys):
    code, out, _ = run(capsys, "signatures", "--p", "3", "--genus", "4")
    assert code == 0 and "(0,+,[3,3,3],{(-)})  C_2p" in out


@pytest.mark.parametrize("argv, value", [
    (["--construction", "theta1", "--p", "3", "--genus", "5"], "-1"),
    (["--construction", "theta2", "--p", "3", "--genus", "4"], "1"),
    (["--construction", "theta3", "--p", "3", "--genus", "4", "--target", "d"], "-3"),
    (["--construction", "theta3", "--p", "3", "--genus", "4", "--target", "c"], "3"),
    (["--construction", "theta3", "--p", "3", "--genus", "4", "--target", "c", "--connector", "r"], "1"),
])
def test_species(capsys, argv, value):
    code, out, _ = run(capsys, "species", *argv)
    assert code == 0 and out.strip() == value


def test_species_domain_error(capsys):
    assert run(capsys, "species", "--construction", "theta2", "--p", "3", "--genus", "5")[0] == 1


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--json", "(0,+,[3],{(3,3)})", "--group", "D_3")
    data = json.loads(out)
    assert code == 0 and data["count"] == len(data["epimorphisms"]) > 0


def test_classify_case(capsys):
    code, out, _ = run(capsys, "classify", "--group", "1a", "--p", "3", "--q", "2")
    assert code == 0 and "2 symmetry classes" in out


def test_classify_recipe_file(capsys, tmp_path):
    path = tmp_path / "d5.json"
    path.write_text(json.dumps({"group": {"kind": "dihedral", "n": 5}, "anticonformal": ["s"],
                                "phi": "r", "p": 5}))
    code, out, _ = run(capsys, "classify", "--group", str(path))
    assert code == 0 and "1 symmetry classes" in out


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--case", "1a", "--p", "3", "--q", "5")[0] == 0
    assert run(capsys, "verify", "--case", "2a", "--p", "3", "--q", "3")[0] == 3
    assert run(capsys, "verify", "--case", "1a", "--p", "3")[0] == 1


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--json", "--primes", "3", "--q-max", "3",
                       "--case", "1a")
    assert code == 0 and json.loads(out)["summary"]["mismatch"] == 0


def test_theorem2(capsys):
    code, out, _ = run(capsys, "theorem2", "--p", "3", "--genus", "5")
    assert code == 0 and "0 findings" in out
