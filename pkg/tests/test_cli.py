import io
import json
from fractions import Fraction

import pytest

from monictd.cli import GlobalConfig, build_parser, config_from_args, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_bounds():
    code, text = run("bounds", "--n", "3")
    assert code == 0 and json.loads(text) == {"lower": "7/18", "upper": "12/25"}


def test_bounds_inequalities_and_extra_lower():
    code, text = run("bounds", "--inequalities", "50")
    assert code == 0 and json.loads(text)["ok"]
    code, text = run("bounds", "--extra-lower", "0.33")
    assert code == 0 and json.loads(text)["lower"]["lo"] == "3/11"


def test_farey():
    code, text = run("farey", "--nmax", "21")
    assert code == 0 and json.loads(text) == []


def test_certify_exit_codes():
    code, text = run("certify", "--n", "8")
    assert code == 0 and json.loads(text)["verdict"] == "certified"
    code, text = run("certify", "--n", "4")
    assert code == 1 and json.loads(text)["verdict"] == "refuted"


def test_certify_all():
    code, text = run("certify", "--all")
    verdicts = [c["verdict"] for c in json.loads(text)]
    assert verdicts == ["certified", "refuted", "certified", "certified", "certified", "certified"]
    assert code == 1


def test_certify_product(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"factors": [{"coeffs": ["0", "1"], "exp": 7},
                                            {"coeffs": ["1", "-3", "1"], "exp": 1}]}))
    code, text = run("certify", "--product", str(path), "--interval", "0,7/18", "--n", "3")
    assert code == 0 and json.loads(text)["D"] == 9
    code, _ = run("certify", "--product", str(path), "--interval", "0,0.6", "--n", "3")
    assert code == 2


def test_usage_errors():
    assert run("bogus")[0] == 2
    assert run()[0] == 2
    assert run("bounds", "--n", "1")[0] == 2
    assert run("supnorm", "--interval", "1,0", "--poly", "[0,1]")[0] == 2
    assert run("search", "--interval", "0,1", "--q", "[0,1]")[0] == 2


@pytest.mark.parametrize("cmd", ["supnorm", "obstruction", "bounds", "profile", "search",
                                 "optimize", "certify", "farey"])
def test_help(cmd):
    assert run(cmd, "--help")[0] == 0


def test_supnorm_and_obstruction():
    code, text = run("supnorm", "--interval", "0,1", "--poly", '["0","1","-1"]')
    assert code == 0 and json.loads(text)["supnorm"]["lo"] == "1/4"
    code, text = run("obstruction", "--interval", "0,0.2", "--dmax", "1", "--hmax", "10")
    assert json.loads(text) == {"poly": ["-1", "5"], "a_d": 5, "d": 1, "value_decimal": "0.2"}


def test_supnorm_product(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"factors": [{"coeffs": ["0", "1"], "exp": 7},
                                            {"coeffs": ["1", "-3", "1"], "exp": 1}]}))
    code, text = run("supnorm", "--interval", "0,7/18", "--product", str(path))
    assert code == 0 and json.loads(text)["D"] == 9


def test_search_and_optimize(tmp_path):
    code, text = run("search", "--interval", "0,1", "--q", "[-1,2]", "--k", "10", "--rounds", "2")
    data = json.loads(text)
    coeffs = [f["coeffs"] for f in data["factors"]]
    assert ["0", "1"] in coeffs and ["-1", "1"] in coeffs
    path = tmp_path / "f.json"
    path.write_text(json.dumps([["0", "1"], ["-1", "1"]]))
    code, text = run("optimize", "--interval", "0,1", "--q", "[-1,2]", "--factors", str(path),
                     "--denom-limit", "100")
    data = json.loads(text)
    assert code == 0 and data["alpha"] == ["1/2", "1/2"] and data["exponents"] == [1, 1]


def test_profile(tmp_path):
    path = tmp_path / "prof.csv"
    code, _ = run("profile", "--from", "0.3", "--to", "0.5", "--steps", "4", "--out", str(path))
    lines = path.read_text().strip().splitlines()
    assert code == 0 and len(lines) == 6
    row = next(l for l in lines if l.startswith("0.4,"))
    assert row.split(",")[1].startswith("0.33333") and row.split(",")[2].startswith("0.33333")


def test_deterministic_output():
    assert run("certify", "--n", "7") == run("certify", "--n", "7")


def test_precision_env():
    args = build_parser().parse_args(["bounds", "--n", "3"])
    assert config_from_args(args, {"MONICTD_PRECISION": "512"}).precision_bits == 512
    args = build_parser().parse_args(["--precision", "128", "bounds", "--n", "3"])
    assert config_from_args(args, {"MONICTD_PRECISION": "512"}).precision_bits == 128
    with pytest.raises(ValueError):
        GlobalConfig(precision_bits=32768)
