import json

import numpy as np
import pytest

from quiverhom.cli import main
from quiverhom.harness import nonpure_fixture_ses
from quiverhom.io import (
    FormatError,
    quiver_from_dict,
    quiver_to_dict,
    rep_from_dict,
    rep_to_dict,
    ses_from_dict,
    ses_to_dict,
)
from quiverhom.quiver import a2, make_quiver
from quiverhom.rep import Representation, stalk
from quiverhom.znmod import ModHom, Modulus, cyclic

Z4 = Modulus(4)


def doubling_rep():
    q = a2()
    m = cyclic(Z4, 4)
    return Representation(q, Z4, {1: m, 2: m}, {"a": ModHom(m, m, [[2]])})


def test_quiver_round_trip():
    q = make_quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    assert quiver_from_dict(quiver_to_dict(q)) == q


def test_rep_round_trip():
    x = doubling_rep()
    assert rep_from_dict(rep_to_dict(x)) == x


def test_ses_round_trip():
    ses = nonpure_fixture_ses(Z4)
    d = ses_to_dict(ses)
    back = ses_from_dict(d)
    assert back.x == ses.x and back.y == ses.y and back.z == ses.z


def test_format_errors_name_field():
    with pytest.raises(FormatError, match="modulus"):
        rep_from_dict({"quiver": {"vertices": [1], "arrows": []}})
    with pytest.raises(FormatError, match="modules"):
        rep_from_dict({"modulus": 4, "quiver": {"vertices": [1], "arrows": []}, "modules": {}, "arrows_maps": {}})
    bad = rep_to_dict(doubling_rep())
    bad["arrows_maps"]["a"] = [[1]]  # 1*4 != 0 mod 4 is fine; use ill-defined entry
    bad["modules"]["1"] = [2]
    with pytest.raises(FormatError, match="arrows_maps"):
        rep_from_dict(bad)


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_cli_classify(tmp_path, capsys):
    path = write(tmp_path, "rep.json", rep_to_dict(doubling_rep()))
    code = main(["classify", path, "--oracle"])
    out = capsys.readouterr().out
    assert code == 0
    assert "injective" in out
    code = main(["classify", path, "--class", "injective", "--json", "--oracle"])
    out = capsys.readouterr().out
    rec = json.loads(out.strip())
    assert rec["class"] == "injective" and rec["verdict"] is False and rec["oracle"] is False


def test_cli_classify_missing_file(capsys):
    assert main(["classify", "missing.json"]) == 2


def test_cli_purity(tmp_path, capsys):
    path = write(tmp_path, "ses.json", ses_to_dict(nonpure_fixture_ses(Z4)))
    code = main(["purity", path, "--json"])
    rec = json.loads(capsys.readouterr().out.strip())
    assert code == 0 and rec["pure"] is False


def test_cli_ext(tmp_path, capsys):
    q = a2()
    Z2 = Modulus(2)
    s1 = stalk(q, Z2, 1, cyclic(Z2, 2))
    s2 = stalk(q, Z2, 2, cyclic(Z2, 2))
    from quiverhom.io import quiver_to_dict, rep_block_to_dict

    payload = {
        "modulus": 2,
        "quiver": quiver_to_dict(q),
        "reps": {"s1": rep_block_to_dict(s1), "s2": rep_block_to_dict(s2)},
    }
    path = write(tmp_path, "reps.json", payload)
    code = main(["ext", path, "--x", "s1", "--y", "s2", "--n", "1", "--json"])
    rec = json.loads(capsys.readouterr().out.strip())
    assert code == 0 and rec["cardinality"] == 2
    assert main(["ext", path, "--x", "nope", "--y", "s2", "--n", "1"]) == 2


def test_cli_rooted(tmp_path, capsys):
    path = write(tmp_path, "quiver.json", quiver_to_dict(a2()))
    code = main(["rooted", path, "--json"])
    rec = json.loads(capsys.readouterr().out.strip())
    assert code == 0 and rec["right_rooted"] is True
    loop = {"vertices": ["v"], "arrows": [{"id": "l", "src": "v", "tgt": "v"}]}
    path = write(tmp_path, "loop.json", loop)
    code = main(["rooted", path, "--json"])
    rec = json.loads(capsys.readouterr().out.strip())
    assert rec["right_rooted"] is False


def test_cli_fixture_nonpure(capsys):
    code = main(["fixture", "nonpure", "--json"])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0 and len(out) == 3
    for line in out:
        rec = json.loads(line)
        assert rec["pure"] is False


def test_cli_verify_suite_and_determinism(capsys):
    code = main(["verify", "rootedness", "--seed", "42", "--trials", "5", "--json"])
    out1 = capsys.readouterr().out
    assert code == 0
    code = main(["verify", "rootedness", "--seed", "42", "--trials", "5", "--json"])
    out2 = capsys.readouterr().out
    assert out1 == out2
    for line in out1.strip().splitlines():
        rec = json.loads(line)
        assert rec["pass"] is True


def test_cli_verify_unknown_suite(capsys):
    assert main(["verify", "bogus", "--trials", "1"]) == 2


def test_cli_verify_config_file(tmp_path, capsys):
    cfg = {"moduli": [2, 4], "trials": 3, "master_seed": 11}
    path = write(tmp_path, "config.json", cfg)
    code = main(["verify", "rootedness", "--config", path, "--json"])
    out = capsys.readouterr().out
    assert code == 0 and len(out.strip().splitlines()) == 3
