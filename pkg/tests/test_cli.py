import json
import time

import pytest

from quasispec.cli import RECOVERY_IDS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_bad_number_is_usage_error(capsys):
    code, _, err = run(capsys, "ops", "eval", "--alpha", "abc")
    assert code == 2 and "not a number" in err


def test_ops_eval(capsys):
    code, out, _ = run(capsys, "ops", "eval", "--alpha", "0", "--n", "2", "--x", "0", "--exact")
    data = json.loads(out)
    assert code == 0 and data["coeffs"] == [2, -4, 1] and data["values"][0]["P_n"] == 2


def test_transform_geronimus(capsys):
    code, out, _ = run(capsys, "transform", "geronimus", "--alpha", "3/2", "--n", "4", "--exact")
    data = json.loads(out)
    assert data["chi"][:5] == [0, 1, 2, 3, 4]
    assert data["c"] == ["3/2", "7/2", "11/2", "15/2"]


def test_quasi_restore_closed_form(capsys):
    code, out, _ = run(capsys, "quasi", "restore", "--alpha", "1", "--beta", "closed-form")
    data = json.loads(out)
    assert code == 0
    assert data["classification"] == "positive_definite"
    assert data["lambda_q"][2:5] == [2.0, 6.0, 12.0]


def test_quasi_restore_violation_exit_1(capsys):
    code, _, err = run(capsys, "quasi", "restore", "--alpha", "1", "--beta", "1", "--exact")
    assert code == 1 and "violated" in err


def test_quasi_residual_variants(capsys):
    code, out, _ = run(capsys, "quasi", "residual", "--alpha", "1", "--beta", "0.5", "--n", "3")
    assert code == 0 and json.loads(out)["pass"]
    code, _, _ = run(capsys, "quasi", "residual", "--alpha", "1", "--beta", "0.5", "--n", "3", "--variant", "printed")
    assert code == 1


def test_quasi_propagate_and_cf(capsys):
    code, out, _ = run(capsys, "quasi", "propagate", "--alpha", "1", "--beta", "seeds:1,2", "--n", "6", "--exact")
    assert json.loads(out)["shift"] == [1, 2, 3, 4, 5, 6]
    code, out, _ = run(capsys, "quasi", "cf", "--alpha", "1", "--n", "4", "--depth", "10,50", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "depth,value,abs_error" and len(lines) == 3


def test_uvarov_closed_form_is_usage_error(capsys):
    code, _, err = run(capsys, "quasi", "eval", "--flavor", "uvarov", "--alpha-shift", "closed-form")
    assert code == 2


@pytest.mark.parametrize("ident", sorted(RECOVERY_IDS))
def test_recover_all_ids(capsys, ident):
    code, out, _ = run(capsys, "recover", ident, "--alpha", "1.5", "--a", "-0.5", "--beta", "0.7",
                       "--alpha-shift", "0.4", "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["formula_variant"] == "derived"


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--alpha", "1", "--n", "5", "--beta", "-25")
    data = json.loads(out)
    assert data["zeros"][0] == pytest.approx(0.31192, abs=1.5e-4)


def test_reproduce_tables(capsys, tmp_path):
    out_path = tmp_path / "t.csv"
    code, _, _ = run(capsys, "reproduce", "table3", "--format", "csv", "--out", str(out_path))
    assert code == 0
    text = out_path.read_text(encoding="utf-8")
    assert text.startswith("table,series,n,zero_index,value,paper_value,abs_diff,pass")


def test_reproduce_all_end_to_end(capsys, tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    t0 = time.perf_counter()
    code = main(["reproduce", "all", "--format", "json", "--out", str(out1), "--figures", str(tmp_path / "fig")])
    elapsed = time.perf_counter() - t0
    assert code == 0 and elapsed < 10
    main(["reproduce", "all", "--format", "json", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text(encoding="utf-8"))
    assert data["pass"]
    assert len(list((tmp_path / "fig").iterdir())) == 4


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("alpha = 1\nn = 2\nx = 0\nexact = true\n", encoding="utf-8")
    code, out, _ = run(capsys, "ops", "eval", "--config", str(cfg))
    assert code == 0 and json.loads(out)["coeffs"] == [6, -6, 1]
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n", encoding="utf-8")
    code, _, err = run(capsys, "ops", "eval", "--config", str(bad))
    assert code == 2
