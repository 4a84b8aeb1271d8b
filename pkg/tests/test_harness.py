import json
from math import gcd
from pathlib import Path

import pytest

from lenssurgery import cli
from lenssurgery.harness import (
    RECORD_FIELDS,
    ClassificationRecord,
    classify,
    enumerate_classes,
    export,
    import_records,
    parse_filters,
    reproduce_table,
    verify_main_theorem,
)

GOLDEN = Path(__file__).parent / "golden"


def families(rec):
    return {(m["family"], m["parameter"]) for m in rec.matches}


def test_classify_22_5():
    rec = classify(22, 5)
    assert rec.k1 == 5 and rec.dual_class == [5, 9, 13, 17]
    assert rec.stable and rec.passes_alternating and not rec.passes_pos
    assert {("A1", 1), ("E2", -1)} <= families(rec)
    assert "A2-point" in rec.anomalies
    assert "poincare-only-pos-fail" in rec.anomalies


def test_classify_unknot_branch():
    rec = classify(13, 1)
    assert rec.relation is None and "unknot-branch" in rec.anomalies
    assert ("I", 0) in families(rec)


def test_classify_106_19():
    rec = classify(106, 87)
    assert rec.k1 == 19
    assert rec.decomposition["tau"] == 2 and rec.stable
    assert ("A1", -3) in families(rec)


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify(10, 4)
    with pytest.raises(ValueError):
        classify(1, 1)


def test_enumerate_small():
    got = [(r.p, r.k1) for r in enumerate_classes(10)]
    assert sorted(got) == sorted(
        [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (7, 1), (7, 2),
         (8, 1), (8, 3), (9, 1), (9, 2), (10, 1), (10, 3)]
    )
    assert got == sorted(got)


def test_enumerate_one_record_per_class():
    keys = [(r.p, r.k1) for r in enumerate_classes(80)]
    assert len(keys) == len(set(keys))
    for p, k in keys:
        assert min(classify(p, k).dual_class) == k


def test_filters_are_monotone():
    full = list(enumerate_classes(60))
    matched = list(enumerate_classes(60, ["matched"]))
    both = list(enumerate_classes(60, ["matched", "stable"]))
    assert {(r.p, r.k1) for r in both} <= {(r.p, r.k1) for r in matched} <= {(r.p, r.k1) for r in full}
    assert all(r.matches for r in matched)
    assert all(r.stable for r in both)
    with pytest.raises(ValueError):
        parse_filters("stable,bogus")


def test_record_invariants():
    for rec in enumerate_classes(150, ["stable", "alternating"]):
        if rec.passes_ky:
            assert rec.in_main_types, (rec.p, rec.k1)
        if rec.matches:
            assert gcd(rec.relation["a"], rec.relation["n"]) in (1, 2)


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_export_round_trip(fmt):
    recs = list(enumerate_classes(30))
    data = export(recs, fmt)
    back = import_records(data, fmt)
    assert back == sorted(recs, key=lambda r: (r.p, r.k1))
    assert export(back, fmt) == data


def test_export_rejects_unknown_format():
    with pytest.raises(ValueError):
        export([], "xml")


def test_jsonl_field_names():
    line = export([classify(22, 5)], "jsonl").decode().splitlines()[0]
    assert set(json.loads(line)) == set(RECORD_FIELDS)
    assert ClassificationRecord.from_dict(json.loads(line)) == classify(22, 5)


def test_csv_header_order():
    header = export([classify(7, 2)], "csv").decode().splitlines()[0]
    assert header.split(",") == list(RECORD_FIELDS)


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_golden_export(fmt):
    data = export(enumerate_classes(40), fmt)
    assert data == (GOLDEN / f"classes_p40.{fmt}").read_bytes()


def test_parallel_output_is_identical():
    serial = export(enumerate_classes(70, workers=1), "jsonl")
    parallel = export(enumerate_classes(70, workers=3), "jsonl")
    assert serial == parallel


def test_verify_small_ranges():
    assert verify_main_theorem(2).exceptions == []
    rep = verify_main_theorem(200)
    assert rep.holds and rep.exit_code == 0
    assert rep.hypothesis > 0 and sum(rep.type_counts.values()) >= rep.hypothesis
    with pytest.raises(ValueError):
        verify_main_theorem(1)


def test_verify_agrees_with_records():
    rep = verify_main_theorem(90)
    hyp = [
        r for r in enumerate_classes(90, ["stable", "alternating"])
        if r.passes_ky
    ]
    assert rep.hypothesis == len(hyp)


def test_table_reproduction_reports():
    assert reproduce_table("poincare", j_max=4).clean
    assert reproduce_table("berge", j_max=4, r_max=12).clean
    tau1 = reproduce_table("tau1")
    assert tau1.checked == 22 and len(tau1.diffs) == 2
    with pytest.raises(ValueError):
        reproduce_table("nope")


# ------------------------------------------------------------------ CLI


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "22", "5", "--json")
    assert code == 0
    assert json.loads(out)["k1"] == 5


def test_cli_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "106", "19")
    assert code == 0 and "A1(-3)" in out


def test_cli_usage_errors(capsys):
    assert run(capsys, "classify", "10", "4")[0] == 1
    assert run(capsys, "enumerate", "--pmax", "1")[0] == 1
    assert run(capsys, "enumerate", "--pmax", "5", "--filter", "x")[0] == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 1


def test_cli_enumerate_to_file(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code, _, _ = run(capsys, "enumerate", "--pmax", "40", "--format", "csv", "--out", str(out))
    assert code == 0
    assert out.read_bytes() == (GOLDEN / "classes_p40.csv").read_bytes()


def test_cli_verify(capsys):
    code, out, _ = run(capsys, "verify", "--pmax", "60")
    assert code == 0 and "theorem holds" in out
    code, out, _ = run(capsys, "verify", "--pmax", "60", "--json")
    assert json.loads(out)["holds"] is True


def test_cli_tables(capsys):
    code, out, _ = run(capsys, "tables", "--which", "poincare", "--jmax", "3")
    assert code == 0 and "0 differences" in out
    code, out, _ = run(capsys, "tables", "--which", "tau1")
    assert code == 2 and "I2" in out


def test_cli_grid(capsys):
    code, out, _ = run(capsys, "grid", "22", "5", "--imax", "10", "--jmin", "0", "--jmax", "2", "--csv")
    assert code == 0 and out.splitlines()[0] == "j," + ",".join(str(i) for i in range(11))
    code, out, _ = run(capsys, "grid", "22", "5", "--imax", "10", "--jmin", "0", "--jmax", "2")
    assert code == 0 and len(out.splitlines()) == 3
    assert run(capsys, "grid", "22", "5", "--imax", "3", "--jmin", "2", "--jmax", "0")[0] == 1
