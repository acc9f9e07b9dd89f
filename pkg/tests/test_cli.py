import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from supermodular.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from supermodular.errors import ParseError, SchemaVersionMismatch
from supermodular.io import parse, serialize

ROOT = Path(__file__).resolve().parents[1]
CATEGORY_SCHEMA = json.loads((ROOT / "docs" / "category.schema.json").read_text())
REPORT_SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


@pytest.fixture(scope="module")
def catalog_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("catalog")
    assert main(["catalog", "emit", "--out", str(out)]) == EXIT_OK
    return out


def _run(capsys, argv):
    code = main(argv)
    text = capsys.readouterr().out
    return code, (json.loads(text) if text.strip() else None), text


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_catalog_emits_expected_files(catalog_dir):
    names = {p.stem for p in catalog_dir.glob("*.json")}
    assert len(names) >= 9
    assert {"sVec", "PSU2_2", "PSU2_6", "PSU2_10", "Ising_rules", "Z3", "Semion", "Fibonacci", "Ising",
            "PSU2_5"} <= names


def test_every_emitted_file_verifies(catalog_dir, capsys):
    for path in sorted(catalog_dir.glob("*.json")):
        code, report, _ = _run(capsys, ["verify", str(path)])
        assert code == EXIT_OK, path.name
        jsonschema.validate(report, REPORT_SCHEMA)


def test_emitted_files_match_schema_and_have_no_floats(catalog_dir):
    for path in catalog_dir.glob("*.json"):
        obj = json.loads(path.read_text())
        jsonschema.validate(obj, CATEGORY_SCHEMA)
        assert _no_floats(obj), path.name


def test_serialize_parse_identity(catalog_dir):
    for path in catalog_dir.glob("*.json"):
        text = path.read_text()
        assert serialize(parse(text)) == text


def test_golden_svec(catalog_dir):
    assert (catalog_dir / "sVec.json").read_text() == (ROOT / "tests" / "golden" / "svec.json").read_text()


def test_psu2_6_dimension_is_exact(catalog_dir):
    obj = json.loads((catalog_dir / "PSU2_6.json").read_text())
    d1 = obj["dimensions"][obj["labels"].index("X1")]
    assert d1["minpoly"] == [1, -2, -1]


def test_psu2_10_verify_reports_indicators(catalog_dir, capsys):
    code, report, _ = _run(capsys, ["verify", str(catalog_dir / "PSU2_10.json")])
    assert code == EXIT_OK and report["verdicts"]["ok"]
    assert report["verdicts"]["fs_indicators"] == {"1": 1, "X1": 1, "X2": 1}


def test_non_symmetric_s_fails_with_witness(catalog_dir, tmp_path, capsys):
    obj = json.loads((catalog_dir / "Ising.json").read_text())
    S = obj["stilde"]
    S[0][1] = S[2][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, report, _ = _run(capsys, ["verify", str(bad)])
    assert code == EXIT_FAIL
    assert report["certificates"]["S symmetric"]["witness"] == [0, 1]


def test_fusion_only_file_skips(catalog_dir, capsys):
    code, report, _ = _run(capsys, ["verify", str(catalog_dir / "PSU2_6_rules.json")])
    assert code == EXIT_OK
    skipped = [c for c in report["verdicts"]["checks"] if c["status"] == "skipped"]
    assert skipped and all(c["detail"].startswith("skipped: missing data") for c in skipped)


def test_parse_errors(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text('{"schema_version": 1, "name": "x", "rank": 1.0}')
    assert main(["verify", str(p)]) == EXIT_USAGE
    with pytest.raises(ParseError):
        parse('{"schema_version": 1, "rank": 1.5}')
    with pytest.raises(SchemaVersionMismatch):
        parse('{"schema_version": 99}')
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_USAGE
    capsys.readouterr()


def test_usage_errors(capsys):
    assert main(["classify", "--rank", "5"]) == EXIT_USAGE
    assert main(["classify", "--rank", "6", "--bound", "1"]) == EXIT_USAGE
    assert main(["spin-profiles", "--max-rank", "12"]) == EXIT_USAGE
    assert main(["no-such-command"]) == EXIT_USAGE
    capsys.readouterr()


def test_classify_rank2_and_4(capsys, tmp_path):
    code, report, _ = _run(capsys, ["classify", "--rank", "2"])
    assert code == EXIT_OK and report["verdicts"]["tally"]["non_split"] == 0
    code, report, _ = _run(capsys, ["classify", "--rank", "4", "--out", str(tmp_path)])
    assert code == EXIT_OK
    tally = report["verdicts"]["tally"]
    assert (tally["split"], tally["non_split"], tally["non_split_names"]) == (2, 1, ["PSU(2)_6"])
    emitted = list(tmp_path.glob("rank4_*.json"))
    assert len(emitted) == 3 and (tmp_path / "classify_rank4_report.json").exists()
    jsonschema.validate(report, REPORT_SCHEMA)


def _without_timing(text: str) -> dict:
    obj = json.loads(text)
    obj.pop("timing")
    return obj


def test_determinism_modulo_timing(capsys):
    _, _, a = _run(capsys, ["classify", "--rank", "4"])
    _, _, b = _run(capsys, ["classify", "--rank", "4"])
    assert _without_timing(a) == _without_timing(b)
    _, _, a = _run(capsys, ["spin-profiles", "--max-rank", "11"])
    _, _, b = _run(capsys, ["spin-profiles", "--max-rank", "11"])
    assert _without_timing(a) == _without_timing(b)


def test_spin_profiles_small(capsys):
    code, report, _ = _run(capsys, ["spin-profiles", "--max-rank", "5"])
    assert code == EXIT_OK
    assert "rank 5 excluded" in json.dumps(report)
    code, report, _ = _run(capsys, ["spin-profiles", "--max-rank", "2"])
    assert code == EXIT_OK


def test_quotient_command(catalog_dir, capsys):
    code, report, _ = _run(capsys, ["quotient", str(catalog_dir / "PSU2_10.json")])
    assert code == EXIT_OK
    jsonschema.validate(report, REPORT_SCHEMA)


def test_module_entry_point(catalog_dir):
    r = subprocess.run([sys.executable, "-m", "supermodular", "verify", str(catalog_dir / "sVec.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["verdicts"]["ok"]
