from state import load_reports, save_report, save_reports, utc_day_key, utc_stamp


def test_utc_keys():
    assert utc_day_key(0) == "1970-01-01"
    assert utc_stamp(86400 + 61) == "1970-01-02T00:01:01Z"


def test_missing_file_loads_empty(tmp_path):
    assert load_reports(str(tmp_path / "runs.json")) == []


def test_corrupt_file_loads_empty(tmp_path):
    p = tmp_path / "runs.json"
    p.write_text("{not json", encoding="utf-8")
    assert load_reports(str(p)) == []
    p.write_text('{"mode": "path"}', encoding="utf-8")
    assert load_reports(str(p)) == []


def test_save_report_appends(tmp_path):
    p = str(tmp_path / "runs.json")
    save_report(p, {"mode": "path", "seed": 1})
    save_report(p, {"mode": "cycle", "seed": 2, "first_mismatch": "étape 3"})
    reports = load_reports(p)
    assert [r["mode"] for r in reports] == ["path", "cycle"]
    assert reports[1]["first_mismatch"] == "étape 3"
    assert not (tmp_path / "runs.json.tmp").exists()


def test_save_reports_overwrites(tmp_path):
    p = str(tmp_path / "runs.json")
    save_reports(p, [{"a": 1}, {"a": 2}])
    save_reports(p, [])
    assert load_reports(p) == []
