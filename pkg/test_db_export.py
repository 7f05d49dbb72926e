from datetime import datetime

import db_export

REPORT = {
    "mode": "cycle", "n": 20, "k": 4, "seed": 7, "ops": 500, "mismatches": 0,
    "started_at": "2024-05-01T12:30:00Z", "day": "2024-05-01", "first_mismatch": None,
    "accepted": 300, "rejected": 0, "inner_ops": 610, "wrapper_ops": 500,
    "elapsed_s": 1.5, "median_update_ns": 12000, "p99_update_ns": 90000,
}


class FakeCursor:
    def __init__(self, conn):
        self.conn = conn

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def execute(self, sql, params=None):
        if self.conn.fail:
            raise RuntimeError("boom")
        self.conn.executed.append((sql, params))


class FakeConn:
    def __init__(self, fail=False):
        self.fail = fail
        self.executed = []
        self.commits = 0
        self.rollbacks = 0

    def cursor(self):
        return FakeCursor(self)

    def commit(self):
        self.commits += 1

    def rollback(self):
        self.rollbacks += 1


def _use(monkeypatch, conn):
    monkeypatch.setattr(db_export, "_get_connection", lambda: conn)
    monkeypatch.setattr(db_export, "_release_connection", lambda c: None)


def test_disabled_without_url(monkeypatch):
    monkeypatch.setattr(db_export, "DATABASE_URL", "")
    monkeypatch.setattr(db_export, "_connection_pool", None)
    assert not db_export.is_enabled()
    assert db_export.export_run(REPORT) is False
    assert db_export.init_database() is False


def test_parse_stamp():
    assert db_export._parse_stamp("2024-05-01T12:30:00Z") == datetime(2024, 5, 1, 12, 30)
    assert isinstance(db_export._parse_stamp("yesterday"), datetime)
    assert isinstance(db_export._parse_stamp(None), datetime)


def test_export_run_inserts_one_row(monkeypatch):
    conn = FakeConn()
    _use(monkeypatch, conn)
    assert db_export.export_run(REPORT) is True
    assert conn.commits == 1
    sql, params = conn.executed[0]
    assert "INSERT INTO runs" in sql
    assert params[0] == datetime(2024, 5, 1, 12, 30)
    assert params[2:7] == ("cycle", 20, 4, 7, 500)
    assert len(params) == 16


def test_export_run_rolls_back_on_error(monkeypatch):
    conn = FakeConn(fail=True)
    _use(monkeypatch, conn)
    assert db_export.export_run(REPORT) is False
    assert conn.rollbacks == 1


def test_init_database_reads_schema(monkeypatch):
    conn = FakeConn()
    _use(monkeypatch, conn)
    assert db_export.init_database() is True
    assert "CREATE TABLE IF NOT EXISTS runs" in conn.executed[0][0]
