import json
import time
from pathlib import Path
from typing import Any, Dict, List


def utc_day_key(ts: float | None = None) -> str:
    if ts is None:
        ts = time.time()
    return time.strftime("%Y-%m-%d", time.gmtime(ts))


def utc_stamp(ts: float | None = None) -> str:
    if ts is None:
        ts = time.time()
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(ts))


def load_reports(path: str) -> List[Dict[str, Any]]:
    p = Path(path)
    if p.exists():
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
            if isinstance(data, list):
                return data
        except Exception:
            pass
    return []


def save_reports(path: str, reports: List[Dict[str, Any]]) -> None:
    p = Path(path)
    tmp = p.with_suffix(p.suffix + ".tmp")
    tmp.write_text(json.dumps(reports, ensure_ascii=False, separators=(",",":")), encoding="utf-8")
    tmp.replace(p)


def save_report(path: str, report: Dict[str, Any]) -> None:
    """Append one run report to the JSON list at path."""
    reports = load_reports(path)
    reports.append(report)
    save_reports(path, reports)
