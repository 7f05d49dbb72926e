"""
Command-line driver for the dynamic treedepth structures.

    python main.py replay --mode path --k 3 --n 10 --script session.txt
    python main.py stress --mode cycle --k 4 --n 20 --ops 5000 --seed 7
    python main.py bench --mode path --k 4 --ops 2000 --csv bench.csv
    python main.py obstructions --d 2 --n 8

Modes: path (simple path on k vertices), cycle (simple cycle on >= k vertices),
td (elimination forest of treedepth <= k; queries print the current treedepth).
"""

import argparse
import csv
import logging
import random
import statistics
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from config import (
    BENCH_SIZES, DEFAULT_K, DEFAULT_N, DEFAULT_OPS, DEFAULT_SEED,
    LOG_LEVEL, REPORT_FILE, STATIC_VERTEX_CAP,
)
from cycle_detect import LongCycleDetector
from dynamic_td import Outcome, TdStructure
from elim_forest import is_recursively_optimal, treedepth, validate_elim_forest
from graph_core import Graph, GraphError, edge_key
from obstructions import core_bound_obstruction, enumerate_min_obstructions, format_edge_list
from oracle import (
    TREEDEPTH_CAP, biconnected_components_bf, connected_components_bf,
    has_k_path_bf, has_long_cycle_bf, treedepth_bf,
)
from postpone import LongPathDetector
from script_parser import Expect, ScriptError, Step, format_expect, format_script, parse_script
from state import save_report, utc_day_key, utc_stamp
import db_export
import telegram_alerts

MODES = ("path", "cycle", "td")
SHRINK_LIMIT = 300      # longest repro that is still shrunk step by step
TD_FULL_CHECK_N = 14    # td queries are checked every step up to this n, else every 10th


def setup_logger() -> logging.Logger:
    log = logging.getLogger("tdyn")
    log.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
    h = logging.StreamHandler(sys.stdout)
    fmt = logging.Formatter("%(asctime)s | %(levelname)s | %(message)s", "%H:%M:%S")
    h.setFormatter(fmt)
    log.handlers[:] = [h]
    return log


# ---------------------------------------------------------------------------
# Sessions: one structure under test plus the shadow graph the oracles read
# ---------------------------------------------------------------------------

class Session:
    mode = ""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.shadow = Graph(n)
        self.accepted = 0
        self.rejected = 0

    def add(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def delete(self, u: int, v: int) -> None:
        raise NotImplementedError

    def query(self) -> Expect:
        raise NotImplementedError

    def expected(self) -> Expect:
        raise NotImplementedError

    def audit(self) -> List[str]:
        return []

    def checks_query(self, step: int) -> bool:
        return True

    def counters(self) -> Dict[str, int]:
        return {"accepted": self.accepted, "rejected": self.rejected}


class PathSession(Session):
    mode = "path"

    def __init__(self, n: int, k: int):
        super().__init__(n, k)
        self.det = LongPathDetector(n, k)

    def add(self, u: int, v: int) -> bool:
        self.det.insert(u, v)
        self.shadow.add_edge(u, v)
        self.accepted += 1
        return True

    def delete(self, u: int, v: int) -> None:
        self.det.remove(u, v)
        self.shadow.remove_edge(u, v)

    def query(self) -> Expect:
        return self.det.contains()

    def expected(self) -> Expect:
        return has_k_path_bf(self.shadow, self.k)

    def audit(self) -> List[str]:
        problems = []
        if sorted(self.det.graph().edges()) != sorted(self.shadow.edges()):
            problems.append("maintained edge set differs from the shadow graph")
        if not self.det.wrapper.check_invariant():
            problems.append("queue front would be accepted by the inner structure")
        problems.extend(self.det.mugs.audit())
        return problems

    def counters(self) -> Dict[str, int]:
        out = super().counters()
        out.update(self.det.stats())
        return out


class CycleSession(Session):
    mode = "cycle"

    def __init__(self, n: int, k: int):
        super().__init__(n, k)
        self.det = LongCycleDetector(n, k)

    def add(self, u: int, v: int) -> bool:
        self.det.insert(u, v)
        self.shadow.add_edge(u, v)
        self.accepted += 1
        return True

    def delete(self, u: int, v: int) -> None:
        self.det.remove(u, v)
        self.shadow.remove_edge(u, v)

    def query(self) -> Expect:
        return self.det.contains()

    def expected(self) -> Expect:
        return has_long_cycle_bf(self.shadow, self.k)

    def audit(self) -> List[str]:
        problems = []
        inner = self.det.inner_graph()
        if has_long_cycle_bf(inner, self.k):
            problems.append(f"inner graph holds a cycle on >= {self.k} vertices")
        want = sorted(sorted(c) for c in biconnected_components_bf(inner))
        got = sorted(sorted(p) for p in self.det.partition())
        if want != got:
            problems.append(f"parts {got} differ from biconnected components {want}")
        forest = self.det.inner.forest
        comps = connected_components_bf(inner)
        for comp in comps:
            r = min(comp)
            if not all(forest.connected(r, x) for x in comp):
                problems.append(f"spanning forest splits component of {r}")
        if len(forest.edges()) != self.n - len(comps):
            problems.append(f"spanning forest has {len(forest.edges())} edges, expected {self.n - len(comps)}")
        if not all(inner.has_edge(a, b) for a, b in forest.edges()):
            problems.append("spanning forest uses an edge outside the inner graph")
        problems.extend(self.det.inner.partition_.audit())
        return problems

    def counters(self) -> Dict[str, int]:
        out = super().counters()
        out.update(self.det.stats())
        return out


def _exact_td(adj: Dict[int, set]) -> int:
    return treedepth_bf(adj) if len(adj) <= TREEDEPTH_CAP else treedepth(adj)


class TdSession(Session):
    """k is the treedepth bound; rejected insertions never reach the shadow graph."""
    mode = "td"

    def __init__(self, n: int, k: int):
        super().__init__(n, k)
        self.ts = TdStructure(n, k)
        self.refused: Optional[tuple] = None

    def add(self, u: int, v: int) -> bool:
        if self.shadow.has_edge(u, v):
            return True
        if self.ts.insert(u, v) is Outcome.ACCEPTED:
            self.shadow.add_edge(u, v)
            self.accepted += 1
            return True
        self.rejected += 1
        self.refused = edge_key(u, v)
        return False

    def delete(self, u: int, v: int) -> None:
        self.ts.remove(u, v)
        self.shadow.remove_edge(u, v)

    def query(self) -> Expect:
        return self.ts.height()

    def expected(self) -> Expect:
        if self.n <= TREEDEPTH_CAP:
            return treedepth_bf(self.shadow)
        return max(_exact_td(self.shadow.induced(c)) for c in connected_components_bf(self.shadow))

    def checks_query(self, step: int) -> bool:
        if self.n > STATIC_VERTEX_CAP:
            return False
        return self.n <= TD_FULL_CHECK_N or step % 10 == 0

    def audit(self) -> List[str]:
        problems = []
        exact = self.n <= STATIC_VERTEX_CAP
        if self.refused is not None:
            u, v = self.refused
            self.refused = None
            g = self.shadow.copy()
            g.add_edge(u, v)
            comp = next(c for c in connected_components_bf(g) if u in c)
            td = _exact_td(g.induced(comp)) if exact else None
            if td is not None and td <= self.k:
                problems.append(f"insert {u}-{v} refused although treedepth stays {td} <= {self.k}")
        if sorted(self.ts.edges()) != sorted(self.shadow.edges()):
            problems.append("structure edge set differs from the shadow graph")
        f = self.ts.export_forest()
        if not validate_elim_forest(self.shadow, f):
            problems.append("exported forest is not an elimination forest")
        elif exact and not is_recursively_optimal(self.shadow, f):
            problems.append("exported forest is not recursively optimal")
        problems.extend(self.ts.audit(self.shadow))
        return problems


def make_session(mode: str, n: int, k: int) -> Session:
    if mode == "path":
        return PathSession(n, k)
    if mode == "cycle":
        return CycleSession(n, k)
    if mode == "td":
        return TdSession(n, k)
    raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


def apply_step(session: Session, step: Step, log: logging.Logger) -> bool:
    """Run one add/del; False when a del names an absent edge."""
    if step.op == "add":
        if not session.add(step.u, step.v):
            log.info(f"line {step.line}: add {step.u} {step.v} refused")
        return True
    if not session.shadow.has_edge(step.u, step.v):
        log.warning(f"⚠️ line {step.line}: del {step.u} {step.v} names an absent edge, skipped")
        return False
    session.delete(step.u, step.v)
    return True


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------

def replay(mode: str, n: int, k: int, steps: Sequence[Step], log: logging.Logger,
           out=print) -> int:
    session = make_session(mode, n, k)
    failures = 0
    for step in steps:
        try:
            if step.op == "query":
                got = session.query()
                out(format_expect(got))
                if step.expect is not None and step.expect != got:
                    failures += 1
                    log.error(f"❌ line {step.line}: expected {format_expect(step.expect)}, got {format_expect(got)}")
            else:
                apply_step(session, step, log)
        except GraphError as e:
            raise ScriptError(step.line, str(e)) from e
    if failures:
        log.error(f"❌ {failures} expectation(s) failed")
        return 1
    return 0


def cmd_replay(args, log: logging.Logger) -> int:
    path = Path(args.script)
    if not path.exists():
        raise SystemExit(f"script not found: {path}")
    try:
        steps = parse_script(path.read_text(encoding="utf-8"))
        return replay(args.mode, args.n, args.k, steps, log)
    except ScriptError as e:
        log.error(f"❌ {path}: {e}")
        return 2


# ---------------------------------------------------------------------------
# stress
# ---------------------------------------------------------------------------

def _fails(mode: str, n: int, k: int, steps: Sequence[Step]) -> bool:
    quiet = logging.getLogger("tdyn.shrink")
    quiet.disabled = True
    try:
        session = make_session(mode, n, k)
        for step in steps:
            apply_step(session, step, quiet)
        return session.query() != session.expected() or bool(session.audit())
    except Exception:
        return True
    finally:
        quiet.disabled = False


def shrink_steps(mode: str, n: int, k: int, steps: List[Step]) -> List[Step]:
    """Greedy one-step-at-a-time deletion keeping the failure alive."""
    if len(steps) > SHRINK_LIMIT or not _fails(mode, n, k, steps):
        return steps
    i = 0
    while i < len(steps):
        trial = steps[:i] + steps[i + 1:]
        if _fails(mode, n, k, trial):
            steps = trial
        else:
            i += 1
    return steps


def write_repro(path: Path, mode: str, n: int, k: int, steps: List[Step], expect: Expect) -> None:
    body = format_script(steps + [Step(0, "query", expect=expect)])
    header = f"# repro: mode={mode} n={n} k={k}\n"
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(header + body, encoding="utf-8")
    tmp.replace(path)


def _percentile(samples: List[int], q: float) -> int:
    if not samples:
        return 0
    ordered = sorted(samples)
    return ordered[min(len(ordered) - 1, int(q * len(ordered)))]


def stress(mode: str, n: int, k: int, ops: int, seed: int,
           inject_mismatch_at: Optional[int] = None, repro_dir: str = ".",
           log: Optional[logging.Logger] = None) -> Dict[str, Any]:
    """Random edge toggles, every step checked against the oracles on the shadow graph."""
    log = log or logging.getLogger("tdyn.stress")
    if n < 2:
        raise ValueError(f"stress needs at least two vertices, got n={n}")
    rng = random.Random(seed)
    session = make_session(mode, n, k)
    started = time.time()
    steps: List[Step] = []
    timings: List[int] = []
    report: Dict[str, Any] = {
        "mode": mode, "n": n, "k": k, "seed": seed, "ops": 0, "mismatches": 0,
        "started_at": utc_stamp(started), "day": utc_day_key(started),
        "first_mismatch": None, "repro": None,
    }
    for i in range(1, ops + 1):
        u, v = rng.sample(range(n), 2)
        op = "del" if session.shadow.has_edge(u, v) else "add"
        step = Step(i, op, u, v)
        steps.append(step)
        t0 = time.perf_counter_ns()
        apply_step(session, step, log)
        timings.append(time.perf_counter_ns() - t0)
        report["ops"] = i

        problems = session.audit()
        want = session.expected() if session.checks_query(i) else None
        got = session.query()
        if want is not None and got != want:
            problems.append(f"query returned {format_expect(got)}, oracle says {format_expect(want)}")
        if inject_mismatch_at == i:
            problems.append("injected mismatch")
        if problems:
            report["mismatches"] = 1
            report["first_mismatch"] = f"step {i} ({op} {u} {v}): {problems[0]}"
            log.error(f"❌ {report['first_mismatch']}")
            repro = steps if inject_mismatch_at == i else shrink_steps(mode, n, k, list(steps))
            path = Path(repro_dir) / f"repro-{seed}.txt"
            write_repro(path, mode, n, k, repro, session.expected())
            report["repro"] = str(path)
            log.error(f"❌ reproduction written to {path} ({len(repro)} steps)")
            break
        if i % 1000 == 0:
            log.info(f"step {i}/{ops}: {len(session.shadow.edge_dict)} edges")

    report.update(session.counters())
    report["elapsed_s"] = round(time.time() - started, 3)
    report["median_update_ns"] = int(statistics.median(timings)) if timings else 0
    report["p99_update_ns"] = _percentile(timings, 0.99)
    return report


def cmd_stress(args, log: logging.Logger) -> int:
    db_ready = False
    if db_export.is_enabled():
        log.info("📊 Initializing database...")
        db_ready = db_export.init_database()
        if db_ready:
            log.info("✅ Database ready")
        else:
            log.warning("⚠️ Database initialization failed (continuing without DB export)")

    report = stress(args.mode, args.n, args.k, args.ops, args.seed, log=log)
    save_report(REPORT_FILE, report)
    if db_ready:
        db_export.export_run(report)
    if telegram_alerts.is_enabled():
        telegram_alerts.notify_run(report)
    glyph = "❌" if report["mismatches"] else "✅"
    log.info(f"{glyph} mode={report['mode']} n={report['n']} k={report['k']} seed={report['seed']}")
    print(f"ops={report['ops']} mismatches={report['mismatches']}")
    return 1 if report["mismatches"] else 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

BENCH_HEADER = ["n", "mode", "median_update_ns", "p99_update_ns"]


def bench_one(mode: str, n: int, k: int, ops: int, seed: int) -> Dict[str, Any]:
    """Half insertions of random pairs, half deletions of random present edges."""
    rng = random.Random(seed)
    session = make_session(mode, n, k)
    present: List[tuple] = []
    timings: List[int] = []
    for _ in range(ops):
        if present and rng.random() < 0.5:
            idx = rng.randrange(len(present))
            present[idx], present[-1] = present[-1], present[idx]
            u, v = present.pop()
            t0 = time.perf_counter_ns()
            session.delete(u, v)
        else:
            u, v = rng.sample(range(n), 2)
            if session.shadow.has_edge(u, v):
                continue
            t0 = time.perf_counter_ns()
            if session.add(u, v):
                present.append((u, v))
        timings.append(time.perf_counter_ns() - t0)
    return {
        "n": n,
        "mode": mode,
        "median_update_ns": int(statistics.median(timings)) if timings else 0,
        "p99_update_ns": _percentile(timings, 0.99),
    }


def bench(mode: str, sizes: Sequence[int], k: int, ops: int, seed: int,
          log: Optional[logging.Logger] = None) -> List[Dict[str, Any]]:
    log = log or logging.getLogger("tdyn.bench")
    rows = []
    for n in sizes:
        row = bench_one(mode, n, k, ops, seed)
        log.info(f"n={n}: median={row['median_update_ns']}ns p99={row['p99_update_ns']}ns")
        rows.append(row)
    return rows


def write_csv(path: Optional[str], rows: List[Dict[str, Any]]) -> None:
    if path:
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.DictWriter(f, fieldnames=BENCH_HEADER, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=BENCH_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def cmd_bench(args, log: logging.Logger) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()] if args.sizes else BENCH_SIZES
    rows = bench(args.mode, sizes, args.k, args.ops, args.seed, log=log)
    write_csv(args.csv, rows)
    medians = [r["median_update_ns"] for r in rows if r["median_update_ns"]]
    if len(medians) > 1:
        log.info(f"median spread across n: {max(medians) / min(medians):.2f}x")
    return 0


# ---------------------------------------------------------------------------
# obstructions
# ---------------------------------------------------------------------------

def cmd_obstructions(args, log: logging.Logger) -> int:
    graphs = enumerate_min_obstructions(args.d, args.n)
    for g in graphs:
        print(format_edge_list(g))
        print()
    log.info(f"✅ {len(graphs)} minimal obstruction(s) for treedepth {args.d} on <= {args.n} vertices"
             f" (vertex bound {core_bound_obstruction(args.d)})")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default="path")
    common.add_argument("--k", type=int, default=DEFAULT_K)
    common.add_argument("--n", type=int, default=DEFAULT_N)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("replay", parents=[common], help="run a script of add/del/query lines")
    p.add_argument("--script", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("stress", parents=[common], help="random toggles checked against oracles")
    p.add_argument("--ops", type=int, default=DEFAULT_OPS)
    p.set_defaults(func=cmd_stress)

    p = sub.add_parser("bench", parents=[common], help="update-time medians across graph sizes")
    p.add_argument("--ops", type=int, default=DEFAULT_OPS)
    p.add_argument("--sizes", type=str, default=None, help="comma-separated n values")
    p.add_argument("--csv", type=str, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("obstructions", help="enumerate minimal treedepth obstructions")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=8)
    p.set_defaults(func=cmd_obstructions)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    log = setup_logger()
    if getattr(args, "k", 1) < 1 or getattr(args, "n", 1) < 1:
        raise SystemExit("--k and --n must be positive")
    return args.func(args, log)


if __name__ == "__main__":
    sys.exit(main())
