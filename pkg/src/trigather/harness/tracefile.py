"""JSON-lines trace export and replay.

Line 1 is a header, then one object per round, then a footer::

    {"version": 1, "n": 3, "scheduler": "fsync", "seed": null, "initial": [[0, 0], ...]}
    {"round": 1, "active": [0, 1, 2], "moves": [{"id": 2, "from": [0, 4], "to": [0, 2]}],
     "metrics": {"e_l": 0, ...}, "epoch_boundary": true}
    {"outcome": "gathered", "rounds": 2, "epochs": 2}

``initial`` (robot positions by id) is what makes a file replayable on its
own.  ``moves`` lists only robots whose vertex changed.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Iterable

from trigather.engine.core import Trace
from trigather.swarm import occupancy_metrics

VERSION = 1

_dumps = json.JSONEncoder(separators=(",", ":")).encode


def round_line(index: int, active, moves, m, boundary: bool) -> str:
    """One round as compact JSON.

    Every field is an int, a list of ints or a bool, so the text is
    formatted directly; this is several times faster than encoding dicts,
    and the batch suites emit millions of these lines.
    """
    mv = ",".join(f'{{"id":{rid},"from":[{p[0]},{p[1]}],"to":[{q[0]},{q[1]}]}}' for rid, p, q in moves)
    return (
        f'{{"round":{index},"active":[{",".join(map(str, sorted(active)))}],"moves":[{mv}],'
        f'"metrics":{{"e_l":{m[0]},"e_r":{m[1]},"width_cols":{m[2]},"top_hrow":{m[3]},'
        f'"depth_l":{m[4]},"depth_r":{m[5]}}},"epoch_boundary":{"true" if boundary else "false"}}}'
    )


def trace_lines(trace: Trace) -> list[str]:
    header = {
        "version": VERSION,
        "n": trace.initial.n,
        "scheduler": trace.scheduler,
        "seed": trace.seed,
        "initial": [[c, h] for c, h in trace.initial.positions],
    }
    lines = [_dumps(header)]
    for rec in trace.records:
        lines.append(round_line(rec.index, rec.active, rec.moves, rec.metrics, rec.epoch_boundary))
    footer = {"outcome": trace.outcome.value, "rounds": trace.rounds, "epochs": trace.epochs}
    if trace.detail:
        footer["detail"] = trace.detail
    lines.append(_dumps(footer))
    return lines


def write_atomic(path: str, text: str) -> None:
    """Write to a temporary sibling, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_trace(trace: Trace, path: str) -> None:
    write_atomic(path, "\n".join(trace_lines(trace)) + "\n")


@dataclass
class ReplayReport:
    rounds: int = 0
    mismatches: list[str] = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def replay(lines: Iterable[str]) -> ReplayReport:
    """Apply each round's moves and compare recomputed metrics with the recorded ones."""
    it = iter(line for line in lines if line.strip())
    header = json.loads(next(it))
    positions = [tuple(p) for p in header["initial"]]
    report = ReplayReport()
    if len(positions) != header["n"]:
        report.mismatches.append(f"header n={header['n']} but {len(positions)} initial positions")
    for line in it:
        obj = json.loads(line)
        if "round" not in obj:
            report.footer = obj
            break
        report.rounds += 1
        for mv in obj["moves"]:
            rid = mv["id"]
            if list(positions[rid]) != mv["from"]:
                report.mismatches.append(f"round {obj['round']}: robot {rid} is at {positions[rid]}, not {mv['from']}")
            positions[rid] = tuple(mv["to"])
        got = occupancy_metrics(set(positions)).as_dict()
        if got != obj["metrics"]:
            report.mismatches.append(f"round {obj['round']}: metrics {got} != recorded {obj['metrics']}")
    if report.footer.get("rounds", report.rounds) != report.rounds:
        report.mismatches.append(f"footer claims {report.footer['rounds']} rounds, file has {report.rounds}")
    return report
