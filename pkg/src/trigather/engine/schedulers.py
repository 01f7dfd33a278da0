"""Activation schedulers.  Each yields one nonempty set of robot ids per round.

Fairness window ``W`` means no robot is ever idle for ``W`` consecutive
rounds, so ``W == 1`` is the fully synchronous scheduler.
"""
from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence


class Scheduler:
    seed: int | None = None

    def activations(self, n: int) -> Iterator[frozenset[int]]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class Fsync(Scheduler):
    def activations(self, n):
        everyone = frozenset(range(n))
        while True:
            yield everyone

    def describe(self):
        return "fsync"


class RoundRobin(Scheduler):
    """Activate ``batch`` consecutive ids per round, wrapping around."""

    def __init__(self, batch: int = 1):
        if batch < 1:
            raise ValueError("batch size must be >= 1")
        self.batch = batch

    def activations(self, n):
        k = min(self.batch, n)
        start = 0
        while True:
            yield frozenset((start + j) % n for j in range(k))
            start = (start + k) % n

    def describe(self):
        return f"rr:{self.batch}"


class RandomFair(Scheduler):
    """Each robot wakes with probability ``p``; nobody idles ``window`` rounds in a row.

    Only ``Random.random()`` is drawn from, since that is the one stream
    CPython promises to keep stable across versions for a given int seed.
    An all-idle draw activates one robot chosen by the same stream.
    """

    def __init__(self, seed: int, p: float = 0.5, window: int | None = None):
        if not 0.0 < p <= 1.0:
            raise ValueError("activation probability must lie in (0, 1]")
        if window is not None and window < 1:
            raise ValueError("fairness window must be >= 1")
        self.seed = seed
        self.p = p
        self.window = window

    def activations(self, n):
        rng = random.Random(self.seed)
        draw, p = rng.random, self.p
        window = self.window if self.window is not None else 2 * n
        # a robot last active in round r has been idle (now - r - 1) rounds
        last = [0] * n
        ids = range(n)
        now = 1
        while True:
            # one draw per robot every round, forced or not
            due = now - window
            active = [i for i in ids if draw() < p or last[i] <= due]
            if not active:
                active = [int(draw() * n)]
            for i in active:
                last[i] = now
            now += 1
            yield frozenset(active)

    def describe(self):
        w = "2n" if self.window is None else self.window
        return f"random:{self.seed}:{self.p}:{w}"


class Scripted(Scheduler):
    """Replays a fixed list of activation sets, cycling when it runs out."""

    def __init__(self, rounds: Iterable[Iterable[int]]):
        self.rounds = [frozenset(r) for r in rounds]
        if not self.rounds:
            raise ValueError("script has no rounds")
        for i, r in enumerate(self.rounds):
            if not r:
                raise ValueError(f"script round {i + 1} activates nobody")

    def activations(self, n):
        for i, r in enumerate(self.rounds):
            bad = [rid for rid in r if not 0 <= rid < n]
            if bad:
                raise ValueError(f"script round {i + 1} names unknown robots {sorted(bad)}")
        while True:
            yield from self.rounds

    def describe(self):
        return f"script:{len(self.rounds)}"


def parse_scheduler(text: str, script_rounds: Sequence[Iterable[int]] | None = None) -> Scheduler:
    """Parse ``fsync``, ``rr:k``, ``random:seed[:p[:W]]`` or ``script:PATH``."""
    kind, _, rest = text.partition(":")
    parts = rest.split(":") if rest else []
    if kind == "fsync" and not parts:
        return Fsync()
    if kind == "rr" and len(parts) == 1:
        return RoundRobin(int(parts[0]))
    if kind == "random" and 1 <= len(parts) <= 3:
        seed = int(parts[0])
        p = float(parts[1]) if len(parts) > 1 else 0.5
        window = int(parts[2]) if len(parts) > 2 else None
        return RandomFair(seed, p, window)
    if kind == "script" and parts:
        if script_rounds is None:
            script_rounds = read_script(rest)
        return Scripted(script_rounds)
    raise ValueError(f"unrecognised scheduler {text!r}")


def read_script(path: str) -> list[list[int]]:
    """One round per line: whitespace-separated robot ids; ``#`` comments."""
    rounds = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rounds.append([int(tok) for tok in line.replace(",", " ").split()])
    return rounds
