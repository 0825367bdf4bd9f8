"""Discrete-event core: signals, drivers, processes, delta cycles.

One engine run is strictly single-threaded and deterministic: the event
queue orders by (time, delta, insertion sequence), processes activate in
construction order, and every queue insertion is reproducible, so two
runs over the same network yield byte-identical traces.

Both the netlist simulator and the VHDL elaborator compile down to this
process network; neither has its own event loop.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Optional

from .logic import X, Z, LogicValue, resolve_all

DEFAULT_MAX_DELTAS = 1000

_DRIVE = 0
_WAKE = 1


@dataclass(frozen=True)
class Probe:
    """A user-placed watch: net id (or instance pin) plus display label."""

    target: str
    label: str
    id: str = ""


@dataclass
class Trace:
    """Timestamped value-change record of the watched signals.

    Change lists strictly increase in time, consecutive entries differ
    in value, and every signal has its initial value at time 0.
    """

    signals: list[tuple[str, int]] = field(default_factory=list)
    changes: dict[str, list[tuple[int, LogicValue]]] = field(default_factory=dict)
    horizon_ns: int = 0

    def labels(self) -> list[str]:
        return [label for label, _ in self.signals]


def sample(trace: Trace, signal: str, t_ns: int) -> LogicValue:
    """Value of the most recent change at or before ``t_ns``."""
    if signal not in trace.changes:
        raise KeyError(f"no such signal in trace: {signal!r}")
    if not 0 <= t_ns <= trace.horizon_ns:
        raise ValueError(f"sample time {t_ns} outside [0, {trace.horizon_ns}]")
    entries = trace.changes[signal]
    i = bisect_right(entries, t_ns, key=lambda e: e[0])
    return entries[i - 1][1]


@dataclass
class SimLog:
    entries: list[tuple[str, int, str, str]] = field(default_factory=list)

    def warn(self, time_ns: int, code: str, message: str) -> None:
        self.entries.append(("WARN", time_ns, code, message))

    def error(self, time_ns: int, code: str, message: str) -> None:
        self.entries.append(("ERROR", time_ns, code, message))

    def info(self, time_ns: int, code: str, message: str) -> None:
        self.entries.append(("INFO", time_ns, code, message))

    @property
    def fault(self) -> Optional[str]:
        for level, _, code, _ in self.entries:
            if level == "ERROR":
                return code
        return None

    def to_text(self) -> str:
        return "".join(f"{lvl} {t} {code} {msg}\n" for lvl, t, code, msg in self.entries)


class Process:
    """One executable node of the network.

    ``sensitivity`` lists the signals whose changes activate it; every
    process is also activated once at time 0 so initial values settle.
    ``preload`` may inject absolute-time drive events (sources and
    external stimulus use this instead of reacting to anything).
    """

    name = "?"
    sensitivity: tuple[int, ...] = ()

    def preload(self) -> list[tuple[int, int, LogicValue]]:
        return []

    def activate(self, ctx: "Activation") -> None:
        raise NotImplementedError


class Network:
    def __init__(self):
        self.signal_names: list[str] = []
        self.signal_init: list[LogicValue] = []
        self.slot_signal: list[int] = []
        self.slot_init: list[LogicValue] = []
        self.signal_slots: list[list[int]] = []
        self.processes: list[Process] = []

    def add_signal(self, name: str, init: LogicValue = Z) -> int:
        self.signal_names.append(name)
        self.signal_init.append(init)
        self.signal_slots.append([])
        return len(self.signal_names) - 1

    def add_driver(self, signal: int, init: LogicValue = X) -> int:
        self.slot_signal.append(signal)
        self.slot_init.append(init)
        slot = len(self.slot_signal) - 1
        self.signal_slots[signal].append(slot)
        return slot

    def add_process(self, proc: Process) -> int:
        self.processes.append(proc)
        return len(self.processes) - 1


class Activation:
    """What a process sees while running: committed values, the changes
    that woke it, and scheduling primitives."""

    def __init__(self, run: "_Run", proc_idx: int):
        self._run = run
        self._proc = proc_idx
        self.changed: dict[int, tuple[LogicValue, LogicValue]] = {}
        self.now = 0

    def value(self, signal: int) -> LogicValue:
        return self._run.values[signal]

    def drive(self, slot: int, value: LogicValue, delay_ns: int) -> None:
        self._run.schedule_drive(slot, value, delay_ns)

    def wake_after(self, delay_ns: int) -> None:
        self._run.schedule_wake(self._proc, delay_ns)


class _Run:
    def __init__(self, net: Network, horizon_ns: int, max_deltas: int, log: SimLog):
        self.net = net
        self.horizon = horizon_ns
        self.max_deltas = max_deltas
        self.log = log
        self.values = []
        for sig, slots in enumerate(net.signal_slots):
            if slots:
                self.values.append(resolve_all(net.slot_init[s] for s in slots))
            else:
                self.values.append(net.signal_init[sig])
        self.slot_values = list(net.slot_init)
        self.last_scheduled = list(net.slot_init)
        self.heap: list = []
        self.seq = 0
        self.now = 0
        self.delta = 0
        self.trace: Optional[Trace] = None
        self.watch_labels: dict[int, list[str]] = {}
        self.warned_x: set[int] = set()
        self.warned_conflict: set[int] = set()

    def push(self, time_ns: int, delta: int, kind: int, a: int, b) -> None:
        heapq.heappush(self.heap, (time_ns, delta, self.seq, kind, a, b))
        self.seq += 1

    def slot_signal_of(self, slot: int) -> int:
        return self.net.slot_signal[slot]

    def schedule_drive(self, slot: int, value: LogicValue, delay_ns: int) -> None:
        if self.last_scheduled[slot] is value:
            return
        self.last_scheduled[slot] = value
        if delay_ns > 0:
            self.push(self.now + delay_ns, 0, _DRIVE, slot, value)
        else:
            self.push(self.now, self.delta + 1, _DRIVE, slot, value)

    def schedule_wake(self, proc: int, delay_ns: int) -> None:
        if delay_ns > 0:
            self.push(self.now + delay_ns, 0, _WAKE, proc, None)
        else:
            self.push(self.now, self.delta + 1, _WAKE, proc, None)

    def record(self, signal: int, time_ns: int, value: LogicValue) -> None:
        for label in self.watch_labels.get(signal, ()):
            entries = self.trace.changes[label]
            if entries and entries[-1][0] == time_ns:
                if len(entries) > 1 and entries[-2][1] is value:
                    entries.pop()
                else:
                    entries[-1] = (time_ns, value)
            elif not entries or entries[-1][1] is not value:
                entries.append((time_ns, value))
        if value is X and signal in self.watch_labels and signal not in self.warned_x:
            self.warned_x.add(signal)
            label = self.watch_labels[signal][0]
            self.log.warn(time_ns, "X_ON_WATCHED", f"signal {label} went to X")


def run_network(
    net: Network,
    horizon_ns: int,
    watch: list[tuple[str, int]],
    log: SimLog,
    max_deltas: int = DEFAULT_MAX_DELTAS,
) -> Trace:
    """Drive the network to the horizon and return the trace.

    An instant that needs more than ``max_deltas`` delta rounds is an
    oscillation: the run stops with an ERROR log entry and the trace
    collected so far.
    """
    run = _Run(net, horizon_ns, max_deltas, log)
    trace = Trace(signals=list(watch), horizon_ns=horizon_ns)
    for label, sig in watch:
        trace.changes[label] = [(0, run.values[sig])]
        run.watch_labels.setdefault(sig, []).append(label)
    run.trace = trace

    sensitive: dict[int, list[int]] = {}
    for idx, proc in enumerate(net.processes):
        for sig in proc.sensitivity:
            sensitive.setdefault(sig, []).append(idx)
        for time_ns, slot, value in proc.preload():
            if time_ns < horizon_ns:
                run.push(time_ns, 0, _DRIVE, slot, value)
                run.last_scheduled[slot] = value
        run.push(0, 0, _WAKE, idx, None)

    contexts = [Activation(run, idx) for idx in range(len(net.processes))]
    heap = run.heap
    while heap:
        time_ns, delta = heap[0][0], heap[0][1]
        # the simulated window is [0, horizon): an event at the horizon
        # instant has no observable duration and is dropped
        if time_ns >= horizon_ns:
            break
        if delta > max_deltas:
            busy = sorted(
                {net.signal_names[run.slot_signal_of(ev)] for ev in _pending_slots(heap, time_ns)}
            )
            log.error(
                time_ns,
                "OSCILLATION",
                f"instant {time_ns} ns exceeded {max_deltas} delta cycles; "
                f"unsettled nets: {', '.join(busy) or '?'}",
            )
            break
        run.now, run.delta = time_ns, delta
        dirty: dict[int, LogicValue] = {}
        wake: set[int] = set()
        while heap and heap[0][0] == time_ns and heap[0][1] == delta:
            _, _, _, kind, a, b = heapq.heappop(heap)
            if kind == _DRIVE:
                run.slot_values[a] = b
                dirty.setdefault(net.slot_signal[a], None)
            else:
                wake.add(a)
        changed: dict[int, tuple[LogicValue, LogicValue]] = {}
        for sig in dirty:
            slots = net.signal_slots[sig]
            new = resolve_all(run.slot_values[s] for s in slots)
            old = run.values[sig]
            if new is X and sig not in run.warned_conflict:
                driven = {run.slot_values[s] for s in slots}
                if LogicValue.ZERO in driven and LogicValue.ONE in driven:
                    run.warned_conflict.add(sig)
                    log.warn(
                        time_ns,
                        "DRIVER_CONFLICT",
                        f"net {net.signal_names[sig]} driven both high and low",
                    )
            if new is not old:
                run.values[sig] = new
                changed[sig] = (old, new)
                run.record(sig, time_ns, new)
        for sig in changed:
            wake.update(sensitive.get(sig, ()))
        for idx in sorted(wake):
            ctx = contexts[idx]
            ctx.changed = {
                sig: oldnew
                for sig, oldnew in changed.items()
                if sig in net.processes[idx].sensitivity or not net.processes[idx].sensitivity
            }
            ctx.now = time_ns
            net.processes[idx].activate(ctx)
    return trace


def _pending_slots(heap, time_ns):
    for entry in heap:
        if entry[0] == time_ns and entry[3] == _DRIVE:
            yield entry[4]
