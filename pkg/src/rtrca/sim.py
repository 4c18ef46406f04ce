"""Deterministic event-driven simulation under a 4-phase RTZ handshake.

Time is integer picoseconds.  Every net starts at 0 (the spacer state) and
C-elements power up holding 0.  When a gate input changes, the gate is
re-evaluated; if the result differs from the value its output currently has
(or is already scheduled to take), a transition is scheduled one gate delay
later.  A pending transition that a newer evaluation contradicts is
cancelled before it fires: inertial semantics, so sub-delay input pulses do
not propagate.  Simultaneous events are applied together before any gate is
re-evaluated, which keeps fork fanout isochronic and runs bit-for-bit
reproducible.

Each fired event records the event that triggered it (``cause``) and the
set of events whose values the new output rests on (``supports``): for a
rising sum-of-products output, the latest events on the literals of the
satisfied products; for a falling output, on the zero literals that keep
every product dead; for a C-element, on both inputs.  Orphan detection
walks this acknowledgement graph.

The handshake environment applies a dual-rail codeword to every input port
at once, waits for all output ports to decode valid (forward latency),
drives the inputs back to spacer, and waits for all outputs to reach
spacer (reverse latency).  Per-stage input skew is available separately
for relative-timing experiments.
"""

from __future__ import annotations

import re
import statistics
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Iterable, Iterator, Sequence

from .gates import DelayConfig, GateType
from .netlist import DecodeStatus, DualRailPort, Netlist, decode_outputs, encode_word


class StimulusError(ValueError):
    """Malformed stimulus: unknown net, non-input net, or clashing values."""


class DeadlockError(RuntimeError):
    """Outputs never completed; the netlist is deadlocked or broken."""


class SimulationLimitError(RuntimeError):
    """Event budget exhausted; the netlist is likely oscillating."""


@dataclass(frozen=True)
class Event:
    id: int
    time_ps: int
    net: str
    value: int
    cause: int | None          # triggering event, None for stimulus
    supports: tuple[int, ...]  # events this value rests on (includes cause)
    gate: str | None           # driving gate, None for stimulus

    @property
    def time_ns(self) -> float:
        return self.time_ps / 1000.0


class Trace:
    """Time-ordered record of one simulation run.

    Stores parallel arrays internally; :meth:`events` materialises
    :class:`Event` views.  ``marks`` holds the handshake phase markers
    (valid_start / valid_complete / rtz_start / rtz_complete, in ps) when
    the trace came from a handshake run; these are the environment's
    phase-advance (acknowledge) instants.
    """

    def __init__(self, netlist, times, nets, values, causes, supports, gates,
                 marks=None, cancellations=0):
        self.netlist: Netlist = netlist
        self._times: list[int] = times
        self._nets: list[str] = nets
        self._values: list[int] = values
        self._causes: list[int | None] = causes
        self._supports: list[tuple[int, ...] | None] = supports
        self._gates: list[str | None] = gates
        self.marks: dict[str, int] = dict(marks or {})
        self.cancellations = cancellations

    def __len__(self) -> int:
        return len(self._times)

    def event(self, i: int) -> Event:
        return Event(i, self._times[i], self._nets[i], self._values[i],
                     self._causes[i], self._supports[i] or (), self._gates[i])

    def events(self) -> Iterator[Event]:
        for i in range(len(self._times)):
            yield self.event(i)

    def events_for(self, net: str, t0: int | None = None, t1: int | None = None):
        out = []
        for i, n in enumerate(self._nets):
            if n != net:
                continue
            t = self._times[i]
            if (t0 is None or t >= t0) and (t1 is None or t <= t1):
                out.append(self.event(i))
        return out

    def transition_counts(self, t0: int, t1: int) -> dict[str, int]:
        counts: dict[str, int] = {}
        for i, t in enumerate(self._times):
            if t0 <= t <= t1:
                net = self._nets[i]
                counts[net] = counts.get(net, 0) + 1
        return counts

    def transition_counts_slice(self, i0: int, i1: int | None = None) -> dict[str, int]:
        """Per-net event counts over an event-index range."""
        counts: dict[str, int] = {}
        for net in self._nets[i0:i1]:
            counts[net] = counts.get(net, 0) + 1
        return counts

    @property
    def rtz_event_index(self) -> int | None:
        """Index of the first RTZ-phase event, when phase marks exist."""
        return self.marks.get("rtz_event_index")

    @property
    def has_supports(self) -> bool:
        return any(s is not None for s in self._supports)

    def support_children(self) -> list[list[int]]:
        """Reverse acknowledgement links: children[i] rest on event i."""
        children: list[list[int]] = [[] for _ in self._times]
        for i, sup in enumerate(self._supports):
            if not sup:
                continue
            for s in sup:
                children[s].append(i)
        return children

    def last_time(self) -> int:
        return self._times[-1] if self._times else 0


# -- engine ------------------------------------------------------------


class _Model:
    """Netlist compiled to index arrays, shareable across runs."""

    def __init__(self, netlist: Netlist, delays: DelayConfig):
        self.netlist = netlist
        self.delays = delays
        self.net_index = {name: i for i, name in enumerate(netlist.nets)}
        self.n_nets = len(netlist.nets)
        self.input_nets = frozenset(self.net_index[n] for n in netlist.input_rails)

        gates = netlist.gates
        self.n_gates = len(gates)
        self.gate_names = [g.name for g in gates]
        self.gate_out = [self.net_index[g.output] for g in gates]
        self.gate_delay = [
            g.delay_ps if g.delay_ps is not None else delays.delay_ps(g.type)
            for g in gates
        ]
        self.gate_is_ce = [g.type is GateType.CELEMENT2 for g in gates]
        self.gate_ins = [tuple(self.net_index[n] for n in g.inputs) for g in gates]
        # Products resolved to net indices for the hot loop.
        self.gate_products = [
            tuple(tuple(self.net_index[g.inputs[pin]] for pin in prod)
                  for prod in (g.type.products if g.type is not GateType.CELEMENT2 else ()))
            for g in gates
        ]
        self.consumers: list[tuple[int, ...]] = [()] * self.n_nets
        acc: list[list[int]] = [[] for _ in range(self.n_nets)]
        for gi, g in enumerate(gates):
            for net in dict.fromkeys(g.inputs):
                acc[self.net_index[net]].append(gi)
        self.consumers = [tuple(x) for x in acc]


class _Engine:
    """Mutable simulation state over a compiled model."""

    def __init__(self, source, delays: DelayConfig | None = None,
                 record_supports: bool = True, max_events: int = 2_000_000):
        if isinstance(source, _Model):
            self.model = source
        else:
            self.model = _Model(source, delays)
        self.netlist = self.model.netlist
        self.record_supports = record_supports
        self.max_events = max_events

        self.values = [0] * self.model.n_nets
        self.last_event: list[int | None] = [None] * self.model.n_nets
        self.pending: list[list | None] = [None] * self.model.n_gates
        self.heap: list[list] = []
        self.seq = 0
        self.cancellations = 0
        self._stimulated: dict[int, list[tuple[int, int]]] = {}

        self.ev_times: list[int] = []
        self.ev_nets: list[int] = []
        self.ev_values: list[int] = []
        self.ev_causes: list[int | None] = []
        self.ev_supports: list[tuple[int, ...] | None] = []
        self.ev_gates: list[int | None] = []

    def schedule(self, items: Iterable[tuple[int, str, int]]) -> None:
        """Queue stimulus as (time_ps, net name, value) entries."""
        model = self.model
        for t, name, value in items:
            if name not in model.net_index:
                raise StimulusError(f"unknown net {name!r}")
            ni = model.net_index[name]
            if ni not in model.input_nets:
                raise StimulusError(f"net {name!r} is not a primary input")
            if value not in (0, 1):
                raise StimulusError(f"net {name!r}: value must be 0/1")
            if t < 0:
                raise StimulusError(f"net {name!r}: negative time {t}")
            history = self._stimulated.setdefault(ni, [])
            for t0, v0 in history:
                if t0 == t and v0 != value:
                    raise StimulusError(
                        f"net {name!r}: conflicting stimulus values at {t} ps"
                    )
            history.append((t, value))
            heappush(self.heap, [t, self.seq, ni, value, None, (), None, True])
            self.seq += 1

    def value_of(self, name: str) -> int:
        return self.values[self.model.net_index[name]]

    def last_time(self) -> int:
        return self.ev_times[-1] if self.ev_times else 0

    def _supports_for(self, gi: int, new: int) -> tuple[int, ...]:
        last = self.last_event
        values = self.values
        model = self.model
        if model.gate_is_ce[gi]:
            pins = model.gate_ins[gi]
        else:
            acc: set[int] = set()
            if new:
                for prod in model.gate_products[gi]:
                    if all(values[n] for n in prod):
                        acc.update(prod)
            else:
                for prod in model.gate_products[gi]:
                    acc.update(n for n in prod if not values[n])
            pins = acc
        ids = {last[n] for n in pins if last[n] is not None}
        return tuple(sorted(ids))

    def run(self) -> int:
        """Drain the event queue; returns the time of the last fired event."""
        heap = self.heap
        values = self.values
        pending = self.pending
        last_event = self.last_event
        model = self.model
        consumers = model.consumers
        products = model.gate_products
        is_ce = model.gate_is_ce
        ce_ins = model.gate_ins
        out_net = model.gate_out
        delay = model.gate_delay
        record = self.record_supports
        ev_times = self.ev_times
        ev_nets = self.ev_nets
        ev_values = self.ev_values
        ev_causes = self.ev_causes
        ev_supports = self.ev_supports
        ev_gates = self.ev_gates

        last_fired = ev_times[-1] if ev_times else 0
        while heap:
            t = heap[0][0]
            batch = []
            while heap and heap[0][0] == t:
                tok = heappop(heap)
                if tok[7]:
                    batch.append(tok)
            if not batch:
                continue
            affected: dict[int, int] = {}
            for tok in batch:
                ni = tok[2]
                value = tok[3]
                gi = tok[6]
                if gi is not None:
                    pending[gi] = None
                if values[ni] == value:
                    continue
                values[ni] = value
                eid = len(ev_times)
                ev_times.append(t)
                ev_nets.append(ni)
                ev_values.append(value)
                ev_causes.append(tok[4])
                ev_supports.append(tok[5] if record else None)
                ev_gates.append(gi)
                last_event[ni] = eid
                last_fired = t
                for cg in consumers[ni]:
                    if cg not in affected:
                        affected[cg] = eid
            if len(ev_times) > self.max_events:
                raise SimulationLimitError(
                    f"more than {self.max_events} events; oscillating netlist?"
                )
            for gi in sorted(affected):
                if is_ce[gi]:
                    i0, i1 = ce_ins[gi]
                    a = values[i0]
                    b = values[i1]
                    if a and b:
                        new = 1
                    elif not a and not b:
                        new = 0
                    else:
                        tok = pending[gi]
                        new = tok[3] if tok is not None else values[out_net[gi]]
                else:
                    new = 0
                    for prod in products[gi]:
                        hit = True
                        for n in prod:
                            if not values[n]:
                                hit = False
                                break
                        if hit:
                            new = 1
                            break
                tok = pending[gi]
                target = tok[3] if tok is not None else values[out_net[gi]]
                if new == target:
                    continue
                if tok is not None:
                    tok[7] = False
                    pending[gi] = None
                    self.cancellations += 1
                if new != values[out_net[gi]]:
                    supports = self._supports_for(gi, new) if record else ()
                    ntok = [t + delay[gi], self.seq, out_net[gi], new,
                            affected[gi], supports, gi, True]
                    self.seq += 1
                    pending[gi] = ntok
                    heappush(heap, ntok)
        return last_fired

    def trace(self, marks=None) -> Trace:
        names = self.netlist.nets
        gate_names = self.model.gate_names
        return Trace(
            self.netlist,
            list(self.ev_times),
            [names[i] for i in self.ev_nets],
            list(self.ev_values),
            list(self.ev_causes),
            list(self.ev_supports),
            [None if g is None else gate_names[g] for g in self.ev_gates],
            marks=marks,
            cancellations=self.cancellations,
        )


def simulate(netlist: Netlist, delays: DelayConfig,
             stimulus: Iterable[tuple[float, str, int]],
             record_supports: bool = True) -> Trace:
    """Run a stimulus schedule to quiescence.

    Stimulus entries are (time_ns, input net, value); times are rounded
    to whole picoseconds.  All nets start at 0.
    """
    eng = _Engine(netlist, delays, record_supports=record_supports)
    eng.schedule((round(t * 1000), net, v) for t, net, v in stimulus)
    eng.run()
    return eng.trace()


# -- handshake environment ---------------------------------------------


@dataclass(frozen=True)
class CycleReport:
    """Measurements for one valid/spacer handshake cycle."""

    a: int
    b: int
    cin: int
    width: int
    sum_value: int
    cout: int
    forward_ps: int
    reverse_ps: int
    port_valid_ps: dict[str, int] = field(default_factory=dict)
    port_spacer_ps: dict[str, int] = field(default_factory=dict)

    @property
    def cycle_ps(self) -> int:
        return self.forward_ps + self.reverse_ps

    @property
    def forward_ns(self) -> float:
        return self.forward_ps / 1000.0

    @property
    def reverse_ns(self) -> float:
        return self.reverse_ps / 1000.0

    @property
    def cycle_ns(self) -> float:
        return self.cycle_ps / 1000.0


@dataclass(frozen=True)
class AdderIo:
    a_ports: tuple[DualRailPort, ...]
    b_ports: tuple[DualRailPort, ...]
    cin: DualRailPort
    sum_ports: tuple[DualRailPort, ...]
    cout: DualRailPort

    @property
    def width(self) -> int:
        return len(self.a_ports)


_BIT_RE = re.compile(r"^([A-Z]+)(\d+)?$")


def adder_io(netlist: Netlist) -> AdderIo:
    """Group an adder netlist's ports into operand buses and carry ports."""
    def bus(ports: Sequence[DualRailPort], prefix: str) -> tuple[DualRailPort, ...]:
        found = {}
        for p in ports:
            m = _BIT_RE.match(p.name)
            if m and m.group(1) == prefix:
                found[int(m.group(2) or 0)] = p
        if sorted(found) != list(range(len(found))):
            raise ValueError(f"non-contiguous {prefix} bus: {sorted(found)}")
        return tuple(found[i] for i in range(len(found)))

    a = bus(netlist.input_ports, "A")
    b = bus(netlist.input_ports, "B")
    s = bus(netlist.output_ports, "SUM")
    cin = netlist.input_port("CIN")
    cout = netlist.output_port("COUT")
    if not a or len(a) != len(b) or len(a) != len(s):
        raise ValueError("A/B/SUM buses must be present with equal widths")
    return AdderIo(a, b, cin, s, cout)


def _valid_stimulus(io: AdderIo, a: int, b: int, cin: int, t_ps: int):
    """Rails to raise for the codewords of (a, b, cin).  Low rails stay 0."""
    items: list[tuple[int, str, int]] = []
    for value, ports in ((a, io.a_ports), (b, io.b_ports)):
        for bit, (r1, r0) in enumerate(encode_word(value, io.width)):
            port = ports[bit]
            items.append((t_ps, port.rail1 if r1 else port.rail0, 1))
    items.append((t_ps, io.cin.rail1 if cin else io.cin.rail0, 1))
    return items


def _scan_completion(engine: _Engine, start_idx: int,
                     ports: Sequence[DualRailPort],
                     initial: dict[str, int], want: DecodeStatus):
    """One pass over events from start_idx tracking port decode status.

    Returns (first time every port satisfies ``want``, per-port first
    satisfaction times).  Either may be None when never reached.
    """
    model = engine.model
    nport = len(ports)
    owner: dict[int, int] = {}
    r1_idx = [0] * nport
    r0_idx = [0] * nport
    vals: dict[int, int] = {}
    for pi, p in enumerate(ports):
        i1 = model.net_index[p.rail1]
        i0 = model.net_index[p.rail0]
        owner[i1] = pi
        owner[i0] = pi
        r1_idx[pi] = i1
        r0_idx[pi] = i0
        vals[i1] = initial[p.rail1]
        vals[i0] = initial[p.rail0]

    if want is DecodeStatus.VALID:
        def ok(pi: int) -> bool:
            return vals[r1_idx[pi]] + vals[r0_idx[pi]] == 1
    else:
        def ok(pi: int) -> bool:
            return not vals[r1_idx[pi]] and not vals[r0_idx[pi]]

    status = [ok(pi) for pi in range(nport)]
    satisfied = sum(status)
    port_time: list[int | None] = [0 if s else None for s in status]
    global_time = 0 if satisfied == nport else None

    ev_times = engine.ev_times
    ev_nets = engine.ev_nets
    ev_values = engine.ev_values
    n = len(ev_times)
    i = start_idx
    while i < n:
        t = ev_times[i]
        touched: set[int] = set()
        while i < n and ev_times[i] == t:
            ni = ev_nets[i]
            pi = owner.get(ni)
            if pi is not None:
                vals[ni] = ev_values[i]
                touched.add(pi)
            i += 1
        for pi in touched:
            new = ok(pi)
            if new != status[pi]:
                status[pi] = new
                satisfied += 1 if new else -1
                if new and port_time[pi] is None:
                    port_time[pi] = t
        if satisfied == nport and global_time is None:
            global_time = t
    return global_time, port_time


def _decode_bus(engine: _Engine, ports: Sequence[DualRailPort]) -> int:
    pairs = [(engine.value_of(p.rail1), engine.value_of(p.rail0)) for p in ports]
    result = decode_outputs(pairs)
    if not result.is_valid:
        raise DeadlockError(f"bus not valid at decode time: {pairs}")
    return result.value


def _run_cycle(model: _Model, io: AdderIo, a: int, b: int, cin: int,
               record_supports: bool):
    """Shared handshake cycle driver; returns (engine, report, marks)."""
    n = io.width
    out_ports = list(io.sum_ports) + [io.cout]
    eng = _Engine(model, record_supports=record_supports)
    eng.schedule(_valid_stimulus(io, a, b, cin, 0))
    eng.run()
    zero = {r: 0 for p in out_ports for r in p.rails}
    valid_complete, port_valid = _scan_completion(eng, 0, out_ports, zero,
                                                  DecodeStatus.VALID)
    if valid_complete is None:
        raise DeadlockError(
            f"outputs never became valid for a={a:#x} b={b:#x} cin={cin}"
        )
    sum_value = _decode_bus(eng, io.sum_ports)
    cout_value = _decode_bus(eng, [io.cout])

    snapshot = {r: eng.value_of(r) for p in out_ports for r in p.rails}
    rtz_start = eng.last_time()
    rtz_idx = len(eng.ev_times)
    withdraw = [(rtz_start, name, 0) for name in sorted(model.netlist.input_rails)
                if eng.value_of(name)]
    eng.schedule(withdraw)
    eng.run()
    rtz_complete, port_spacer = _scan_completion(eng, rtz_idx, out_ports, snapshot,
                                                 DecodeStatus.SPACER)
    if rtz_complete is None:
        raise DeadlockError(
            f"outputs never returned to spacer for a={a:#x} b={b:#x} cin={cin}"
        )
    report = CycleReport(
        a=a, b=b, cin=cin, width=n,
        sum_value=sum_value, cout=cout_value,
        forward_ps=valid_complete,
        reverse_ps=rtz_complete - rtz_start,
        port_valid_ps={p.name: t for p, t in zip(out_ports, port_valid)},
        port_spacer_ps={p.name: (t - rtz_start if t is not None else None)
                        for p, t in zip(out_ports, port_spacer)},
    )
    marks = {
        "valid_start": 0,
        "valid_complete": valid_complete,
        "rtz_start": rtz_start,
        "rtz_complete": rtz_complete,
        "rtz_event_index": rtz_idx,
    }
    return eng, report, marks


def run_handshake_cycle(netlist: Netlist, delays: DelayConfig, a: int, b: int,
                        cin: int, record_supports: bool = True) -> tuple[CycleReport, Trace]:
    """Apply one codeword, wait for validity, return to zero, wait for spacer.

    All input rails switch together in each phase.  Raises DeadlockError
    if either phase fails to complete after the netlist quiesces.
    """
    io = adder_io(netlist)
    if not 0 <= a < (1 << io.width) or not 0 <= b < (1 << io.width) or cin not in (0, 1):
        raise ValueError("operands out of range for adder width")
    model = _Model(netlist, delays)
    eng, report, marks = _run_cycle(model, io, a, b, cin, record_supports)
    return report, eng.trace(marks)


def run_skewed_rtz(netlist: Netlist, delays: DelayConfig, a: int, b: int, cin: int,
                   stage_skews_ns: Sequence[float], hold_cin: bool = True) -> Trace:
    """Handshake cycle whose RTZ phase withdraws operand rails per stage.

    Stage k's A/B rails return to zero ``stage_skews_ns[k]`` after the RTZ
    phase begins.  With ``hold_cin`` the primary carry-in rails stay high
    for the whole measured phase, modelling a late-returning input; the
    outputs still reach spacer because every stage resets from its own
    operands.  Returns the trace with all four phase marks set.
    """
    io = adder_io(netlist)
    n = io.width
    if len(stage_skews_ns) != n:
        raise ValueError("need one skew per stage")
    out_ports = list(io.sum_ports) + [io.cout]

    eng = _Engine(netlist, delays)
    eng.schedule(_valid_stimulus(io, a, b, cin, 0))
    eng.run()
    zero = {r: 0 for p in out_ports for r in p.rails}
    valid_complete, _ = _scan_completion(eng, 0, out_ports, zero, DecodeStatus.VALID)
    if valid_complete is None:
        raise DeadlockError("valid phase never completed")

    snapshot = {r: eng.value_of(r) for p in out_ports for r in p.rails}
    rtz_start = eng.last_time()
    rtz_idx = len(eng.ev_times)
    withdraw: list[tuple[int, str, int]] = []
    for k in range(n):
        t = rtz_start + round(stage_skews_ns[k] * 1000)
        for port in (io.a_ports[k], io.b_ports[k]):
            for rail in port.rails:
                if eng.value_of(rail):
                    withdraw.append((t, rail, 0))
    if not hold_cin:
        t = rtz_start + round(stage_skews_ns[0] * 1000)
        for rail in io.cin.rails:
            if eng.value_of(rail):
                withdraw.append((t, rail, 0))
    eng.schedule(withdraw)
    eng.run()
    rtz_complete, _ = _scan_completion(eng, rtz_idx, out_ports, snapshot,
                                       DecodeStatus.SPACER)
    if rtz_complete is None:
        raise DeadlockError("RTZ phase never completed")
    marks = {
        "valid_start": 0,
        "valid_complete": valid_complete,
        "rtz_start": rtz_start,
        "rtz_complete": rtz_complete,
        "rtz_event_index": rtz_idx,
    }
    return eng.trace(marks)


# -- vector batches ----------------------------------------------------


@dataclass(frozen=True)
class VectorResult:
    index: int
    a: int
    b: int
    cin: int
    sum_value: int
    cout: int
    correct: bool
    forward_ps: int
    reverse_ps: int
    max_transitions_valid: int
    max_transitions_rtz: int

    @property
    def cycle_ps(self) -> int:
        return self.forward_ps + self.reverse_ps


@dataclass
class BatchReport:
    source: str
    width: int
    results: list[VectorResult]

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.correct)

    @property
    def all_correct(self) -> bool:
        return self.passed == self.total

    @property
    def forward_min_ps(self) -> int:
        return min(r.forward_ps for r in self.results)

    @property
    def forward_max_ps(self) -> int:
        return max(r.forward_ps for r in self.results)

    @property
    def forward_mean_ps(self) -> float:
        return statistics.fmean(r.forward_ps for r in self.results)

    @property
    def max_transitions_per_phase(self) -> int:
        return max(
            max(r.max_transitions_valid, r.max_transitions_rtz)
            for r in self.results
        )

    def to_csv(self, fh) -> None:
        fh.write(f"# source={self.source}\n")
        fh.write("vector,correct,forward_ns,reverse_ns,cycle_ns\n")
        for r in self.results:
            fh.write(
                f"{r.a:x} {r.b:x} {r.cin:x},{int(r.correct)},"
                f"{r.forward_ps / 1000:.3f},{r.reverse_ps / 1000:.3f},"
                f"{r.cycle_ps / 1000:.3f}\n"
            )

    def summary(self) -> str:
        return (
            f"{self.passed}/{self.total} vectors correct; forward latency "
            f"min/mean/max = {self.forward_min_ps / 1000:.3f}/"
            f"{self.forward_mean_ps / 1000:.3f}/{self.forward_max_ps / 1000:.3f} ns"
        )


def exhaustive_vectors(width: int) -> Iterator[tuple[int, int, int]]:
    for a in range(1 << width):
        for b in range(1 << width):
            for cin in (0, 1):
                yield (a, b, cin)


def random_vectors(width: int, count: int, seed: int) -> Iterator[tuple[int, int, int]]:
    import random

    rng = random.Random(seed)
    for _ in range(count):
        yield (rng.getrandbits(width), rng.getrandbits(width), rng.getrandbits(1))


def parse_vector_file(path) -> list[tuple[int, int, int]]:
    """Read ``a b cin`` hex triples, one per line.  # comments allowed."""
    vectors = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'a b cin', got {raw.rstrip()!r}")
            try:
                a, b, cin = (int(p, 16) for p in parts)
            except ValueError:
                raise ValueError(f"line {lineno}: bad hex in {raw.rstrip()!r}") from None
            if cin not in (0, 1):
                raise ValueError(f"line {lineno}: cin must be 0 or 1")
            vectors.append((a, b, cin))
    return vectors


def _max_count(seq) -> int:
    counts: dict[int, int] = {}
    worst = 0
    for x in seq:
        c = counts.get(x, 0) + 1
        counts[x] = c
        if c > worst:
            worst = c
    return worst


def run_vectors(netlist: Netlist, delays: DelayConfig,
                vectors: Iterable[tuple[int, int, int]],
                source: str = "vectors") -> BatchReport:
    """Run one handshake cycle per vector against the addition oracle.

    Consecutive cycles are independent full valid/spacer transactions.
    Also records, per cycle, the largest number of transitions any single
    net made within a phase (1 everywhere means hazard-free monotonic
    operation).  A deadlocked cycle aborts the batch, naming the vector.
    """
    io = adder_io(netlist)
    n = io.width
    mask = (1 << n) - 1
    model = _Model(netlist, delays)
    results: list[VectorResult] = []
    for idx, (a, b, cin) in enumerate(vectors):
        try:
            eng, report, marks = _run_cycle(model, io, a, b, cin,
                                            record_supports=False)
        except DeadlockError as exc:
            raise DeadlockError(
                f"vector {idx} (a={a:#x} b={b:#x} cin={cin}): {exc}"
            ) from exc
        total = a + b + cin
        correct = report.sum_value == (total & mask) and report.cout == (total >> n)
        rtz_idx = marks["rtz_event_index"]
        results.append(VectorResult(
            index=idx, a=a, b=b, cin=cin,
            sum_value=report.sum_value, cout=report.cout, correct=correct,
            forward_ps=report.forward_ps, reverse_ps=report.reverse_ps,
            max_transitions_valid=_max_count(eng.ev_nets[:rtz_idx]),
            max_transitions_rtz=_max_count(eng.ev_nets[rtz_idx:]),
        ))
    return BatchReport(source=source, width=n, results=results)
