"""Static and dynamic verification for dual-rail adder netlists.

Covers the reset-path timing analysis behind the relative-timing
assumption, a dynamic check of the assumed carry-before-sum reset order,
orphan (unacknowledged transition) detection on traces, indication
classification of single full adders, pairwise orthogonality of product
covers over the valid codeword space, and structural critical paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .adders import AdderKind, RcaDescriptor
from .gates import DelayConfig, GateType
from .netlist import NetKind, Netlist, decode_outputs
from .sim import Trace, _Engine, run_skewed_rtz


class StructureError(ValueError):
    """The netlist does not have the stage structure the check expects."""


# -- static reset-path slack -------------------------------------------


@dataclass(frozen=True)
class SlackReport:
    direct_ps: int
    indirect_ps: int
    direct_path: tuple[str, ...]
    indirect_path: tuple[str, ...]

    @property
    def slack_ps(self) -> int:
        return self.direct_ps - self.indirect_ps

    @property
    def direct_ns(self) -> float:
        return self.direct_ps / 1000.0

    @property
    def indirect_ns(self) -> float:
        return self.indirect_ps / 1000.0

    @property
    def slack_ns(self) -> float:
        return self.slack_ps / 1000.0


_STAGE_RE = re.compile(r"^fa(\d+)_")


def _gate_delay(netlist: Netlist, delays: DelayConfig, name: str) -> int:
    gate = netlist.gate(name)
    return gate.delay_ps if gate.delay_ps is not None else delays.delay_ps(gate.type)


def static_rt_slack(netlist: Netlist, delays: DelayConfig) -> SlackReport:
    """Worst direct vs indirect sum reset paths of an early-output cascade.

    The direct path resets a stage's sum from its own operand rails:
    operand gate, sum product gate, C-element.  The indirect path resets
    the next stage's sum through the carry: operand gate and carry gate of
    stage k, then sum product gate and C-element of stage k+1.  The slack
    (direct minus indirect) is the margin by which the carry reset must be
    assumed to beat the sum reset; it is negative by exactly one carry
    gate delay.
    """
    stages = sorted(
        {int(m.group(1)) for g in netlist.gates for m in [_STAGE_RE.match(g.name)] if m}
    )
    if len(stages) < 2 or stages != list(range(len(stages))):
        raise StructureError("expected a multi-stage early-output cascade")
    for k in stages:
        for tail in ("CG1", "CG2", "CG3", "CG4", "CG5", "CG6", "CE1", "CE2"):
            if not netlist.has_gate(f"fa{k}_{tail}"):
                raise StructureError(f"stage {k} lacks gate {tail}")

    def best(names: Iterable[str]) -> tuple[int, str]:
        scored = sorted(((_gate_delay(netlist, delays, n), n) for n in names),
                        reverse=True)
        return scored[0]

    direct_best = (-1, ())
    for k in stages:
        d_net, g_net = best((f"fa{k}_CG1", f"fa{k}_CG2"))
        d_sum, g_sum = best((f"fa{k}_CG3", f"fa{k}_CG4"))
        d_ce, g_ce = best((f"fa{k}_CE1", f"fa{k}_CE2"))
        total = d_net + d_sum + d_ce
        if total > direct_best[0]:
            direct_best = (total, (g_net, g_sum, g_ce))

    indirect_best = (-1, ())
    for k in stages[:-1]:
        d_net, g_net = best((f"fa{k}_CG1", f"fa{k}_CG2"))
        d_carry, g_carry = best((f"fa{k}_CG5", f"fa{k}_CG6"))
        d_sum, g_sum = best((f"fa{k + 1}_CG3", f"fa{k + 1}_CG4"))
        d_ce, g_ce = best((f"fa{k + 1}_CE1", f"fa{k + 1}_CE2"))
        total = d_net + d_carry + d_sum + d_ce
        if total > indirect_best[0]:
            indirect_best = (total, (g_net, g_carry, g_sum, g_ce))

    return SlackReport(
        direct_ps=direct_best[0],
        indirect_ps=indirect_best[0],
        direct_path=direct_best[1],
        indirect_path=indirect_best[1],
    )


# -- dynamic relative-timing check --------------------------------------


@dataclass(frozen=True)
class RtViolation:
    stage: int            # the stage whose sum lost the race (k+1)
    carry_fall_ps: int    # reset instant of its carry input (COUT of stage k)
    sum_fall_ps: int      # final reset instant of its sum output

    @property
    def margin_ps(self) -> int:
        return self.carry_fall_ps - self.sum_fall_ps

    @property
    def margin_ns(self) -> float:
        return self.margin_ps / 1000.0


def check_relative_timing(trace: Trace, descriptor: RcaDescriptor) -> list[RtViolation]:
    """Report stages whose carry input reset after their sum output.

    Requires a trace covering a complete RTZ phase.  A stage is reported
    only when both its carry-in pair and its sum pair fall in the phase
    and the carry's fall is strictly later than the sum's last fall.
    """
    if "rtz_start" not in trace.marks or "rtz_complete" not in trace.marks:
        raise ValueError("trace does not cover a complete RTZ phase")
    t0 = trace.marks["rtz_start"]
    violations: list[RtViolation] = []
    for stage in range(1, descriptor.width):
        carry_nets = descriptor.cin_rails(stage)
        sum1 = f"{descriptor.sum_port(stage)}1"
        sum0 = f"{descriptor.sum_port(stage)}0"
        carry_falls = [
            ev.time_ps
            for net in carry_nets
            for ev in trace.events_for(net, t0=t0)
            if ev.value == 0
        ]
        sum_falls = [
            ev.time_ps
            for net in (sum1, sum0)
            for ev in trace.events_for(net, t0=t0)
            if ev.value == 0
        ]
        if not carry_falls or not sum_falls:
            continue
        carry_fall = max(carry_falls)
        sum_fall = max(sum_falls)
        if carry_fall > sum_fall:
            violations.append(RtViolation(stage, carry_fall, sum_fall))
    return violations


def find_rtz_skew_threshold(netlist: Netlist, delays: DelayConfig,
                            a: int, b: int, cin: int,
                            hi_ns: float = 1.0) -> int:
    """Largest stage-0 reset skew (ps) that stays violation free.

    Bisects over the scenario in which stage 0's operand rails return to
    zero later than every other stage's, with the primary carry input held
    through the phase.  The violation predicate is monotone in the skew.
    """
    desc = RcaDescriptor(AdderKind.EARLY_OUTPUT, _infer_width(netlist))

    def violates(skew_ps: int) -> bool:
        skews = [skew_ps / 1000.0] + [0.0] * (desc.width - 1)
        trace = run_skewed_rtz(netlist, delays, a, b, cin, skews)
        return bool(check_relative_timing(trace, desc))

    lo, hi = 0, round(hi_ns * 1000)
    if violates(lo):
        raise ValueError("violation already present with zero skew")
    while not violates(hi):
        hi *= 2
        if hi > 1_000_000:
            raise ValueError("no violation found up to 1 us of skew")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if violates(mid):
            hi = mid
        else:
            lo = mid
    return lo


def _infer_width(netlist: Netlist) -> int:
    stages = {int(m.group(1)) for g in netlist.gates
              for m in [_STAGE_RE.match(g.name)] if m}
    return max(stages) + 1 if stages else 1


# -- orphan detection ----------------------------------------------------


@dataclass(frozen=True)
class OrphanFinding:
    event_id: int
    net: str
    time_ps: int
    value: int
    phase: str            # "valid" or "rtz"
    classification: str   # "post-completion" or "no-output-descendant"


def detect_orphans(trace: Trace) -> list[OrphanFinding]:
    """Flag internal transitions the outputs never acknowledge.

    Two criteria per phase: (a) the transition happens after the phase's
    completion instant, and (b) no event resting on it (transitively,
    through the support links) lands on a primary output within the phase.
    Stimulus events on input rails are the environment's business and are
    not candidates.
    """
    marks = trace.marks
    if "valid_complete" not in marks:
        raise ValueError("trace has no phase completion markers")
    if not trace.has_supports:
        raise ValueError("trace was recorded without support links")
    netlist = trace.netlist
    rtz_idx = marks.get("rtz_event_index", len(trace))
    phases = [("valid", 0, rtz_idx, marks["valid_complete"])]
    if "rtz_complete" in marks:
        phases.append(("rtz", rtz_idx, len(trace), marks["rtz_complete"]))

    children = trace.support_children()
    findings: list[OrphanFinding] = []
    output_rails = netlist.output_rails
    for phase, i0, i1, completion in phases:
        for i in range(i0, i1):
            ev = trace.event(i)
            if netlist.net_kind(ev.net) is not NetKind.INTERNAL:
                continue
            if ev.time_ps > completion:
                findings.append(OrphanFinding(
                    ev.id, ev.net, ev.time_ps, ev.value, phase, "post-completion"))
            # Breadth-first walk of the acknowledgement graph inside the phase.
            seen = {i}
            frontier = [i]
            acknowledged = False
            while frontier and not acknowledged:
                nxt: list[int] = []
                for j in frontier:
                    for ch in children[j]:
                        if ch in seen or ch >= i1:
                            continue
                        if trace.event(ch).net in output_rails:
                            acknowledged = True
                            break
                        seen.add(ch)
                        nxt.append(ch)
                    if acknowledged:
                        break
                frontier = nxt
            if not acknowledged:
                findings.append(OrphanFinding(
                    ev.id, ev.net, ev.time_ps, ev.value, phase, "no-output-descendant"))
    return findings


# -- indication classification -------------------------------------------


@dataclass(frozen=True)
class Witness:
    phase: str                      # "valid" or "rtz"
    vector: tuple[int, ...]         # bit per input port, in port order
    subset: frozenset[str]          # ports applied (valid) or withdrawn (rtz)
    completed: frozenset[str]       # output ports that completed anyway


@dataclass(frozen=True)
class IndicationVerdict:
    klass: str                      # "strong" | "weak" | "early"
    early_set: bool
    early_reset: bool
    witnesses: tuple[Witness, ...]

    def witnesses_for(self, phase: str) -> tuple[Witness, ...]:
        return tuple(w for w in self.witnesses if w.phase == phase)


def classify_indication(fa_netlist: Netlist, delays: DelayConfig) -> IndicationVerdict:
    """Classify a single full adder block per its input/output timing.

    Exhausts every valid input vector and every proper subset of the input
    ports, applied alone in the valid phase and withdrawn alone in the RTZ
    phase.  Strong blocks never move an output early; a block is early
    when some subset completes every output, with early-set and
    early-reset distinguishing the two phases; anything in between is
    weak.
    """
    in_ports = fa_netlist.input_ports
    if len(in_ports) != 3:
        raise StructureError("expected a single full adder with 3 input ports")
    out_ports = fa_netlist.output_ports
    out_names = [p.name for p in out_ports]
    port_names = [p.name for p in in_ports]
    subsets = [
        frozenset(c)
        for r in range(1, len(in_ports))
        for c in combinations(port_names, r)
    ]

    witnesses: list[Witness] = []
    any_early = {"valid": False, "rtz": False}
    all_early = {"valid": False, "rtz": False}

    for bits in _all_vectors(len(in_ports)):
        rail = {
            p.name: (p.rail1 if bit else p.rail0)
            for p, bit in zip(in_ports, bits)
        }
        for subset in subsets:
            # Valid phase: raise only the subset's rails, run to quiescence.
            eng = _Engine(fa_netlist, delays, record_supports=False)
            eng.schedule([(0, rail[name], 1) for name in subset])
            eng.run()
            done = frozenset(
                p.name for p in out_ports
                if decode_outputs([(eng.value_of(p.rail1), eng.value_of(p.rail0))]).is_valid
            )
            if done:
                any_early["valid"] = True
                witnesses.append(Witness("valid", bits, subset, done))
                if len(done) == len(out_ports):
                    all_early["valid"] = True

            # RTZ phase: full word in, then withdraw only the subset.
            eng = _Engine(fa_netlist, delays, record_supports=False)
            eng.schedule([(0, rail[name], 1) for name in port_names])
            eng.run()
            t = eng.last_time()
            eng.schedule([(t, rail[name], 0) for name in subset])
            eng.run()
            reset = frozenset(
                p.name for p in out_ports
                if decode_outputs([(eng.value_of(p.rail1), eng.value_of(p.rail0))]).is_spacer
            )
            if reset:
                any_early["rtz"] = True
                witnesses.append(Witness("rtz", bits, subset, reset))
                if len(reset) == len(out_ports):
                    all_early["rtz"] = True

    if all_early["valid"] or all_early["rtz"]:
        klass = "early"
    elif any_early["valid"] or any_early["rtz"]:
        klass = "weak"
    else:
        klass = "strong"
    if klass == "strong":
        witnesses = []
    return IndicationVerdict(
        klass=klass,
        early_set=all_early["valid"],
        early_reset=all_early["rtz"],
        witnesses=tuple(witnesses),
    )


def _all_vectors(count: int):
    for value in range(1 << count):
        yield tuple((value >> i) & 1 for i in range(count))


# -- disjoint (orthogonal) cover check -----------------------------------


@dataclass(frozen=True)
class DisjointReport:
    disjoint: bool
    offending: tuple[int, int] | None = None
    witness: Mapping[str, int] | None = None


_LITERAL_RE = re.compile(r"^([A-Za-z]+\d*?)([01])$")


def check_disjoint_cover(products: Sequence[Iterable[str]],
                         variables: Sequence[str] = ("A", "B", "CIN")) -> DisjointReport:
    """Pairwise orthogonality of rail-literal products over valid codewords.

    A literal ``X1``/``X0`` asks for variable X to carry 1/0.  Only
    assignments with exactly one rail high per variable exist under the
    protocol, so two products overlap iff some such assignment satisfies
    both; equivalently, iff no variable appears with opposite rails across
    the pair.  Returns the first offending pair with a witness assignment.
    """
    parsed: list[dict[str, int]] = []
    for prod in products:
        need: dict[str, int] = {}
        for literal in prod:
            m = _LITERAL_RE.match(literal)
            if not m or m.group(1) not in variables:
                raise ValueError(f"unknown literal {literal!r}")
            var, rail = m.group(1), int(m.group(2))
            if need.get(var, rail) != rail:
                # A product naming both rails of one variable is never
                # satisfiable, hence disjoint from everything.
                need[var] = -1
            else:
                need[var] = rail
        parsed.append(need)

    for (i, p), (j, q) in combinations(enumerate(parsed), 2):
        if -1 in p.values() or -1 in q.values():
            continue
        conflict = any(
            var in p and var in q and p[var] != q[var] for var in variables
        )
        if not conflict:
            witness = {var: 0 for var in variables}
            witness.update(p)
            witness.update(q)
            return DisjointReport(False, offending=(i, j), witness=witness)
    return DisjointReport(True)


# Dual-rail sum and carry covers of the full adder, keyed by output rail.
FULL_ADDER_COVERS: Mapping[str, tuple[tuple[str, ...], ...]] = {
    "SUM1": (("A0", "B0", "CIN1"), ("A0", "B1", "CIN0"),
             ("A1", "B0", "CIN0"), ("A1", "B1", "CIN1")),
    "SUM0": (("A0", "B0", "CIN0"), ("A0", "B1", "CIN1"),
             ("A1", "B0", "CIN1"), ("A1", "B1", "CIN0")),
    "COUT1": (("A0", "B1", "CIN1"), ("A1", "B0", "CIN1"),
              ("A1", "B1", "CIN0"), ("A1", "B1", "CIN1")),
    "COUT0": (("A0", "B0", "CIN0"), ("A0", "B0", "CIN1"),
              ("A0", "B1", "CIN0"), ("A1", "B0", "CIN0")),
}


# -- critical path --------------------------------------------------------


@dataclass(frozen=True)
class PathStep:
    gate: str
    type: GateType
    delay_ps: int
    arrival_ps: int   # cumulative delay up to and including this gate


@dataclass(frozen=True)
class CriticalPathReport:
    total_ps: int
    start_net: str
    end_net: str
    steps: tuple[PathStep, ...]
    recurring: Mapping[str, int]   # per-stage gate-type multiset (mode)

    @property
    def total_ns(self) -> float:
        return self.total_ps / 1000.0


def critical_path_report(netlist: Netlist, delays: DelayConfig) -> CriticalPathReport:
    """Longest-delay structural input-to-output path with a stage census.

    The recurring element census groups the path's gates by generated
    stage (``fa<k>_`` prefixes); the most common per-stage multiset is the
    set of logic elements the path repeats per rippled stage.
    """
    arrivals: dict[str, int] = {net: 0 for net in netlist.input_rails}
    pred: dict[str, tuple[str, str] | None] = {}
    for gate in netlist.topo_gates():
        delay = gate.delay_ps if gate.delay_ps is not None else delays.delay_ps(gate.type)
        best_net = None
        best = -1
        for net in gate.inputs:
            t = arrivals.get(net, 0)
            if t > best:
                best = t
                best_net = net
        arrivals[gate.output] = best + delay
        pred[gate.output] = (best_net, gate.name)

    end_net = max(sorted(netlist.output_rails), key=lambda n: arrivals.get(n, 0))
    total = arrivals.get(end_net, 0)

    steps_rev: list[PathStep] = []
    net = end_net
    while net in pred and pred[net] is not None:
        prev_net, gate_name = pred[net]
        gate = netlist.gate(gate_name)
        delay = gate.delay_ps if gate.delay_ps is not None else delays.delay_ps(gate.type)
        steps_rev.append(PathStep(gate_name, gate.type, delay, arrivals[net]))
        net = prev_net
    steps = tuple(reversed(steps_rev))

    per_stage: dict[int, list[str]] = {}
    for step in steps:
        m = _STAGE_RE.match(step.gate)
        stage = int(m.group(1)) if m else 0
        per_stage.setdefault(stage, []).append(step.type.value)
    multiset_counts: dict[tuple[tuple[str, int], ...], int] = {}
    for types in per_stage.values():
        key = tuple(sorted((t, types.count(t)) for t in set(types)))
        multiset_counts[key] = multiset_counts.get(key, 0) + 1
    recurring: dict[str, int] = {}
    if multiset_counts:
        mode = max(multiset_counts.items(), key=lambda kv: kv[1])[0]
        recurring = dict(mode)

    return CriticalPathReport(
        total_ps=total,
        start_net=net,
        end_net=end_net,
        steps=steps,
        recurring=recurring,
    )
