"""Immutable gate-level netlist with dual-rail ports.

A netlist is a directed graph of gate instances connected by named nets.
Primary inputs and outputs are grouped into dual-rail ports: each port owns
a rail1/rail0 net pair encoding one bit.  (1,0) is logic 1, (0,1) is logic
0, (0,0) is the spacer separating consecutive words, and (1,1) is illegal.

Fanout junctions are isochronic by construction: a transition on a net is
seen by every consumer at the same instant, so all delay lives in gates and
wires carry none.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .gates import GateType


class NetlistError(ValueError):
    """Structural problem that prevents building a coherent netlist."""


@dataclass(frozen=True)
class GateInstance:
    name: str
    type: GateType
    inputs: tuple[str, ...]
    output: str
    delay_ps: int | None = None  # overrides the DelayConfig entry when set


@dataclass(frozen=True)
class DualRailPort:
    name: str
    rail1: str
    rail0: str

    @property
    def rails(self) -> tuple[str, str]:
        return (self.rail1, self.rail0)


class NetKind(enum.Enum):
    PRIMARY_INPUT = "primary-input"
    PRIMARY_OUTPUT = "primary-output"
    INTERNAL = "internal"


class Netlist:
    """Gate graph plus port grouping.  Treat instances as immutable.

    The constructor performs no validation so that deliberately broken
    graphs can be inspected with :func:`validate`; use :func:`assemble`
    to build a checked netlist.
    """

    def __init__(
        self,
        gates: Iterable[GateInstance],
        input_ports: Iterable[DualRailPort],
        output_ports: Iterable[DualRailPort],
        scalar_outputs: Iterable[str] = (),
    ) -> None:
        self.gates: tuple[GateInstance, ...] = tuple(gates)
        self.input_ports: tuple[DualRailPort, ...] = tuple(input_ports)
        self.output_ports: tuple[DualRailPort, ...] = tuple(output_ports)
        self.scalar_outputs: tuple[str, ...] = tuple(scalar_outputs)

        self._gate_by_name = {g.name: g for g in self.gates}
        nets: dict[str, None] = {}
        for port in self.input_ports + self.output_ports:
            nets.setdefault(port.rail1)
            nets.setdefault(port.rail0)
        for name in self.scalar_outputs:
            nets.setdefault(name)
        for gate in self.gates:
            nets.setdefault(gate.output)
            for net in gate.inputs:
                nets.setdefault(net)
        self.nets: tuple[str, ...] = tuple(nets)

        self._drivers: dict[str, list[GateInstance]] = {}
        for gate in self.gates:
            self._drivers.setdefault(gate.output, []).append(gate)
        self._consumers: dict[str, list[tuple[GateInstance, int]]] = {n: [] for n in self.nets}
        for gate in self.gates:
            for pin, net in enumerate(gate.inputs):
                self._consumers[net].append((gate, pin))

        input_rails = set()
        for port in self.input_ports:
            input_rails.update(port.rails)
        output_rails = set(self.scalar_outputs)
        for port in self.output_ports:
            output_rails.update(port.rails)
        self._input_rails = frozenset(input_rails)
        self._output_rails = frozenset(output_rails)

    # -- queries -------------------------------------------------------

    def gate(self, name: str) -> GateInstance:
        return self._gate_by_name[name]

    def has_gate(self, name: str) -> bool:
        return name in self._gate_by_name

    def driver(self, net: str) -> GateInstance | None:
        drivers = self._drivers.get(net)
        return drivers[0] if drivers else None

    def consumers(self, net: str) -> tuple[tuple[GateInstance, int], ...]:
        return tuple(self._consumers.get(net, ()))

    def net_kind(self, net: str) -> NetKind:
        if net in self._input_rails:
            return NetKind.PRIMARY_INPUT
        if net in self._output_rails:
            return NetKind.PRIMARY_OUTPUT
        return NetKind.INTERNAL

    @property
    def input_rails(self) -> frozenset[str]:
        return self._input_rails

    @property
    def output_rails(self) -> frozenset[str]:
        return self._output_rails

    def input_port(self, name: str) -> DualRailPort:
        for port in self.input_ports:
            if port.name == name:
                return port
        raise KeyError(name)

    def output_port(self, name: str) -> DualRailPort:
        for port in self.output_ports:
            if port.name == name:
                return port
        raise KeyError(name)

    def fork_nets(self) -> tuple[str, ...]:
        """Nets with fanout of two or more (the isochronic fork junctions)."""
        return tuple(n for n in self.nets if len(self._consumers[n]) >= 2)

    def census(self) -> dict[GateType, int]:
        counts: dict[GateType, int] = {}
        for gate in self.gates:
            counts[gate.type] = counts.get(gate.type, 0) + 1
        return counts

    def topo_gates(self) -> tuple[GateInstance, ...]:
        """Gates in dependency order.  Raises NetlistError on a cycle."""
        order, leftover = self._topo()
        if leftover:
            raise NetlistError(f"combinational cycle through gates {sorted(leftover)}")
        return order

    def _topo(self) -> tuple[tuple[GateInstance, ...], set[str]]:
        indeg = {g.name: 0 for g in self.gates}
        succ: dict[str, list[str]] = {g.name: [] for g in self.gates}
        for gate in self.gates:
            for net in gate.inputs:
                for drv in self._drivers.get(net, ()):
                    succ[drv.name].append(gate.name)
                    indeg[gate.name] += 1
        ready = sorted(name for name, d in indeg.items() if d == 0)
        order: list[GateInstance] = []
        while ready:
            name = ready.pop(0)
            order.append(self._gate_by_name[name])
            for nxt in succ[name]:
                indeg[nxt] -= 1
                if indeg[nxt] == 0:
                    ready.append(nxt)
            ready.sort()
        leftover = {name for name, d in indeg.items() if d > 0}
        return tuple(order), leftover

    # -- serialisation -------------------------------------------------

    def to_dict(self) -> dict:
        doc: dict = {
            "gates": [
                {
                    "name": g.name,
                    "type": g.type.value,
                    "inputs": list(g.inputs),
                    "output": g.output,
                    **({"delay": g.delay_ps / 1000.0} if g.delay_ps is not None else {}),
                }
                for g in self.gates
            ],
            "input_ports": [
                {"name": p.name, "rail1": p.rail1, "rail0": p.rail0}
                for p in self.input_ports
            ],
            "output_ports": [
                {"name": p.name, "rail1": p.rail1, "rail0": p.rail0}
                for p in self.output_ports
            ],
        }
        if self.scalar_outputs:
            doc["scalar_outputs"] = list(self.scalar_outputs)
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Netlist":
        gates = [
            GateInstance(
                name=g["name"],
                type=GateType[g["type"]],
                inputs=tuple(g["inputs"]),
                output=g["output"],
                delay_ps=None if g.get("delay") is None else round(g["delay"] * 1000),
            )
            for g in doc["gates"]
        ]
        in_ports = [DualRailPort(p["name"], p["rail1"], p["rail0"]) for p in doc["input_ports"]]
        out_ports = [DualRailPort(p["name"], p["rail1"], p["rail0"]) for p in doc["output_ports"]]
        return cls(gates, in_ports, out_ports, doc.get("scalar_outputs", ()))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Netlist":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Netlist":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return (
            f"Netlist(gates={len(self.gates)}, inputs={len(self.input_ports)}, "
            f"outputs={len(self.output_ports)})"
        )


def assemble(gates: Sequence, ports: Sequence) -> Netlist:
    """Build and validate a netlist from descriptions.

    ``gates`` holds GateInstance objects or mappings with keys
    name/type/inputs/output and optional delay (ns).  ``ports`` holds
    mappings with keys name/rail1/rail0 and role ("input" or "output"),
    or (role, DualRailPort) pairs.  Raises NetlistError listing every
    violation if the result is not a well-formed netlist.
    """
    gate_objs: list[GateInstance] = []
    for desc in gates:
        if isinstance(desc, GateInstance):
            gate_objs.append(desc)
        else:
            gtype = desc["type"] if isinstance(desc["type"], GateType) else GateType[desc["type"]]
            delay = desc.get("delay")
            gate_objs.append(
                GateInstance(
                    name=desc["name"],
                    type=gtype,
                    inputs=tuple(desc["inputs"]),
                    output=desc["output"],
                    delay_ps=None if delay is None else round(delay * 1000),
                )
            )
    in_ports: list[DualRailPort] = []
    out_ports: list[DualRailPort] = []
    for desc in ports:
        if isinstance(desc, tuple):
            role, port = desc
        else:
            role = desc["role"]
            port = DualRailPort(desc["name"], desc["rail1"], desc["rail0"])
        if role == "input":
            in_ports.append(port)
        elif role == "output":
            out_ports.append(port)
        else:
            raise NetlistError(f"unknown port role {role!r}")
    netlist = Netlist(gate_objs, in_ports, out_ports)
    violations = validate(netlist)
    if violations:
        raise NetlistError("; ".join(violations))
    return netlist


def validate(netlist: Netlist) -> list[str]:
    """Report every structural invariant violation (empty list when clean).

    Checks single drivers, driven inputs and outputs, gate arities, cycle
    freedom, port rail pairing, and reachability of every net from the
    primary inputs through to some primary output.
    """
    violations: list[str] = []

    seen_gate_names: set[str] = set()
    for gate in netlist.gates:
        if gate.name in seen_gate_names:
            violations.append(f"duplicate gate name {gate.name}")
        seen_gate_names.add(gate.name)
        if len(gate.inputs) != gate.type.arity:
            violations.append(
                f"gate {gate.name}: {gate.type.value} expects {gate.type.arity} inputs, "
                f"got {len(gate.inputs)}"
            )

    for net in netlist.nets:
        drivers = netlist._drivers.get(net, [])
        kind = netlist.net_kind(net)
        if len(drivers) > 1:
            names = ", ".join(g.name for g in drivers)
            violations.append(f"net {net}: multiple drivers ({names})")
        if kind is NetKind.PRIMARY_INPUT:
            if drivers:
                violations.append(f"net {net}: primary input driven by gate {drivers[0].name}")
        elif not drivers:
            violations.append(f"net {net}: no driver (dangling reference)")

    ports = netlist.input_ports + netlist.output_ports
    seen_port_names: set[str] = set()
    used_rails: set[str] = set()
    for port in ports:
        if port.name in seen_port_names:
            violations.append(f"duplicate port name {port.name}")
        seen_port_names.add(port.name)
        if port.rail1 == port.rail0:
            violations.append(f"port {port.name}: rail1 and rail0 are the same net")
        for rail in port.rails:
            if rail in used_rails:
                violations.append(f"net {rail}: shared between ports")
            used_rails.add(rail)

    _, leftover = netlist._topo()
    if leftover:
        violations.append(f"combinational cycle through gates {sorted(leftover)}")

    # Reachability both ways; run only on structurally sound graphs.
    if not violations:
        forward: set[str] = set(netlist.input_rails)
        frontier = list(forward)
        while frontier:
            net = frontier.pop()
            for gate, _pin in netlist.consumers(net):
                if gate.output not in forward and all(i in forward for i in gate.inputs):
                    forward.add(gate.output)
                    frontier.append(gate.output)
        backward: set[str] = set(netlist.output_rails)
        frontier = list(backward)
        while frontier:
            net = frontier.pop()
            driver = netlist.driver(net)
            if driver is None:
                continue
            for inp in driver.inputs:
                if inp not in backward:
                    backward.add(inp)
                    frontier.append(inp)
        for net in netlist.nets:
            if net not in forward:
                violations.append(f"net {net}: not reachable from any primary input")
            if net not in backward and netlist.net_kind(net) is not NetKind.PRIMARY_OUTPUT:
                violations.append(f"net {net}: reaches no primary output")

    return violations


# -- dual-rail encode / decode ----------------------------------------


def encode_word(value: int, width: int) -> list[tuple[int, int]]:
    """Encode an unsigned integer as (rail1, rail0) pairs, lsb first."""
    if width < 1:
        raise ValueError("width must be positive")
    if value < 0 or value >= (1 << width):
        raise ValueError(f"value {value} out of range for width {width}")
    pairs = []
    for i in range(width):
        bit = (value >> i) & 1
        pairs.append((1, 0) if bit else (0, 1))
    return pairs


class DecodeStatus(enum.Enum):
    VALID = "valid"
    SPACER = "spacer"
    PARTIAL = "partial"
    ILLEGAL = "illegal"


@dataclass(frozen=True)
class DecodeResult:
    status: DecodeStatus
    value: int | None = None
    position: int | None = None

    @property
    def is_valid(self) -> bool:
        return self.status is DecodeStatus.VALID

    @property
    def is_spacer(self) -> bool:
        return self.status is DecodeStatus.SPACER


def decode_outputs(rails: Sequence[tuple[int, int]]) -> DecodeResult:
    """Classify a sequence of rail pairs and decode the value when valid.

    Pairs are lsb first.  Any (1,1) pair makes the word illegal at that
    position; otherwise the word is valid when every pair is a codeword,
    spacer when every pair is (0,0), and partial when mixed.
    """
    value = 0
    codewords = 0
    spacers = 0
    for i, (r1, r0) in enumerate(rails):
        if r1 and r0:
            return DecodeResult(DecodeStatus.ILLEGAL, position=i)
        if r1:
            value |= 1 << i
            codewords += 1
        elif r0:
            codewords += 1
        else:
            spacers += 1
    if codewords == len(rails) and rails:
        return DecodeResult(DecodeStatus.VALID, value=value)
    if spacers == len(rails):
        return DecodeResult(DecodeStatus.SPACER)
    return DecodeResult(DecodeStatus.PARTIAL)
