"""Generators for dual-rail asynchronous full adders and their cascades.

Two single-bit adder styles are provided:

* an early-output adder built from 11 gates whose carry logic resolves as
  soon as the operands allow (generate and kill produce the carry without
  waiting for the carry input, and every output returns to spacer from a
  subset of the inputs), and
* a strong-indication baseline that instantiates one decomposed C-element
  tree per minterm of the dual-rail sum and carry equations, so no output
  moves before every input has arrived or left.

Cascading either stage yields a ripple-carry adder in which stage k's
carry-out pair is stage k+1's carry-in pair.  A completion detector
(OR per rail pair into a C-element tree) is also available.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product as iter_product

from .gates import GateType
from .netlist import DualRailPort, GateInstance, Netlist, assemble, validate


class AdderKind(enum.Enum):
    EARLY_OUTPUT = "early-output"
    DIMS_STRONG = "dims"


@dataclass(frozen=True)
class RcaDescriptor:
    """Naming map for a generated ripple-carry adder."""

    kind: AdderKind
    width: int

    def stage_prefix(self, k: int) -> str:
        return "" if self.width == 1 else f"fa{k}_"

    def a_port(self, k: int) -> str:
        return "A" if self.width == 1 else f"A{k}"

    def b_port(self, k: int) -> str:
        return "B" if self.width == 1 else f"B{k}"

    def sum_port(self, k: int) -> str:
        return "SUM" if self.width == 1 else f"SUM{k}"

    def carry_rails(self, k: int) -> tuple[str, str]:
        """(rail1, rail0) of stage k's carry output."""
        if k == self.width - 1:
            return ("COUT1", "COUT0")
        return (f"COUT{k}1", f"COUT{k}0")

    def cin_rails(self, k: int) -> tuple[str, str]:
        """(rail1, rail0) of stage k's carry input."""
        if k == 0:
            return ("CIN1", "CIN0")
        return self.carry_rails(k - 1)


def _rail_names(port: str) -> tuple[str, str]:
    return (f"{port}1", f"{port}0")


def _eo_stage(prefix, a1, a0, b1, b0, cin1, cin0, sum1, sum0, cout1, cout0):
    """The 11-gate early-output full adder stage.

    net1 = A0*B0 + A1*B1 and net2 = A0*B1 + A1*B0 classify the operands;
    net3 ORs them as an internal completion signal that gates the sum
    C-elements.  The carry rails need only net2 plus the AND of the
    matching operand rails, so generate/kill stages emit their carry
    without the carry input.
    """
    g = lambda name: f"{prefix}{name}"
    n = lambda name: f"{prefix}{name}"
    return [
        GateInstance(g("CG1"), GateType.AO22, (a0, b0, a1, b1), n("net1")),
        GateInstance(g("CG2"), GateType.AO22, (a0, b1, a1, b0), n("net2")),
        GateInstance(g("OR"), GateType.OR2, (n("net1"), n("net2")), n("net3")),
        GateInstance(g("CG3"), GateType.AO22, (n("net1"), cin1, n("net2"), cin0), n("asum1")),
        GateInstance(g("CG4"), GateType.AO22, (n("net1"), cin0, n("net2"), cin1), n("asum0")),
        GateInstance(g("CE1"), GateType.CELEMENT2, (n("asum1"), n("net3")), sum1),
        GateInstance(g("CE2"), GateType.CELEMENT2, (n("asum0"), n("net3")), sum0),
        GateInstance(g("AND1"), GateType.AND2, (a1, b1), n("net4")),
        GateInstance(g("AND2"), GateType.AND2, (a0, b0), n("net5")),
        GateInstance(g("CG5"), GateType.AO21, (n("net2"), cin1, n("net4")), cout1),
        GateInstance(g("CG6"), GateType.AO21, (n("net2"), cin0, n("net5")), cout0),
    ]


# Minterms of the dual-rail full adder, keyed by operand/carry bit values.
# The sum rails partition the eight minterms by parity and the carry rails
# by majority; each minterm feeds exactly one sum OR and one carry OR.
_SUM1_MINTERMS = tuple(m for m in iter_product((0, 1), repeat=3) if sum(m) % 2 == 1)
_SUM0_MINTERMS = tuple(m for m in iter_product((0, 1), repeat=3) if sum(m) % 2 == 0)
_COUT1_MINTERMS = tuple(m for m in iter_product((0, 1), repeat=3) if sum(m) >= 2)
_COUT0_MINTERMS = tuple(m for m in iter_product((0, 1), repeat=3) if sum(m) <= 1)


def _dims_stage(prefix, a1, a0, b1, b0, cin1, cin0, sum1, sum0, cout1, cout0):
    """Strong-indication stage: 8 minterms of two C-elements each, 4 OR4s.

    A three-literal minterm C(a, b, cin) decomposes left-associatively as
    C(C(a, b), cin), keeping the late-arriving carry rail next to the
    output.  Minterms shared between a sum rail and a carry rail are
    instantiated once and fanned out.
    """
    g = lambda name: f"{prefix}{name}"
    rails = {("A", 1): a1, ("A", 0): a0, ("B", 1): b1, ("B", 0): b0,
             ("CIN", 1): cin1, ("CIN", 0): cin0}
    gates = []
    minterm_net = {}
    for m in iter_product((0, 1), repeat=3):
        a, b, c = m
        tag = f"m{a}{b}{c}"
        ab = g(f"{tag}_ab")
        out = g(tag)
        gates.append(GateInstance(g(f"C_{tag}_ab"), GateType.CELEMENT2,
                                  (rails[("A", a)], rails[("B", b)]), ab))
        gates.append(GateInstance(g(f"C_{tag}"), GateType.CELEMENT2,
                                  (ab, rails[("CIN", c)]), out))
        minterm_net[m] = out
    for or_name, terms, out in (
        ("OR_SUM1", _SUM1_MINTERMS, sum1),
        ("OR_SUM0", _SUM0_MINTERMS, sum0),
        ("OR_COUT1", _COUT1_MINTERMS, cout1),
        ("OR_COUT0", _COUT0_MINTERMS, cout0),
    ):
        gates.append(GateInstance(g(or_name), GateType.OR4,
                                  tuple(minterm_net[m] for m in terms), out))
    return gates


_STAGE_BUILDERS = {
    AdderKind.EARLY_OUTPUT: _eo_stage,
    AdderKind.DIMS_STRONG: _dims_stage,
}


def build_rca(kind: AdderKind, n: int) -> Netlist:
    """n-bit ripple-carry adder of the given stage style.

    Ports are A0..A{n-1}, B0..B{n-1}, CIN, SUM0..SUM{n-1}, COUT (for n=1
    the bit suffix is dropped).  Stage k's carry-out rails COUT{k}1/COUT{k}0
    are stage k+1's carry-in; the last stage drives the COUT port.
    """
    if n < 1:
        raise ValueError("adder width must be at least 1")
    desc = RcaDescriptor(kind, n)
    build_stage = _STAGE_BUILDERS[kind]
    gates: list[GateInstance] = []
    ports: list[tuple[str, DualRailPort]] = []
    ports.append(("input", DualRailPort("CIN", "CIN1", "CIN0")))
    for k in range(n):
        a1, a0 = _rail_names(desc.a_port(k))
        b1, b0 = _rail_names(desc.b_port(k))
        s1, s0 = _rail_names(desc.sum_port(k))
        cin1, cin0 = desc.cin_rails(k)
        cout1, cout0 = desc.carry_rails(k)
        ports.append(("input", DualRailPort(desc.a_port(k), a1, a0)))
        ports.append(("input", DualRailPort(desc.b_port(k), b1, b0)))
        ports.append(("output", DualRailPort(desc.sum_port(k), s1, s0)))
        gates.extend(build_stage(desc.stage_prefix(k), a1, a0, b1, b0,
                                 cin1, cin0, s1, s0, cout1, cout0))
    ports.append(("output", DualRailPort("COUT", "COUT1", "COUT0")))
    return assemble(gates, ports)


def build_early_output_fa() -> Netlist:
    """Single early-output full adder (ports A, B, CIN, SUM, COUT)."""
    return build_rca(AdderKind.EARLY_OUTPUT, 1)


def build_dims_fa() -> Netlist:
    """Single strong-indication full adder (16 C-elements + 4 OR4s)."""
    return build_rca(AdderKind.DIMS_STRONG, 1)


def build_completion_detector(pair_count: int) -> Netlist:
    """Completion detector over ``pair_count`` dual-rail pairs.

    One OR2 per pair feeds a balanced tree of 2-input C-elements whose
    root net ``done`` rises once every pair holds a codeword and falls
    once every pair is back at spacer, holding in between.
    """
    if pair_count < 1:
        raise ValueError("pair_count must be at least 1")
    gates: list[GateInstance] = []
    ports: list[tuple[str, DualRailPort]] = []
    level: list[str] = []
    for i in range(pair_count):
        port = DualRailPort(f"D{i}", f"D{i}1", f"D{i}0")
        ports.append(("input", port))
        out = "done" if pair_count == 1 else f"any{i}"
        gates.append(GateInstance(f"OR{i}", GateType.OR2, port.rails, out))
        level.append(out)
    tier = 0
    while len(level) > 1:
        nxt: list[str] = []
        for j in range(0, len(level) - 1, 2):
            out = "done" if len(level) == 2 else f"c{tier}_{j // 2}"
            gates.append(GateInstance(f"CT{tier}_{j // 2}", GateType.CELEMENT2,
                                      (level[j], level[j + 1]), out))
            nxt.append(out)
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        tier += 1
    netlist = Netlist(gates, [p for _, p in ports], [], scalar_outputs=("done",))
    violations = validate(netlist)
    if violations:  # pragma: no cover - generator guarantee
        raise AssertionError("; ".join(violations))
    return netlist


def with_completion_detector(netlist: Netlist) -> Netlist:
    """Attach a completion detector watching every output port.

    Returns a new netlist with the same ports plus a scalar ``done``
    output; detector gates are prefixed ``cd_``.
    """
    pairs = list(netlist.output_ports)
    gates = list(netlist.gates)
    level: list[str] = []
    for i, port in enumerate(pairs):
        out = "done" if len(pairs) == 1 else f"cd_any{i}"
        gates.append(GateInstance(f"cd_OR{i}", GateType.OR2, port.rails, out))
        level.append(out)
    tier = 0
    while len(level) > 1:
        nxt: list[str] = []
        for j in range(0, len(level) - 1, 2):
            out = "done" if len(level) == 2 else f"cd_c{tier}_{j // 2}"
            gates.append(GateInstance(f"cd_CT{tier}_{j // 2}", GateType.CELEMENT2,
                                      (level[j], level[j + 1]), out))
            nxt.append(out)
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        tier += 1
    return Netlist(gates, netlist.input_ports, netlist.output_ports,
                   netlist.scalar_outputs + ("done",))
