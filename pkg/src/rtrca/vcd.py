"""Value Change Dump export for simulation traces.

Writes one scalar wire per net under a single module scope.  The timescale
is 1 ps because gate delays are held in whole picoseconds; viewers display
0.001 ns per tick.
"""

from __future__ import annotations

from .sim import Trace

_ID_CHARS = "".join(chr(c) for c in range(33, 127))


def _vcd_id(index: int) -> str:
    chars = []
    index += 1
    while index:
        index, rem = divmod(index - 1, len(_ID_CHARS))
        chars.append(_ID_CHARS[rem])
    return "".join(chars)


def write_vcd(trace: Trace, destination, comment: str = "") -> None:
    """Write the trace to a path or file object."""
    if hasattr(destination, "write"):
        _write(trace, destination, comment)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            _write(trace, fh, comment)


def _write(trace: Trace, fh, comment: str) -> None:
    netlist = trace.netlist
    nets = sorted(netlist.nets)
    ids = {net: _vcd_id(i) for i, net in enumerate(nets)}

    if comment:
        fh.write(f"$comment {comment} $end\n")
    fh.write("$timescale 1 ps $end\n")
    fh.write("$scope module dut $end\n")
    for net in nets:
        fh.write(f"$var wire 1 {ids[net]} {net} $end\n")
    fh.write("$upscope $end\n")
    fh.write("$enddefinitions $end\n")
    fh.write("$dumpvars\n")
    for net in nets:
        fh.write(f"0{ids[net]}\n")
    fh.write("$end\n")

    current = None
    for ev in trace.events():
        if ev.time_ps != current:
            fh.write(f"#{ev.time_ps}\n")
            current = ev.time_ps
        fh.write(f"{ev.value}{ids[ev.net]}\n")


def parse_vcd(source) -> tuple[dict[str, str], list[tuple[int, str, int]]]:
    """Minimal VCD reader used for round-trip checks.

    Returns (id-to-net map, [(time_ps, net, value), ...]) for scalar wires.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    names: dict[str, str] = {}
    changes: list[tuple[int, str, int]] = []
    time = 0
    in_dumpvars = False
    for token_line in text.splitlines():
        line = token_line.strip()
        if not line:
            continue
        if line.startswith("$var"):
            parts = line.split()
            names[parts[3]] = parts[4]
        elif line.startswith("$dumpvars"):
            in_dumpvars = True
        elif line.startswith("$end"):
            in_dumpvars = False
        elif line.startswith("$"):
            continue
        elif line.startswith("#"):
            time = int(line[1:])
        elif line[0] in "01":
            value = int(line[0])
            net = names[line[1:]]
            if not in_dumpvars:
                changes.append((time, net, value))
    return names, changes
