"""Primitive gate vocabulary for dual-rail asynchronous circuits.

The vocabulary covers three simple gate families (AND2, OR2/OR3/OR4), the
AND-OR complex gates AO21 / AO22 / AO222, and the 2-input Muller C-element.
All gates drive a single output.  Combinational gates compute a sum of
products over their inputs; the C-element drives 1 when both inputs are 1,
drives 0 when both are 0, and otherwise holds its previous output.

Propagation delays are carried in a :class:`DelayConfig` and are stored as
integer picoseconds so that path sums compare exactly, with no float drift.
A single delay per gate applies to both rising and falling transitions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP
from typing import Iterable, Mapping, Union


class GateType(enum.Enum):
    AND2 = "AND2"
    OR2 = "OR2"
    OR3 = "OR3"
    OR4 = "OR4"
    AO21 = "AO21"
    AO22 = "AO22"
    AO222 = "AO222"
    CELEMENT2 = "CELEMENT2"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def products(self) -> tuple[tuple[int, ...], ...]:
        """Sum-of-products structure as tuples of input positions.

        The C-element is not a sum of products; it has no entry here.
        """
        return _PRODUCTS[self]

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


_ARITY = {
    GateType.AND2: 2,
    GateType.OR2: 2,
    GateType.OR3: 3,
    GateType.OR4: 4,
    GateType.AO21: 3,
    GateType.AO22: 4,
    GateType.AO222: 6,
    GateType.CELEMENT2: 2,
}

_PRODUCTS = {
    GateType.AND2: ((0, 1),),
    GateType.OR2: ((0,), (1,)),
    GateType.OR3: ((0,), (1,), (2,)),
    GateType.OR4: ((0,), (1,), (2,), (3,)),
    GateType.AO21: ((0, 1), (2,)),
    GateType.AO22: ((0, 1), (2, 3)),
    GateType.AO222: ((0, 1), (2, 3), (4, 5)),
}


class GateArityError(ValueError):
    """Input count does not match the gate type's arity."""


class ConfigError(ValueError):
    """Bad delay configuration value or key."""


@dataclass(frozen=True)
class GateState:
    """Held output of a state-holding gate.  Only the C-element uses it.

    The initial held value is 0: circuits start in the all-zero spacer
    state and C-elements power up holding 0.
    """

    held: int = 0


def eval_gate(
    gtype: GateType,
    inputs: Iterable[int],
    state: GateState | None = None,
) -> tuple[int, GateState | None]:
    """Evaluate one gate and return ``(output, new_state)``.

    Combinational types return their state argument untouched.  For
    CELEMENT2 the output is 1 iff both inputs are 1, 0 iff both are 0,
    and the held value otherwise; the returned state records the output.
    """
    vals = tuple(inputs)
    if len(vals) != gtype.arity:
        raise GateArityError(
            f"{gtype.value} expects {gtype.arity} inputs, got {len(vals)}"
        )
    if any(v not in (0, 1) for v in vals):
        raise ValueError(f"inputs must be 0/1, got {vals!r}")
    if gtype is GateType.CELEMENT2:
        held = (state or GateState()).held
        if vals[0] and vals[1]:
            out = 1
        elif not vals[0] and not vals[1]:
            out = 0
        else:
            out = held
        return out, GateState(out)
    out = 0
    for prod in _PRODUCTS[gtype]:
        if all(vals[pin] for pin in prod):
            out = 1
            break
    return out, state


def support_pins(gtype: GateType, inputs: Iterable[int], output: int) -> tuple[int, ...]:
    """Input positions whose current values the given output rests on.

    For a high output these are the literals of every satisfied product;
    for a low output, the zero literals that keep each product dead.  For
    the C-element an output event requires both inputs, so both pins are
    load bearing.  Used to build acknowledgement links between simulation
    events.
    """
    vals = tuple(inputs)
    if gtype is GateType.CELEMENT2:
        return (0, 1)
    pins: set[int] = set()
    if output:
        for prod in _PRODUCTS[gtype]:
            if all(vals[pin] for pin in prod):
                pins.update(prod)
    else:
        for prod in _PRODUCTS[gtype]:
            pins.update(pin for pin in prod if not vals[pin])
    return tuple(sorted(pins))


def celement_via_ao222_feedback(inputs: Iterable[int], held: int) -> int:
    """C-element behaviour realised as an AO222 with output feedback.

    The feedback form computes ``ab + a*y + b*y`` with ``y`` the previous
    output, which is the majority function of (a, b, y).  Provided for
    equivalence checks against the primitive; the simulator always uses
    the primitive, since structural feedback would make the gate graph
    cyclic.
    """
    a, b = tuple(inputs)
    out, _ = eval_gate(GateType.AO222, (a, b, a, held, b, held))
    return out


DEFAULT_DELAYS_PS: Mapping[GateType, int] = {
    GateType.AND2: 50,
    GateType.OR2: 50,
    GateType.OR3: 60,
    GateType.OR4: 70,
    GateType.AO21: 63,
    GateType.AO22: 75,
    GateType.AO222: 90,
    GateType.CELEMENT2: 100,
}

DelayValue = Union[int, float, str, Decimal]


def ns_to_ps(value: DelayValue) -> int:
    """Convert a nanosecond quantity to integer picoseconds (half-up)."""
    try:
        dec = Decimal(str(value))
    except InvalidOperation as exc:
        raise ConfigError(f"cannot parse delay value {value!r}") from exc
    return int((dec * 1000).to_integral_value(rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class DelayConfig:
    """Per-gate-type propagation delays in integer picoseconds.

    The defaults place 75 ps on AO22 and 100 ps on the C-element so that
    two AO22 hops plus one C-element sum to exactly 250 ps, and 63 ps on
    AO21.  Only those sums are load bearing for the timing analyses; the
    individual splits are overridable.
    """

    delays_ps: Mapping[GateType, int]

    def __post_init__(self) -> None:
        for gtype in GateType:
            if gtype not in self.delays_ps:
                raise ConfigError(f"missing delay for {gtype.value}")
        for gtype, ps in self.delays_ps.items():
            if ps < 0:
                raise ConfigError(f"negative delay for {gtype.value}: {ps} ps")

    @classmethod
    def default(cls) -> "DelayConfig":
        return cls(dict(DEFAULT_DELAYS_PS))

    def delay_ps(self, gtype: GateType) -> int:
        return self.delays_ps[gtype]

    def delay_ns(self, gtype: GateType) -> float:
        return self.delays_ps[gtype] / 1000.0

    def with_overrides(self, overrides: Mapping[Union[GateType, str], DelayValue]) -> "DelayConfig":
        """Overlay delays given in nanoseconds.

        Zero is tolerated here as a what-if probe for path analyses;
        negative values are rejected.  File loading is stricter.
        """
        table = dict(self.delays_ps)
        for key, value in overrides.items():
            gtype = _as_gate_type(key)
            ps = ns_to_ps(value)
            if ps < 0:
                raise ConfigError(f"negative delay for {gtype.value}: {value!r}")
            table[gtype] = ps
        return DelayConfig(table)

    @classmethod
    def parse(cls, text: str) -> "DelayConfig":
        """Parse ``NAME=ns`` lines overlaid on the defaults.

        Blank lines and ``#`` comments are skipped.  Unknown gate names
        and non-positive delays are errors.
        """
        overrides: dict[GateType, int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected NAME=value, got {raw!r}")
            name, _, value = line.partition("=")
            gtype = _as_gate_type(name.strip())
            ps = ns_to_ps(value.strip())
            if ps <= 0:
                raise ConfigError(
                    f"line {lineno}: delay for {gtype.value} must be positive, got {value.strip()!r}"
                )
            overrides[gtype] = ps
        table = dict(DEFAULT_DELAYS_PS)
        table.update(overrides)
        return cls(table)

    @classmethod
    def load(cls, path) -> "DelayConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def to_text(self) -> str:
        lines = [
            f"{gtype.value}={Decimal(self.delays_ps[gtype]) / 1000}"
            for gtype in GateType
        ]
        return "\n".join(lines) + "\n"


def _as_gate_type(key: Union[GateType, str]) -> GateType:
    if isinstance(key, GateType):
        return key
    try:
        return GateType[key]
    except KeyError:
        raise ConfigError(f"unknown gate type {key!r}") from None


def load_delay_config(source: str) -> DelayConfig:
    """Build a DelayConfig from flat key=value text (see DelayConfig.parse)."""
    return DelayConfig.parse(source)
