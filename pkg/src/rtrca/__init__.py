"""Event-driven simulation and verification of dual-rail asynchronous adders.

The package generates early-output and strong-indication full adders and
their ripple-carry cascades, simulates them under the 4-phase return-to-zero
handshake with exact picosecond timing, measures forward and reverse
latencies, checks relative-timing assumptions and orphan freedom, and
reproduces the analytic cycle-time model for the five adder latency classes.
"""

from .gates import (
    ConfigError,
    DEFAULT_DELAYS_PS,
    DelayConfig,
    GateArityError,
    GateState,
    GateType,
    celement_via_ao222_feedback,
    eval_gate,
    load_delay_config,
    support_pins,
)
from .netlist import (
    DecodeResult,
    DecodeStatus,
    DualRailPort,
    GateInstance,
    NetKind,
    Netlist,
    NetlistError,
    assemble,
    decode_outputs,
    encode_word,
    validate,
)
from .adders import (
    AdderKind,
    RcaDescriptor,
    build_completion_detector,
    build_dims_fa,
    build_early_output_fa,
    build_rca,
    with_completion_detector,
)
from .sim import (
    BatchReport,
    CycleReport,
    DeadlockError,
    Event,
    SimulationLimitError,
    StimulusError,
    Trace,
    adder_io,
    exhaustive_vectors,
    parse_vector_file,
    random_vectors,
    run_handshake_cycle,
    run_skewed_rtz,
    run_vectors,
    simulate,
)
from .vcd import parse_vcd, write_vcd
from .verify import (
    CriticalPathReport,
    DisjointReport,
    FULL_ADDER_COVERS,
    IndicationVerdict,
    OrphanFinding,
    RtViolation,
    SlackReport,
    StructureError,
    Witness,
    check_disjoint_cover,
    check_relative_timing,
    classify_indication,
    critical_path_report,
    detect_orphans,
    find_rtz_skew_threshold,
    static_rt_slack,
)
from .timing import (
    AdderRow,
    BUILTIN_ROWS,
    CARRY_LENGTHS,
    GOLDEN_TABLE,
    TableRow,
    TimingClass,
    cycle_time_estimate,
    generate_table,
    generate_table4,
    load_rows,
    max_golden_deviation,
    table_to_csv,
)

__version__ = "0.1.0"
