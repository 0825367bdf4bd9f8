"""Built-in example circuits: the mod-60 counter coursework fixture and
friends.

These are constructed programmatically (a JSON fixture of the counter
is also committed under tests/fixtures and checked against this
builder).  The counter is the classic two-digit BCD design: two
synchronous 4-bit counters, decade/mod-6 wrap via NAND-gated loads,
BCD-to-seven-segment decoders, and two digit displays.
"""

from __future__ import annotations

from .logic import ZERO, ONE
from .netlist import Circuit, ComponentInstance, Net, PinRef, TopPort
from . import stimulus as st


def _net(net_id, *endpoints, label=None):
    return Net(id=net_id, endpoints=frozenset(PinRef(c, p) for c, p in endpoints), label=label)


def nand_demo() -> Circuit:
    """One NAND gate: inputs a, b; output y."""
    return Circuit(
        name="nand_demo",
        instances=(ComponentInstance(id="u1", part="74LS00", position=(200, 120)),),
        nets=(
            _net("n_a", ("u1", "1A")),
            _net("n_b", ("u1", "1B")),
            _net("n_y", ("u1", "1Y")),
        ),
        top_inputs=(TopPort("a", "n_a"), TopPort("b", "n_b")),
        top_outputs=(TopPort("y", "n_y"),),
    )


def feedthrough() -> Circuit:
    """No logic at all: one top input wired straight to one top output."""
    return Circuit(
        name="feedthrough",
        nets=(Net(id="n1", endpoints=frozenset()),),
        top_inputs=(TopPort("a", "n1"),),
        top_outputs=(TopPort("y", "n1"),),
    )


def _bcd_counter(name: str, tens_wrap_bit: str) -> Circuit:
    """Two cascaded 4-bit counters with BCD wrap logic.

    ``tens_wrap_bit`` is the tens-counter output ANDed with QA to detect
    the wrap count: "QC" detects 5 (mod-60), "QD" detects 9 (mod-100).
    """
    instances = (
        ComponentInstance(id="u_ones", part="74LS163", position=(240, 160)),
        ComponentInstance(id="u_tens", part="74LS163", position=(240, 360)),
        ComponentInstance(id="u_nand", part="74LS00", position=(440, 260)),
        ComponentInstance(id="u_and", part="74LS08", position=(440, 420)),
        ComponentInstance(id="u_dec1", part="7448", position=(640, 160)),
        ComponentInstance(id="u_dec10", part="7448", position=(640, 360)),
        ComponentInstance(id="u_seg1", part="SEVEN_SEG", position=(840, 160)),
        ComponentInstance(id="u_seg10", part="SEVEN_SEG", position=(840, 360)),
        ComponentInstance(id="u_vcc", part="VCC", position=(80, 80)),
        ComponentInstance(id="u_gnd", part="GND", position=(80, 480)),
    )
    # the tens wrap detector ANDs QA with QC (count 5) or QD (count 9)
    tens_q = {
        "n_q10_0": [("u_tens", "QA"), ("u_dec10", "A"), ("u_and", "2B")],
        "n_q10_1": [("u_tens", "QB"), ("u_dec10", "B")],
        "n_q10_2": [("u_tens", "QC"), ("u_dec10", "C")],
        "n_q10_3": [("u_tens", "QD"), ("u_dec10", "D")],
    }
    tens_q["n_q10_2" if tens_wrap_bit == "QC" else "n_q10_3"].append(("u_and", "2A"))
    nets = [
        _net("n_clk", ("u_ones", "CLK"), ("u_tens", "CLK"), label="clk"),
        _net("n_clr", ("u_ones", "CLR"), ("u_tens", "CLR"), label="clr"),
        _net(
            "n_vcc",
            ("u_vcc", "Y"), ("u_ones", "ENP"), ("u_ones", "ENT"),
            ("u_nand", "3A"), ("u_nand", "3B"), ("u_nand", "4A"), ("u_nand", "4B"),
            ("u_and", "3A"), ("u_and", "3B"), ("u_and", "4A"), ("u_and", "4B"),
        ),
        _net(
            "n_gnd",
            ("u_gnd", "Y"),
            ("u_ones", "A"), ("u_ones", "B"), ("u_ones", "C"), ("u_ones", "D"),
            ("u_tens", "A"), ("u_tens", "B"), ("u_tens", "C"), ("u_tens", "D"),
        ),
        _net("n_q1_0", ("u_ones", "QA"), ("u_dec1", "A"), ("u_nand", "1B"), ("u_and", "1B")),
        _net("n_q1_1", ("u_ones", "QB"), ("u_dec1", "B")),
        _net("n_q1_2", ("u_ones", "QC"), ("u_dec1", "C")),
        _net("n_q1_3", ("u_ones", "QD"), ("u_dec1", "D"), ("u_nand", "1A"), ("u_and", "1A")),
        _net("n_ones9", ("u_and", "1Y"), ("u_tens", "ENP"), ("u_tens", "ENT"), ("u_nand", "2A")),
        _net("n_load1", ("u_nand", "1Y"), ("u_ones", "LOAD")),
        _net("n_tens5", ("u_and", "2Y"), ("u_nand", "2B")),
        _net("n_load10", ("u_nand", "2Y"), ("u_tens", "LOAD")),
    ]
    nets += [_net(net_id, *eps) for net_id, eps in tens_q.items()]
    for digit, dec in (("1", "u_dec1"), ("10", "u_dec10")):
        seg_disp = "u_seg1" if digit == "1" else "u_seg10"
        for seg in "abcdefg":
            nets.append(_net(f"n_seg{digit}_{seg}", (dec, f"O{seg.upper()}"), (seg_disp, seg)))

    top_outputs = [TopPort(f"q_ones_{i}", f"n_q1_{i}") for i in range(4)]
    top_outputs += [TopPort(f"q_tens_{i}", f"n_q10_{i}") for i in range(4)]
    top_outputs += [TopPort(f"seg_ones_{s}", f"n_seg1_{s}") for s in "abcdefg"]
    top_outputs += [TopPort(f"seg_tens_{s}", f"n_seg10_{s}") for s in "abcdefg"]
    return Circuit(
        name=name,
        instances=instances,
        nets=tuple(nets),
        top_inputs=(TopPort("clk", "n_clk"), TopPort("clr", "n_clr")),
        top_outputs=tuple(top_outputs),
    )


def counter60() -> Circuit:
    """The 0-59 two-digit BCD counter with seven-segment displays."""
    return _bcd_counter("counter60", "QC")


def counter100() -> Circuit:
    """The classic wrong answer: both digits count decades (0-99)."""
    return _bcd_counter("counter100", "QD")


def inverter_ring() -> Circuit:
    """Three inverters in a loop; free-runs with a 60 ns period."""
    instances = tuple(
        ComponentInstance(id=f"u{i}", part="74LS04", params={"init_out": seed}, position=(150 * i, 100))
        for i, seed in ((1, 0), (2, 1), (3, 0))
    )
    nets = (
        _net("n_a", ("u1", "1Y"), ("u2", "1A")),
        _net("n_b", ("u2", "1Y"), ("u3", "1A")),
        _net("n_c", ("u3", "1Y"), ("u1", "1A")),
    )
    return Circuit(name="inverter_ring", instances=instances, nets=nets)


def delta_loop() -> Circuit:
    """Zero-delay XOR fed back on itself: stalls in delta cycles."""
    instances = (
        ComponentInstance(id="u1", part="74LS86", params={"delay_ns": 0, "init_out": 0}),
        ComponentInstance(id="u_vcc", part="VCC"),
    )
    nets = (
        _net("n_fb", ("u1", "1Y"), ("u1", "1A")),
        _net("n_hi", ("u_vcc", "Y"), ("u1", "1B")),
    )
    return Circuit(name="delta_loop", instances=instances, nets=nets)


def output_conflict() -> Circuit:
    """Two gate outputs wired together; fails validation."""
    return Circuit(
        name="output_conflict",
        instances=(
            ComponentInstance(id="u1", part="74LS00"),
            ComponentInstance(id="u2", part="74LS04"),
        ),
        nets=(_net("n_bad", ("u1", "1Y"), ("u2", "1Y")),),
    )


def short_circuit() -> Circuit:
    """VCC tied straight to GND; fails validation."""
    return Circuit(
        name="short_circuit",
        instances=(
            ComponentInstance(id="u_vcc", part="VCC"),
            ComponentInstance(id="u_gnd", part="GND"),
        ),
        nets=(_net("n_bad", ("u_vcc", "Y"), ("u_gnd", "Y")),),
    )


# ---------------------------------------------------------------------------
# counter coursework stimulus / test points

CLOCK_50HZ_PERIOD_NS = 20_000_000


def counter_stimulus_50hz(edges: int = 61) -> st.StimulusSet:
    """A 50 Hz clock (20 ms period) running for the given rising-edge count.

    Rising edges land at 10 ms + k * 20 ms; the horizon leaves half a
    period of settle room after the last one.
    """
    horizon = CLOCK_50HZ_PERIOD_NS // 2 + edges * CLOCK_50HZ_PERIOD_NS
    return st.StimulusSet(
        assignments={"clk": st.clock(50), "clr": st.constant(ONE)},
        horizon_ns=horizon,
    )


def counter_rising_edge_times(edges: int, period_ns: int = CLOCK_50HZ_PERIOD_NS) -> list[int]:
    first = period_ns // 2
    return [first + k * period_ns for k in range(edges)]


BCD_OUTPUTS = tuple([f"q_ones_{i}" for i in range(4)] + [f"q_tens_{i}" for i in range(4)])


def counter60_vhdl_source() -> str:
    """A behavioral 0-59 counter the way a student would write it: two
    cascaded mod-10 / mod-6 processes over 4-bit vectors."""
    return """\
-- behavioral two-digit BCD counter, counts 00..59

entity counter60_behav is
  port (
    clk : in std_logic;
    clr : in std_logic;
    q_ones_0, q_ones_1, q_ones_2, q_ones_3 : out std_logic;
    q_tens_0, q_tens_1, q_tens_2, q_tens_3 : out std_logic
  );
end entity;

architecture behavior of counter60_behav is
  signal ones : std_logic_vector(3 downto 0) := "0000";
  signal tens : std_logic_vector(3 downto 0) := "0000";
begin
  count_ones : process (clk, clr)
  begin
    if clr = '0' then
      ones <= "0000";
    elsif rising_edge(clk) then
      if ones = "1001" then
        ones <= "0000";
      else
        ones <= ones + 1;
      end if;
    end if;
  end process;

  count_tens : process (clk, clr)
  begin
    if clr = '0' then
      tens <= "0000";
    elsif rising_edge(clk) then
      if ones = "1001" then
        if tens = "0101" then
          tens <= "0000";
        else
          tens <= tens + 1;
        end if;
      end if;
    end if;
  end process;

  q_ones_0 <= ones(0);
  q_ones_1 <= ones(1);
  q_ones_2 <= ones(2);
  q_ones_3 <= ones(3);
  q_tens_0 <= tens(0);
  q_tens_1 <= tens(1);
  q_tens_2 <= tens(2);
  q_tens_3 <= tens(3);
end architecture;
"""

TEST_CLOCK_HZ = 1_000_000  # grading test points run at 1 MHz to keep horizons short


def counter_test_points():
    """The four-point grading fixture for the 0-59 counter homework:
    reset behavior, the 9 -> 10 carry, the 59 -> 0 wrap, and a
    mid-count spot check."""
    from .grader import TestPoint

    period = 1_000_000_000 // TEST_CLOCK_HZ

    def clocked(edges: int, clr=ONE):
        horizon = period // 2 + edges * period
        return st.StimulusSet(
            assignments={"clk": st.clock(TEST_CLOCK_HZ), "clr": st.constant(clr)},
            horizon_ns=horizon,
        )

    def after_edges(*counts):
        # one sample just before the edge following the n-th edge
        return tuple(period // 2 + n * period - 1 for n in counts)

    return [
        TestPoint(
            id="reset",
            stimulus=clocked(4, clr=ZERO),
            observed=BCD_OUTPUTS,
            sample_times_ns=after_edges(2, 4),
        ),
        TestPoint(
            id="carry_9_to_10",
            stimulus=clocked(11),
            observed=BCD_OUTPUTS,
            sample_times_ns=after_edges(9, 10, 11),
        ),
        TestPoint(
            id="wrap_59_to_0",
            stimulus=clocked(62),
            observed=BCD_OUTPUTS,
            sample_times_ns=after_edges(59, 60, 61),
        ),
        TestPoint(
            id="spot_check_45",
            stimulus=clocked(46),
            observed=BCD_OUTPUTS,
            sample_times_ns=after_edges(45),
        ),
    ]
