# Wiring-diagram layout and SVG output
import pytest

from confsweep.draw import draw, layout, render
from confsweep.errors import MissingHistory
from confsweep.storage import ConfigurationRecord
from confsweep.sweep import SweepOptions, enumerate_sweep, load_history


def test_layout_counts(sweep_9_3):
    diagram = layout(load_history(sweep_9_3[0].history))

    assert len(diagram.frames) == 3
    assert len(diagram.wires) == 6
    assert len(diagram.disks) == 9
    assert diagram.disks[0].role == "base"
    assert all(wire.points for wire in diagram.wires)


def test_wires_run_left_to_right(sweep_9_3):
    diagram = layout(load_history(sweep_9_3[0].history))

    for wire in diagram.wires:
        xs = [x for x, _ in wire.points]
        assert xs == sorted(xs)


def test_svg_elements(sweep_9_3):
    svg = render(layout(load_history(sweep_9_3[0].history)))

    assert svg.startswith("<?xml")
    assert svg.count('<polyline class="working"') == 6
    assert svg.count('<polyline class="frame"') == 3
    assert svg.count("<circle") == 9


def test_draw_writes_one_file_per_record(tmp_path, sweep_9_3):
    written = draw(sweep_9_3[:2], tmp_path / "svg")

    assert [path.name for path in written] == ["config_00000.svg", "config_00001.svg"]
    assert all(path.read_text(encoding="utf-8").rstrip().endswith("</svg>") for path in written)


def test_draw_empty_input(tmp_path):
    assert draw([], tmp_path) == []


def test_draw_needs_history(tmp_path, fano):
    record = ConfigurationRecord(n=7, k=3, lines=[list(line) for line in fano.lines])

    with pytest.raises(MissingHistory):
        draw([record], tmp_path)


@pytest.mark.slow
def test_17_4_drawing(tmp_path):
    (record,) = list(enumerate_sweep(17, 4, SweepOptions(split_depth=2)))[:1]

    svg = render(layout(load_history(record.history)))

    assert svg.count('<polyline class="working"') == 13
    assert svg.count("<circle") == 17
