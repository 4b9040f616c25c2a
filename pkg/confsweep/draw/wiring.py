# Wiring-diagram layout of a sweep history and its SVG rendering
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import structlog
from jinja2 import Environment, PackageLoader, select_autoescape
from pydantic import BaseModel, Field

from confsweep.errors import MissingHistory
from confsweep.storage import ConfigurationRecord
from confsweep.sweep import Close, FrameSweep, iter_states, load_history, reference_order


logger = structlog.get_logger(__name__)

MARGIN = 40.0
COLUMN = 60.0
ROW = 30.0

XY = Tuple[float, float]


class Disk(BaseModel):
    # A point of the configuration; k wires pass through it
    x: float
    y: float
    label: str
    role: str = "working"


class Wire(BaseModel):
    # A working line traced through every sweep-line order
    line: int
    label: str
    points: List[XY] = Field(default_factory=list)


class FrameWire(BaseModel):
    # Horizontal wire of a frame line, dropping through its points at its event column
    index: int
    label: str
    points: List[XY] = Field(default_factory=list)


class WiringDiagram(BaseModel):
    n: int
    k: int
    width: float
    height: float
    frames: List[FrameWire]
    wires: List[Wire]
    disks: List[Disk]
    title: str = ""


_env = Environment(
    loader=PackageLoader("confsweep", "templates"),
    autoescape=select_autoescape(["svg", "xml"]),
    trim_blocks=True,
    lstrip_blocks=True,
)


def _column(c: int) -> float:
    return MARGIN + COLUMN * (c + 1)


def layout(history: Sequence[object]) -> WiringDiagram:
    # One column per sweep-line order, events drawn between neighbouring columns
    states = list(iter_states(history))
    first = states[0]
    n, k = first.params.n, first.params.k
    working = len(first.order)
    frame_y = [MARGIN + ROW * j for j in range(k)]
    top = MARGIN + ROW * (k + 1)

    def y_of(pos: int) -> float:
        return top + ROW * pos

    base = Disk(x=MARGIN, y=sum(frame_y) / k, label="0", role="base")
    disks: List[Disk] = [base]
    wires = [Wire(line=line, label=f"w{line}") for line in range(working)]
    frames = [FrameWire(index=j, label=f"f{j}", points=[(base.x, base.y)]) for j in range(k)]
    drops: Dict[int, Tuple[float, List[float]]] = {}

    def add_points(new_points, order: Sequence[int], x: float) -> None:
        # Disks for freshly created points, pulling their lines together
        position = {line: pos for pos, line in enumerate(order)}
        for frame_index, members in new_points:
            y = sum(y_of(position[line]) for line in members) / len(members)
            disks.append(Disk(x=x, y=y, label=str(len(disks)), role="frame" if frame_index is not None else "working"))
            for line in members:
                wires[line].points.append((x, y))
            if frame_index is not None:
                drops.setdefault(frame_index, (x, []))[1].append(y)

    # Base line points sit in the first column
    add_points(first.points, first.order, _column(0))
    grouped = {line for _, members in first.points for line in members}
    for pos, line in enumerate(first.order):
        if line not in grouped:
            wires[line].points.append((_column(0), y_of(pos)))

    for c in range(1, len(states)):
        before, after = states[c - 1], states[c]
        middle = (_column(c - 1) + _column(c)) / 2
        add_points(after.points[len(before.points):], before.order, middle)
        for pos, line in enumerate(after.order):
            wires[line].points.append((_column(c), y_of(pos)))

    last = len(states) - 1
    if history and isinstance(history[-1], Close):
        last += 1
        for pos, line in enumerate(reference_order(states[-1])):
            wires[line].points.append((_column(last), y_of(pos)))

    for index, wire in enumerate(frames):
        x, ys = drops.get(index, (_column(0), []))
        wire.points += [(MARGIN + COLUMN / 2, frame_y[index]), (x, frame_y[index])]
        if ys:
            wire.points.append((x, max(ys)))

    frame_events = sum(1 for event in history if isinstance(event, FrameSweep))
    logger.debug("Wiring laid out", n=n, k=k, columns=last + 1, frame_events=frame_events)
    return WiringDiagram(
        n=n,
        k=k,
        width=_column(last) + MARGIN,
        height=y_of(working - 1) + MARGIN,
        frames=frames,
        wires=wires,
        disks=disks,
        title=f"({n},{k}) base {list(first.lam)}",
    )


def render(diagram: WiringDiagram) -> str:
    return _env.get_template("wiring.svg.j2").render(diagram=diagram)


def draw(records: Iterable[ConfigurationRecord], out_dir: Path) -> List[Path]:
    # One SVG per record in input order
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for index, record in enumerate(records):
        if not record.history:
            raise MissingHistory(f"record {index} carries no sweep history")
        diagram = layout(load_history(record.history))
        path = out_dir / f"config_{index:05d}.svg"
        path.write_text(render(diagram), encoding="utf-8")
        written.append(path)
    logger.info("Diagrams written", count=len(written), out_dir=str(out_dir))
    return written
