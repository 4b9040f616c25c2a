from .wiring import Disk, FrameWire, Wire, WiringDiagram, draw, layout, render

__all__ = ["Disk", "FrameWire", "Wire", "WiringDiagram", "draw", "layout", "render"]
