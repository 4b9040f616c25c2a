# Event records making up a sweep history
from typing import Annotated, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class BaseInit(BaseModel):
    # Base line swept with segment tuple lam
    model_config = ConfigDict(frozen=True)

    kind: Literal["base"] = "base"
    lam: Tuple[int, ...]


class WorkingK(BaseModel):
    # k working lines meet; kernel lines leave to the left or right
    model_config = ConfigDict(frozen=True)

    kind: Literal["working"] = "working"
    chosen: Tuple[int, ...]
    left: Tuple[int, ...] = ()
    right: Tuple[int, ...] = ()


class FrameSweep(BaseModel):
    # Next frame line: k-1 groups left to right, kernel lines per gap
    model_config = ConfigDict(frozen=True)

    kind: Literal["frame"] = "frame"
    groups: Tuple[Tuple[int, ...], ...]
    gaps: Tuple[Tuple[int, ...], ...]


class Close(BaseModel):
    # Closing 2-crossings per working line id
    model_config = ConfigDict(frozen=True)

    kind: Literal["close"] = "close"
    placements: Tuple[int, ...]


Event = Annotated[Union[BaseInit, WorkingK, FrameSweep, Close], Field(discriminator="kind")]

history_adapter = TypeAdapter(List[Event])


def dump_history(history) -> List[dict]:
    # JSON ready list of event dicts
    return history_adapter.dump_python(list(history), mode="json")


def load_history(raw) -> Tuple[Union[BaseInit, WorkingK, FrameSweep, Close], ...]:
    # Parse a list of event dicts
    return tuple(history_adapter.validate_python(raw))
