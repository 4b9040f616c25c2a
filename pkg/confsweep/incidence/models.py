# Pydantic records for incidence structures
from typing import List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Configuration(BaseModel):
    # n points, n lines, each line a sorted tuple of point indices
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    lines: Tuple[Tuple[int, ...], ...]
    point_labels: Optional[Tuple[str, ...]] = Field(default=None, exclude=True, repr=False)
    line_labels: Optional[Tuple[str, ...]] = Field(default=None, exclude=True, repr=False)

    @field_validator("lines", mode="before")
    @classmethod
    def _sort_lines(cls, value):
        # Points inside a line are kept sorted; line order is preserved
        return tuple(tuple(sorted(int(p) for p in line)) for line in value)

    @property
    def points_per_line(self) -> int:
        return self.k

    def lines_through(self, point: int) -> List[int]:
        # Indices of the lines incident with a point
        return [j for j, line in enumerate(self.lines) if point in line]


class VerificationReport(BaseModel):
    # Outcome of checking every configuration rule
    valid: bool
    violations: List[str] = Field(default_factory=list)
    per_line_two_crossings: int
    total_two_crossings: int
