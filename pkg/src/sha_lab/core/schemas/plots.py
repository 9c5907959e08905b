"""Figure specification schema."""

from typing import Optional

from pydantic import BaseModel, Field

from ..enums import PlotKind


class PlotSeries(BaseModel):
    """One named series; ``y`` entries may be None for absent points."""

    name: str
    x: list[float] = Field(default_factory=list)
    y: list[Optional[float]] = Field(default_factory=list)


class PlotSpec(BaseModel):
    """Data and labels for one static figure."""

    kind: PlotKind
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    categories: list[str] = Field(
        default_factory=list, description="Bar groups, or heatmap row/column labels"
    )
    series: list[PlotSeries] = Field(default_factory=list)
    matrix: Optional[list[list[float]]] = Field(None, description="Heatmap cells")
    log_x: bool = False
