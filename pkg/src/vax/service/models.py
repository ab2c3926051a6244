"""Pydantic request/response models; also published under /api/schema."""

from __future__ import annotations

from pydantic import BaseModel, Field


class VariableMeta(BaseModel):
    name: str
    index: int
    importance: float
    edges: list[float]


class DatasetMeta(BaseModel):
    n_rows: int
    n_variables: int
    classes: list[str]
    class_counts: dict[str, int]
    variables: list[VariableMeta]


class MetaResponse(BaseModel):
    dataset: DatasetMeta
    manifest: dict


class Selector(BaseModel):
    variable: str
    low: float
    high: float


class HistogramCell(BaseModel):
    variable: str
    counts: list[int]


class PatternRow(BaseModel):
    pattern_id: int
    class_name: str = Field(alias="class")
    support: float
    confidence: float
    fet_p: float
    fet_significant: bool
    cumulative_coverage: float
    aggregated_from: int
    selectors: list[Selector]
    supported_instance_ids: list[int]
    cells: list[HistogramCell]

    model_config = {"populate_by_name": True}


class PatternsResponse(BaseModel):
    order: str
    total_patterns: int
    coverage: float
    rows: list[PatternRow]


class MapPoint(BaseModel):
    instance_id: int
    x: float
    y: float
    class_name: str = Field(alias="class")
    pattern_id: int | None

    model_config = {"populate_by_name": True}


class MapResponse(BaseModel):
    lambda_requested: str
    lambda_used: float
    stress: float
    silhouette_inverted: float
    points: list[MapPoint]


class SelectionRequest(BaseModel):
    instance_ids: list[int]


class InstancePattern(BaseModel):
    instance_id: int
    pattern_id: int | None


class SelectionResponse(BaseModel):
    instances: list[InstancePattern]
    pattern_ids: list[int]
    unsupported_instance_ids: list[int]
    suggested_filter: dict
