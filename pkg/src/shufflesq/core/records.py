"""Machine-readable result records (JSON lines)."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from .graph import Edge, OrderedMultigraph, Vertex
from .models import ReasonTag, Rule, Verdict


class VertexPayload(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    letter_class: int = Field(alias="class", ge=0)
    capacity: PositiveInt


class EdgePayload(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=0)
    q: int = Field(ge=0)
    mu: PositiveInt


class GraphPayload(BaseModel):
    """``{vertices: [{class, capacity}], edges: [{p, q, mu}]}`` with 0-based endpoints."""

    model_config = ConfigDict(frozen=True)

    vertices: List[VertexPayload]
    edges: List[EdgePayload] = Field(default_factory=list)

    @classmethod
    def from_graph(cls, graph: OrderedMultigraph) -> "GraphPayload":
        return cls(
            vertices=[VertexPayload(letter_class=v.letter, capacity=v.capacity) for v in graph.vertices],
            edges=[EdgePayload(p=e.p, q=e.q, mu=e.mu) for e in graph.edges],
        )

    def to_graph(self) -> OrderedMultigraph:
        return OrderedMultigraph.build(
            (Vertex(item.letter_class, item.capacity) for item in self.vertices),
            (Edge(item.p, item.q, item.mu) for item in self.edges),
        )

    def canonical_json(self) -> str:
        return self.model_dump_json(by_alias=True)


class ResultRecord(BaseModel):
    """One line of ``decide``/``gaps``/``cuts``/``scan`` output."""

    word: str
    verdict: Optional[Verdict] = None
    rule: Optional[Rule] = None
    reason: Optional[ReasonTag] = None
    f: Optional[int] = Field(default=None, ge=0)
    g: Optional[int] = Field(default=None, ge=0)
    c: Optional[int] = Field(default=None, ge=0)
    cuts: Optional[List[int]] = None
    order: Optional[List[int]] = None
    assembled: Optional[str] = None
    optimal: bool = True
    certificate: Optional[GraphPayload] = None
    twins: Optional[str] = None
    line: Optional[int] = None
    nodes_expanded: int = 0
    time_ms: float = 0.0
    error: Optional[str] = None


class VerdictRecord(BaseModel):
    """Characterization output for a generated family member."""

    family: str
    verdict: Verdict
    rule: Rule
    rationale: str = ""
    witness: Optional[GraphPayload] = None


class CensusRow(BaseModel):
    n: int = Field(ge=0)
    k: int = Field(ge=1)
    even_words: int = Field(ge=0)
    squares: int = Field(ge=0)

    @property
    def density(self) -> float:
        return self.squares / self.even_words if self.even_words else 0.0


class GapCensusRow(BaseModel):
    length: int = Field(ge=0)
    max_gaps: int = Field(ge=0)
    word: str


class ScanConfig(BaseModel):
    """A validated scan request: exactly one input source."""

    file: Optional[Path] = None
    family: Optional[List[str]] = None
    exhaustive: Optional[PositiveInt] = None
    random: Optional[PositiveInt] = None
    max_length: PositiveInt = 24
    k: int = Field(default=2, ge=1, le=36)
    node_budget: PositiveInt = 2_000_000
    jobs: PositiveInt = 1
    seed: int = 20240601
    json_lines: bool = False

    @model_validator(mode="after")
    def _one_source(self) -> "ScanConfig":
        sources = [self.file, self.family, self.exhaustive, self.random]
        chosen = sum(source is not None for source in sources)
        if chosen != 1:
            raise ValueError(f"exactly one input source is required, got {chosen}")
        return self
