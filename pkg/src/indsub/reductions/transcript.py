"""Records of simulated oracle queries made by the reductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Query:
    n_vertices: int
    k: int
    response: int | None


@dataclass
class Stage:
    name: str
    queries: list[Query] = field(default_factory=list)
    output: Any = None
    # the largest query size the reduction is allowed to make at this stage
    query_bound: int | None = None

    def record(self, n_vertices: int, k: int, response: int | None) -> None:
        self.queries.append(Query(n_vertices, k, response))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "queries": [{"n_vertices": q.n_vertices, "k": q.k, "response": _num(q.response)}
                        for q in self.queries],
            "query_bound": self.query_bound,
            "output": _jsonable(self.output),
        }


@dataclass
class PipelineTranscript:
    stages: list[Stage] = field(default_factory=list)
    final: Any = None
    modulus: int | None = None
    seed: int | None = None
    repetitions: list["PipelineTranscript"] = field(default_factory=list)

    def stage(self, name: str, query_bound: int | None = None) -> Stage:
        s = Stage(name, query_bound=query_bound)
        self.stages.append(s)
        return s

    @property
    def total_queries(self) -> int:
        return sum(len(s.queries) for s in self.stages) + sum(r.total_queries for r in self.repetitions)

    def to_dict(self) -> dict:
        out = {
            "stages": [s.to_dict() for s in self.stages],
            "final": _jsonable(self.final),
            "modulus": self.modulus,
            "seed": self.seed,
        }
        if self.repetitions:
            out["repetitions"] = [r.to_dict() for r in self.repetitions]
        return out


def _num(x):
    # counts go out as decimal strings so 64-bit JSON consumers cannot truncate them
    return None if x is None else str(x)


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)
