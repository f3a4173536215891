"""Run configuration: a single JSON document validated by pydantic."""
from __future__ import annotations

import json
from dataclasses import fields
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.params import ParamSet
from ..finite.results import SingleTimeQuery, TwoTimeQuery
from ..kpz.kernels import KernelConfig
from ..kpz.scaling import KPZCoords

Command = Literal["simulate", "exact", "two-time", "asymptotic", "validate", "diagnostic"]
Suite = Literal["exact-small", "one-step", "identity", "marginalization", "mc-concordance",
                "exponential", "asymptotic-anchor", "numerical-health", "kernel-limit"]
Rate = Union[str, float]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelConfig(_Strict):
    """Rates of the model; geometric rates given as strings ("1/3") stay exact."""
    kind: Literal["geometric", "exponential"] = "geometric"
    a: list[Rate] = Field(default_factory=lambda: ["1/2", "1/2", "1/2"])
    b: list[Rate] = Field(default_factory=lambda: ["1/2", "1/2"])
    alpha: list[float] = Field(default_factory=lambda: [0.5, 0.5, 0.5])
    beta: list[float] = Field(default_factory=lambda: [0.5, 0.5])

    @field_validator("a", "b")
    @classmethod
    def _rational(cls, v):
        for r in v:
            if isinstance(r, str):
                Fraction(r)     # raises ValueError on bad input
        return v

    def params(self) -> ParamSet:
        if self.kind == "geometric":
            return ParamSet.geometric(self.a, self.b)
        return ParamSet.exponential(self.alpha, self.beta)


class QueryConfig(_Strict):
    """Finite-size query.

    Two-time events use (m, n, h, M, H); single-time events use (m, cuts,
    thresholds); a transition probability uses (m, y).  ``grid`` lists (h, H)
    pairs for simulate.
    """
    x: list[float] = Field(default_factory=lambda: [0, 0])
    m: int = 1
    y: Optional[list[float]] = None
    cuts: Optional[list[int]] = None
    thresholds: Optional[list[float]] = None
    n: int = 1
    h: float = 2
    M: int = 2
    H: float = 4
    grid: Optional[list[tuple[float, float]]] = None
    method: Literal["residue", "quadrature"] = "residue"
    theta_radius: float = 1.5
    theta_nodes: Optional[int] = None

    @model_validator(mode="after")
    def _pairs(self):
        if (self.cuts is None) != (self.thresholds is None):
            raise ValueError("cuts and thresholds must be given together")
        return self

    def single_time(self) -> SingleTimeQuery:
        cuts = self.cuts or [len(self.x)]
        hs = self.thresholds or [self.h]
        return SingleTimeQuery(self.m, tuple(cuts), tuple(_num(v) for v in hs),
                               tuple(_num(v) for v in self.x))

    def two_time(self, h=None, H=None) -> TwoTimeQuery:
        return TwoTimeQuery(self.m, self.n, _num(self.h if h is None else h), self.M,
                            _num(self.H if H is None else H), tuple(_num(v) for v in self.x),
                            self.theta_radius, self.theta_nodes)


def _num(v):
    return int(v) if float(v).is_integer() else float(v)


class KernelOverrides(_Strict):
    """Optional overrides of the limit-kernel numerical settings."""
    d1: Optional[float] = None
    d2: Optional[float] = None
    D1: Optional[float] = None
    D2: Optional[float] = None
    mu: Optional[float] = None
    L: Optional[float] = None
    per_half: Optional[int] = None
    per_panel: Optional[int] = None
    max_panel: Optional[float] = None
    theta_radius: Optional[float] = None
    theta_nodes: Optional[int] = None
    decay_tol: Optional[float] = None
    auto_L: Optional[bool] = None

    def kernel_config(self) -> KernelConfig:
        names = {f.name for f in fields(KernelConfig)}
        return KernelConfig(**{k: v for k, v in self.model_dump().items()
                               if v is not None and k in names})


class AsymptoticConfig(_Strict):
    """Points are (t, x, xi) in KPZ units; ``initial`` picks the limit law."""
    initial: Literal["bbp", "brownian"] = "bbp"
    first: tuple[float, float, float] = (1.0, 0.0, 0.0)
    second: tuple[float, float, float] = (2.0, 0.0, 0.0)
    lambdas: list[float] = Field(default_factory=list)
    kernel: KernelOverrides = Field(default_factory=KernelOverrides)

    def coords(self):
        return KPZCoords(*self.first), KPZCoords(*self.second)


class DiagnosticConfig(_Strict):
    q: float = 0.25
    T_values: list[float] = Field(default_factory=lambda: [40.0, 80.0, 120.0])


class RunConfig(_Strict):
    command: Command = "exact"
    model: ModelConfig = Field(default_factory=ModelConfig)
    query: QueryConfig = Field(default_factory=QueryConfig)
    asymptotic: AsymptoticConfig = Field(default_factory=AsymptoticConfig)
    diagnostic: DiagnosticConfig = Field(default_factory=DiagnosticConfig)
    suite: Suite = "exact-small"
    seed: int = Field(0, ge=0)
    sample_count: int = Field(100_000, ge=1)
    workers: int = Field(1, ge=1)
    record_timings: bool = False
    out: Optional[str] = None
    format: Optional[Literal["csv", "json"]] = None


def load_config(path: str | Path | None, **overrides) -> RunConfig:
    """Read a JSON config and apply non-None top-level overrides."""
    data = json.loads(Path(path).read_text()) if path else {}
    data.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.model_validate(data)


def config_schema() -> dict:
    return RunConfig.model_json_schema()
