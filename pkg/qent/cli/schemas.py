from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, Field

FlagName = Literal["bot", "s", "d", "top"]
ComplexEntry = Annotated[list[float], Field(min_length=2, max_length=2)]
ComplexMatrixRows = list[list[ComplexEntry]]


class DensityFile(BaseModel):
    qubits: list[str] = Field(min_length=1)
    matrix: ComplexMatrixRows


class BranchFileItem(BaseModel):
    weight: float = Field(gt=0, le=1)
    vector: list[ComplexEntry]


class EnsembleFile(BaseModel):
    qubits: list[str] = Field(min_length=1)
    ancillas: int = Field(default=0, ge=0)
    branches: list[BranchFileItem]


class AbstractElementModel(BaseModel):
    flags: dict[str, FlagName]
    blocks: list[list[str]]


class BranchItem(BaseModel):
    weight: float
    path: list[bool]


class StateDump(BaseModel):
    qubits: list[str]
    trace: float
    residual: float
    converged: bool
    beta: dict[str, FlagName]
    reduced: dict[str, ComplexMatrixRows]
    matrix: ComplexMatrixRows | None = None


class EnsembleDump(BaseModel):
    ancillas: int
    residual: float
    branches: list[BranchItem]
    error: str | None = None


class SimulateResponse(BaseModel):
    program: str
    state: StateDump
    ensemble: EnsembleDump


class TracePointItem(BaseModel):
    point: str
    command: str
    element: AbstractElementModel


class GuardOverlapItem(BaseModel):
    point: str
    control: str
    target: str
    matched_cases: list[int]


class AnalyzeResponse(BaseModel):
    program: str
    input: AbstractElementModel
    result: AbstractElementModel
    text: str
    trace: list[TracePointItem] | None = None
    guard_overlaps: list[GuardOverlapItem] = Field(default_factory=list)


class SoundnessReportModel(BaseModel):
    verdict: Literal["PASS", "FAIL", "INCONCLUSIVE"]
    beta_ok: bool
    beta: dict[str, FlagName]
    claimed_flags: dict[str, FlagName]
    claimed_blocks: list[list[str]]
    witness: Literal["witnessed", "refuted_branch", "inconclusive"]
    residual: float
    converged: bool
    seed: int | None
    program: str
    reason: str | None = None


class FuzzSummaryModel(BaseModel):
    verdict: Literal["PASS", "FAIL", "INCONCLUSIVE"]
    cases: int
    passed: int
    failed: int
    inconclusive: int
    seed: int
    failing_seeds: list[int]
    inconclusive_seeds: list[int]
    summary: str


class ErrorResponse(BaseModel):
    error: str
    message: str
