"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

SCHEMA = "submax-lie/1"


class RankRequest(BaseModel):
    n: int = Field(ge=1, description="rank of the root system A_n")


class RankResponse(BaseModel):
    schema_: str = Field(default=SCHEMA, alias="schema")
    n: int
    p_rank: int
    submax_rank: int

    model_config = {"populate_by_name": True}


class TablesRequest(BaseModel):
    n: int = Field(ge=2)
    level: str = Field(default="submax", description="'max' or 'submax'")
    budget: int = Field(default=10**8, ge=1)
    compute: bool = Field(default=True,
                          description="run the brute-force cross-check")


class EnumerateRequest(BaseModel):
    n: int = Field(ge=1)
    r: int = Field(ge=0)
    maximal_only: bool = False
    budget: int = Field(default=10**8, ge=1)


class FiberRequest(BaseModel):
    n: int = Field(ge=2)
    p: Optional[int] = Field(default=None,
                             description="prime; default smallest standard")
    lt: Union[str, list[str]] = Field(
        description="named set (rad:k / odd / ev-low / ev-high) or root list"
    )
    order: str = Field(default="paper")
    strategy: str = Field(default="search")
    budget: int = Field(default=10**7, ge=1)
    allow_nonstandard: bool = False


class ConjugacyRequest(BaseModel):
    n: int = Field(ge=1)
    r1: Union[str, list[str]]
    r2: Union[str, list[str]]
    exhaustive: bool = False


class SampleRequest(BaseModel):
    kind: str = Field(description="'lt-lemma' or 'dichotomy'")
    n: int = Field(ge=2)
    p: Optional[int] = None
    samples: int = Field(default=1000, ge=1)
    seed: int = 0


class VerifyRequest(BaseModel):
    suite: Union[str, list[str]] = "all"
    n_max: int = Field(default=13, ge=2)


class ErrorBody(BaseModel):
    kind: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
