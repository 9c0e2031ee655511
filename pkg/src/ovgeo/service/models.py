"""Pydantic request and response models for the verification service."""

from pydantic import BaseModel, Field


class FieldRequest(BaseModel):
    e: int = Field(ge=1)


class GroupRequest(BaseModel):
    e: int = Field(ge=1)
    enumerate: bool = False
    threshold: int = 10**6


class ChamberRequest(BaseModel):
    e: int = Field(ge=1)
    m: int = 5
    point: int | None = None


class VerifyRequest(BaseModel):
    e: int = Field(ge=1)
    m: int = 5
    suite: str = "all"
    tier: str = "full"
    seed: int = 0
    point: int | None = None


class ExportRequest(BaseModel):
    e: int = Field(ge=1)
    m: int = 5
    what: str
    format: str = "json"


class InfoResponse(BaseModel):
    info: dict


class VerifyResponse(BaseModel):
    report: dict
    text: list[str]
    passed: bool


class ExportResponse(BaseModel):
    content: str
    suggested_name: str
    nodes: int
    edges: int
