"""Verdicts and failure certificates shared by the fast checkers and the oracles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .module import Element, ModuleShape


@dataclass(frozen=True)
class KFailure:
    """w in W with h(p^n w) = n + r, yet no w~ in W has p^n w~ = p^n w and h(w~) >= r."""

    n: int
    r: int
    witness: Element
    kind = "K"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "r": self.r, "witness": list(self.witness.coords)}


@dataclass(frozen=True)
class FPPFailure:
    """x in W meet (M^{s+1}_k + M^s_{k-1}) lying outside (W meet M^{s+1}_k) + (W meet M^s_{k-1})."""

    s: int
    k: int
    witness: Element
    kind = "FPP"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": self.s, "k": self.k, "witness": list(self.witness.coords)}


@dataclass(frozen=True)
class BFailure:
    """A nonzero x in W that is not a sum of regular elements of W with strictly
    decreasing exponents and heights."""

    witness: Element
    kind = "B"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness.coords)}


Certificate = Union[KFailure, FPPFailure, BFailure]


@dataclass(frozen=True)
class RegularityReport:
    check: str
    verdict: bool
    certificate: Optional[Certificate] = None

    def __post_init__(self):
        if self.verdict and self.certificate is not None:
            raise ValueError("a passing report carries no certificate")
        if not self.verdict and self.certificate is None:
            raise ValueError("a failing report needs a certificate")

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def certificate_from_dict(shape: ModuleShape, d: Optional[dict]) -> Optional[Certificate]:
    if d is None:
        return None
    w = shape.element(d["witness"])
    if d["kind"] == "K":
        return KFailure(d["n"], d["r"], w)
    if d["kind"] == "FPP":
        return FPPFailure(d["s"], d["k"], w)
    if d["kind"] == "B":
        return BFailure(w)
    raise ValueError(f"unknown certificate kind {d['kind']!r}")


def report_from_dict(shape: ModuleShape, d: dict) -> RegularityReport:
    return RegularityReport(d["check"], d["verdict"], certificate_from_dict(shape, d["certificate"]))
