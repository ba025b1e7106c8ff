"""Shared value types: tokens, edit operations, alignments and scores."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Tuple

Token = str
TokenSeq = Tuple[Token, ...]

COR = "COR"
SUB = "SUB"
INS = "INS"
DEL = "DEL"

# Tie-break order shared by every aligner: smaller rank wins among equal-cost paths.
OP_RANK = {COR: 0, SUB: 1, DEL: 2, INS: 3}


def tokenize(text: str) -> TokenSeq:
    """Split on runs of whitespace, dropping empty fragments."""
    return tuple(text.split())


@dataclass(frozen=True)
class EditOp:
    kind: str
    ref: Optional[Token] = None
    hyp: Optional[Token] = None

    def __post_init__(self):
        if self.kind in (COR, SUB):
            if self.ref is None or self.hyp is None:
                raise ValueError(f"{self.kind} needs both tokens")
            if (self.kind == COR) != (self.ref == self.hyp):
                raise ValueError(f"{self.kind} with ref={self.ref!r} hyp={self.hyp!r}")
        elif self.kind == INS:
            if self.ref is not None or self.hyp is None:
                raise ValueError("INS carries a hyp token only")
        elif self.kind == DEL:
            if self.hyp is not None or self.ref is None:
                raise ValueError("DEL carries a ref token only")
        else:
            raise ValueError(f"unknown edit kind {self.kind!r}")


@dataclass(frozen=True)
class AlternativeSet:
    """Token sequences treated as interchangeable on the hypothesis side."""

    members: Tuple[TokenSeq, ...]

    def __post_init__(self):
        members = tuple(tuple(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise ValueError("an alternative set needs at least two members")
        if any(len(m) == 0 for m in members):
            raise ValueError("alternative members must be non-empty")
        if len(set(members)) != len(members):
            raise ValueError("duplicate alternative member")

    @classmethod
    def of(cls, *members: str) -> "AlternativeSet":
        return cls(tuple(tokenize(m) for m in members))


@dataclass(frozen=True)
class Alignment:
    ops: Tuple[EditOp, ...]
    n_cor: int = field(init=False)
    n_sub: int = field(init=False)
    n_ins: int = field(init=False)
    n_del: int = field(init=False)

    def __post_init__(self):
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        tally = {COR: 0, SUB: 0, INS: 0, DEL: 0}
        for op in ops:
            tally[op.kind] += 1
        object.__setattr__(self, "n_cor", tally[COR])
        object.__setattr__(self, "n_sub", tally[SUB])
        object.__setattr__(self, "n_ins", tally[INS])
        object.__setattr__(self, "n_del", tally[DEL])

    @property
    def cost(self) -> int:
        return self.n_sub + self.n_ins + self.n_del

    @property
    def ref_tokens(self) -> TokenSeq:
        return tuple(op.ref for op in self.ops if op.ref is not None)

    @property
    def hyp_tokens(self) -> TokenSeq:
        return tuple(op.hyp for op in self.ops if op.hyp is not None)

    @property
    def kinds(self) -> Tuple[str, ...]:
        return tuple(op.kind for op in self.ops)

    def counts(self) -> dict:
        return {"cor": self.n_cor, "sub": self.n_sub, "ins": self.n_ins, "del": self.n_del}


@dataclass(frozen=True)
class UtteranceScore:
    uid: str
    alignment: Alignment
    ref_len: int
    hyp_len: int
    ter: Optional[Fraction]
    mter: Fraction

    @property
    def cost(self) -> int:
        return self.alignment.cost


def percent(value: Optional[Fraction]) -> Optional[str]:
    """Render a ratio as a percentage with 2 decimals, rounding half away from zero."""
    if value is None:
        return None
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    hundredths = (2 * num * 10000 + den) // (2 * den)
    return f"{sign}{hundredths // 100}.{hundredths % 100:02d}"


def join(tokens: Iterable[Token]) -> str:
    return " ".join(tokens)
