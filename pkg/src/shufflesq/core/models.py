"""Common enums shared across shufflesq."""

from __future__ import annotations

from enum import Enum


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    BUDGET = "budget"


class ReasonTag(str, Enum):
    """Why a word was rejected."""

    ODD_LENGTH = "odd-length"
    NOT_EVEN = "not-even"
    EXHAUSTED = "exhausted-search"
    THEOREM_ABBA = "theorem-abba"
    CLAIM_CL = "claim-cl"


class Rule(str, Enum):
    """Which procedure produced a verdict."""

    AUTO = "auto"
    SEARCH = "search"
    ORACLE = "oracle"
    TRIVIAL = "trivial"
    DULL = "dull"
    FEW_RUNS = "few-runs"
    SEPARATED_ONES = "separated-ones"
    THEOREM_ABBA = "theorem-abba"
    CLAIM_CL = "claim-cl"
    THS1 = "two-zero-runs"
    ONE_AND_TWO = "ones-and-twos"
    OMR = "omr-construction"


class OutputFormat(str, Enum):
    DENSE = "dense"
    RUNLENGTH = "runlength"
    JSON = "json"
