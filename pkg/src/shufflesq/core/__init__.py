"""Core utilities and models."""

from .config import AppConfig, SearchBudgets
from .graph import Edge, NestWitness, OrderedMultigraph, Vertex
from .models import OutputFormat, ReasonTag, Rule, Verdict
from .twins import Twins
from .words import Run, RunLengthWord, Word, parse_word, runs

__all__ = [
    "AppConfig",
    "SearchBudgets",
    "Edge",
    "NestWitness",
    "OrderedMultigraph",
    "Vertex",
    "OutputFormat",
    "ReasonTag",
    "Rule",
    "Verdict",
    "Twins",
    "Run",
    "RunLengthWord",
    "Word",
    "parse_word",
    "runs",
]
