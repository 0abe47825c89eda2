"""Command dispatcher and interactive shell for shufflesq."""

from __future__ import annotations

import logging
import shlex
import sys
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from ..core.config import AppConfig
from ..core.errors import ShuffleError
from ..core.families import FamilySpec, generate
from ..core.graph import export_dot, graph_from_twins, twins_from_graph
from ..core.models import OutputFormat, Rule, Verdict
from ..core.records import GraphPayload, ResultRecord, ScanConfig, VerdictRecord
from ..core.twins import Twins, canonicalize, is_canonical, require_valid
from ..core.words import Word, format_word, parse_word, read_words
from ..services.constructions import build_omr_twins
from ..services.container import ServiceContainer
from ..services.scanner import run_census, run_scan
from ..services.solver import Certificate, CutWitness
from .render import census_table, gap_table, twins_text

console = Console()

PROMPT = "sq> "

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

_GLOBAL_VALUE_FLAGS = {"--format": "output_format", "--budget": "node_budget", "--jobs": "jobs", "--seed": "seed"}

logger = logging.getLogger(__name__)


class CommandError(Exception):
    """Raised when command parsing or validation fails."""


def _timestamp() -> str:
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def _emit(text: str) -> None:
    console.print(text, soft_wrap=True, markup=False, highlight=False)


def _status(rule: str, action: str, detail: str = "") -> None:
    suffix = f" {detail}" if detail else ""
    _emit(f"[{_timestamp()}] {rule.upper()} {action}{suffix}")


def configure_logging(level: str) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]", handlers=[handler], force=True)


@dataclass(slots=True)
class CliSession:
    """Configuration plus wired services for one CLI run."""

    services: ServiceContainer

    @classmethod
    def create(cls, overrides: Optional[Dict[str, object]] = None) -> "CliSession":
        config = AppConfig.load(dict(overrides or {}))
        return cls(services=ServiceContainer.build(config))

    @property
    def config(self) -> AppConfig:
        return self.services.config

    @property
    def output_format(self) -> OutputFormat:
        return OutputFormat(self.config.output_format)


def _cut_fields(witness: Optional[CutWitness]) -> Dict[str, object]:
    if witness is None:
        return {}
    return {
        "c": witness.c,
        "cuts": list(witness.cuts),
        "order": list(witness.order),
        "assembled": format_word(witness.assembled()),
    }


def _split_options(args: Sequence[str]) -> Tuple[List[str], Dict[str, List[str]]]:
    """Positional tokens first, then ``--name value ...`` groups."""

    positional: List[str] = []
    options: Dict[str, List[str]] = {}
    current: Optional[List[str]] = None
    for token in args:
        if token.startswith("--") and len(token) > 2:
            current = options.setdefault(token[2:], [])
        elif current is not None:
            current.append(token)
        else:
            positional.append(token)
    return positional, options


def _parse_positions(token: str, label: str) -> List[int]:
    cleaned = token.strip().strip("{}")
    if not cleaned:
        return []
    try:
        return [int(part) for part in cleaned.split(",") if part.strip()]
    except ValueError as exc:
        raise CommandError(f"Invalid {label}; expected comma-separated 1-based positions") from exc


class CommandDispatcher:
    """Parse and execute shuffle-square commands."""

    def __init__(self, session: CliSession) -> None:
        self.session = session
        self.services = session.services

    def execute(self, tokens: Sequence[str]) -> int:
        if not tokens:
            return 0
        if tokens[0].lower() in {"sq", "shufflesq"}:
            tokens = tokens[1:]
            if not tokens:
                return 0
        command = tokens[0].lower()
        handler = getattr(self, f"do_{command}", None)
        if handler is None:
            raise CommandError(f"Unknown command: {command}")
        return handler(tokens[1:]) or 0

    def do_help(self, _: Sequence[str]) -> int:
        console.print(
            "Available commands: decide, gaps, cuts, reverse, rotations, twins, canonicalize, generate, census, export, scan, help, quit"
        )
        console.print("Global flags: --format dense|runlength|json, --budget N, --jobs N, --seed N, --verbose.")
        console.print("Words are dense (100110) or run-length (\"1 0^2 1^2 0\"); --family NAME ARGS builds one.")
        return 0

    # --------------------------------------------------------------- inputs

    def _parse_int(self, token: str, label: str, *, minimum: int = 0) -> int:
        try:
            value = int(token)
        except ValueError as exc:
            raise CommandError(f"Invalid {label}; expected integer") from exc
        if value < minimum:
            raise CommandError(f"{label} must be >= {minimum}")
        return value

    def _single_option(self, options: Dict[str, List[str]], name: str) -> Optional[str]:
        values = options.get(name)
        if values is None:
            return None
        if len(values) != 1:
            raise CommandError(f"--{name} takes exactly one value")
        return values[0]

    def _word_and_label(self, positional: Sequence[str], options: Dict[str, List[str]]) -> Tuple[Word, str]:
        family = options.get("family")
        if family is not None:
            if not family:
                raise CommandError("Usage: --family NAME [ARGS...]")
            spec = FamilySpec.parse(family[0], family[1:])
            return generate(spec), str(spec)
        if len(positional) != 1:
            raise CommandError("Expected exactly one word (quote run-length words)")
        word = parse_word(positional[0])
        return word, format_word(word)

    def _words(self, positional: Sequence[str], options: Dict[str, List[str]]) -> List[Tuple[Optional[int], Word]]:
        path = self._single_option(options, "file")
        if path is None:
            return [(None, self._word_and_label(positional, options)[0])]
        try:
            with Path(path).open("r", encoding="utf-8") as handle:
                return list(read_words(handle))
        except OSError as exc:
            raise CommandError(f"Cannot read {path}: {exc.strerror}") from exc

    def _twins(self, word: Word, options: Dict[str, List[str]]) -> Twins:
        x_token = self._single_option(options, "x")
        y_token = self._single_option(options, "y")
        if x_token is None or y_token is None:
            raise CommandError("Twins need --x and --y position lists (1-based)")
        tw = Twins.from_one_based(word, _parse_positions(x_token, "--x"), _parse_positions(y_token, "--y"))
        require_valid(tw)
        return tw

    # ------------------------------------------------------------- commands

    def do_decide(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        rule_token = self._single_option(options, "rule") or Rule.AUTO.value
        try:
            rule = Rule(rule_token)
        except ValueError as exc:
            raise CommandError(f"Unknown rule {rule_token!r}; expected auto, search or oracle") from exc
        if "all" in options:
            return self._decide_all(positional, options)
        items = self._words(positional, options)
        family = options.get("family")
        codes = []
        for line, word in items:
            certificate = self.services.solver.decide(word, rule)
            if family is not None and self.session.output_format == OutputFormat.JSON:
                record = VerdictRecord(
                    family=" ".join(family),
                    verdict=certificate.verdict,
                    rule=certificate.rule,
                    rationale=certificate.rationale,
                    witness=GraphPayload.from_graph(certificate.graph) if certificate.graph is not None else None,
                )
                _emit(record.model_dump_json(exclude_none=True, by_alias=True))
            else:
                self._render_certificate(certificate, line)
            codes.append(_exit_code(certificate.verdict))
        if EXIT_ERROR in codes:
            return EXIT_ERROR
        return EXIT_NO if EXIT_NO in codes else EXIT_YES

    def _decide_all(self, positional: Sequence[str], options: Dict[str, List[str]]) -> int:
        word, label = self._word_and_label(positional, options)
        values = options["all"]
        limit = self._parse_int(values[0], "limit", minimum=1) if values else None
        graphs = self.services.solver.enumerate_certificates(word, limit)
        _status("search", "ENUMERATE", f"{label} -> {len(graphs)} certificate(s)")
        for index, graph in enumerate(graphs, start=1):
            tw = twins_from_graph(graph, word)
            _emit(f"#{index} {tw.to_text()}")
        return EXIT_YES if graphs else EXIT_NO

    def do_gaps(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        family = options.get("family")
        if family and family[0].lower() in {"o", "omr"}:
            spec = FamilySpec.parse(family[0], family[1:])
            if len(spec.params) != 2:
                raise CommandError("Usage: gaps --family O M R")
            construction = build_omr_twins(*spec.params)
            tw = construction.twins
            record = ResultRecord(
                word=format_word(tw.word),
                rule=Rule.OMR,
                f=tw.length,
                g=len(tw.gaps),
                optimal=False,
                certificate=GraphPayload.from_graph(construction.graph),
                twins=tw.to_text(),
            )
            self._render_distance(record, tw, label=str(spec))
            return 0
        max_cuts = self._single_option(options, "cuts")
        cuts = self._parse_int(max_cuts, "cuts") if max_cuts is not None else None
        for line, word in self._words(positional, options):
            report = self.services.solver.longest_twins(word, cuts)
            record = ResultRecord(
                word=format_word(word),
                rule=Rule.SEARCH,
                f=report.f,
                g=report.g,
                **_cut_fields(report.cut),
                optimal=report.optimal,
                twins=report.twins.to_text(),
                line=line,
                nodes_expanded=report.nodes,
                time_ms=round(report.time_ms, 3),
            )
            self._render_distance(record, report.twins, label=format_word(word))
        return 0

    def do_cuts(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, label = self._word_and_label(positional, options)
        max_token = self._single_option(options, "max")
        max_cuts = self._parse_int(max_token, "max", minimum=0) if max_token is not None else None
        witness = self.services.solver.cutting_distance(word, max_cuts)
        if witness is None:
            _status("cuts", "NONE", f"{label} within {max_cuts if max_cuts is not None else self.session.config.budgets.max_cuts} cut(s)")
            return EXIT_NO
        if self.session.output_format == OutputFormat.JSON:
            _emit(ResultRecord(word=format_word(word), **_cut_fields(witness)).model_dump_json(exclude_none=True))
            return EXIT_YES
        cuts = ",".join(map(str, witness.cuts)) or "-"
        order = ",".join(map(str, witness.order))
        _status("cuts", f"C={witness.c}", f"{label} cuts after {cuts} order ({order}) -> {format_word(witness.assembled())}")
        return EXIT_YES

    def do_reverse(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, label = self._word_and_label(positional, options)
        result = self.services.solver.reverse_square(word)
        _status("reverse", "YES" if result else "NO", label)
        return EXIT_YES if result else EXIT_NO

    def do_rotations(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, label = self._word_and_label(positional, options)
        offsets = self.services.solver.square_rotations(word)
        _status("rotations", "FOUND" if offsets else "NONE", f"{label} run offsets {offsets}")
        return EXIT_YES if offsets else EXIT_NO

    def do_twins(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, _ = self._word_and_label(positional, options)
        tw = self._twins(word, options)
        canonical = "canonical" if is_canonical(tw) else "not canonical"
        _status("twins", "VALID", f"length={tw.length} gaps={len(tw.gaps)} {canonical}")
        self._render_twins(tw)
        return 0

    def do_canonicalize(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, _ = self._word_and_label(positional, options)
        tw = canonicalize(self._twins(word, options))
        _status("twins", "CANONICAL", f"length={tw.length}")
        self._render_twins(tw)
        return 0

    def do_generate(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        family = options.get("family") or positional
        if not family:
            raise CommandError("Usage: generate --family NAME [ARGS...]")
        word = generate(FamilySpec.parse(family[0], family[1:]))
        _emit(format_word(word, self._word_style()))
        return 0

    def do_census(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        if not positional or len(positional) > 2:
            raise CommandError("Usage: census N [N_MAX] [--k K] [--gaps]")
        low = self._parse_int(positional[0], "n")
        high = self._parse_int(positional[-1], "n_max", minimum=low)
        k_token = self._single_option(options, "k")
        k = self._parse_int(k_token, "k", minimum=1) if k_token is not None else 2
        json_lines = self.session.output_format == OutputFormat.JSON
        if "gaps" in options:
            gap_rows = self.services.solver.max_gap_census(range(low, high + 1))
            if json_lines:
                for row in gap_rows:
                    _emit(row.model_dump_json())
            else:
                console.print(gap_table(gap_rows))
            return 0
        rows = run_census(self.services.scanner, list(range(low, high + 1)), k)
        if json_lines:
            for row in rows:
                _emit(row.model_dump_json())
        else:
            console.print(census_table(rows))
        return 0

    def do_export(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        word, label = self._word_and_label(positional, options)
        if "x" in options or "y" in options:
            graph = graph_from_twins(canonicalize(self._twins(word, options)))
        else:
            certificate = self.services.solver.decide(word)
            if certificate.graph is None:
                raise CommandError(f"{label} has no certificate ({certificate.verdict.value})")
            graph = certificate.graph
        if "json" in options or self.session.output_format == OutputFormat.JSON:
            _emit(GraphPayload.from_graph(graph).model_dump_json(by_alias=True))
        else:
            console.print(export_dot(graph), end="", soft_wrap=True, markup=False, highlight=False)
        return 0

    def do_scan(self, args: Sequence[str]) -> int:
        positional, options = _split_options(args)
        if positional:
            raise CommandError("Usage: scan --file PATH | --family NAME ARGS | --exhaustive N | --random COUNT")
        config = self.session.config
        payload: Dict[str, object] = {
            "node_budget": config.budgets.node_budget,
            "jobs": config.jobs,
            "seed": config.seed,
            "json_lines": self.session.output_format == OutputFormat.JSON,
        }
        for name in ("file", "exhaustive", "random", "max-length", "k"):
            value = self._single_option(options, name)
            if value is not None:
                payload[name.replace("-", "_")] = value
        if "family" in options:
            payload["family"] = options["family"]
        try:
            scan = ScanConfig.model_validate(payload)
        except ValidationError as exc:
            raise CommandError(f"Invalid scan request: {exc.errors()[0]['msg']}") from exc
        items = self.services.scanner.items(scan)
        records = run_scan(self.services.scanner, items, gaps="gaps" in options)
        for record in records:
            if scan.json_lines:
                _emit(record.model_dump_json(exclude_none=True, by_alias=True))
            else:
                where = f"line {record.line}: " if record.line is not None else ""
                outcome = record.error or f"{record.verdict.value if record.verdict else '?'} ({record.rule.value if record.rule else '-'})"
                gaps = f" g={record.g}" if record.g is not None else ""
                _emit(f"{where}{record.word} -> {outcome}{gaps}")
        if any(record.error or record.verdict == Verdict.BUDGET for record in records):
            return EXIT_ERROR
        return 0

    # ------------------------------------------------------------- rendering

    def _word_style(self) -> OutputFormat:
        style = self.session.output_format
        return OutputFormat.DENSE if style == OutputFormat.JSON else style

    def _render_twins(self, tw: Twins) -> None:
        _emit(tw.to_text())
        console.print(twins_text(tw))

    def _render_certificate(self, certificate: Certificate, line: Optional[int] = None) -> None:
        word_text = format_word(certificate.word, self._word_style())
        if self.session.output_format == OutputFormat.JSON:
            tw = certificate.twins()
            record = ResultRecord(
                word=format_word(certificate.word),
                verdict=certificate.verdict,
                rule=certificate.rule,
                reason=certificate.reason,
                certificate=GraphPayload.from_graph(certificate.graph) if certificate.graph is not None else None,
                twins=tw.to_text() if tw is not None else None,
                line=line,
                nodes_expanded=certificate.nodes,
                time_ms=round(certificate.time_ms, 3),
            )
            _emit(record.model_dump_json(exclude_none=True, by_alias=True))
            return
        where = f"line {line}: " if line is not None else ""
        reason = f" reason={certificate.reason.value}" if certificate.reason is not None else ""
        _status(
            certificate.rule.value,
            certificate.verdict.value.upper(),
            f"{where}{word_text or '(empty)'}{reason} nodes={certificate.nodes}",
        )
        if certificate.rationale:
            _emit(f"rationale: {certificate.rationale}")
        tw = certificate.twins()
        if tw is not None and tw.length:
            _emit(f"twin: {format_word(tw.x_word(), self._word_style())}")
            self._render_twins(tw)

    def _render_distance(self, record: ResultRecord, tw: Twins, *, label: str) -> None:
        if self.session.output_format == OutputFormat.JSON:
            _emit(record.model_dump_json(exclude_none=True, by_alias=True))
            return
        bound = "" if record.optimal else " (upper bound)"
        cuts = f" c={record.c}" if record.c is not None else ""
        rule = record.rule.value if record.rule else "search"
        _status(rule, "GAPS", f"{label} f={record.f} g={record.g}{bound}{cuts}")
        self._render_twins(tw)


def _exit_code(verdict: Verdict) -> int:
    if verdict == Verdict.YES:
        return EXIT_YES
    if verdict == Verdict.NO:
        return EXIT_NO
    return EXIT_ERROR


def _extract_global_flags(argv: Sequence[str]) -> Tuple[Dict[str, object], bool, List[str]]:
    overrides: Dict[str, object] = {}
    budgets: Dict[str, int] = {}
    verbose = False
    remaining: List[str] = []
    tokens = list(argv)
    index = 0
    while index < len(tokens):
        arg = tokens[index]
        if arg in {"-v", "--verbose"}:
            verbose = True
        elif arg in {"-h", "--help"}:
            return overrides, verbose, ["help"]
        elif arg in _GLOBAL_VALUE_FLAGS:
            if index + 1 >= len(tokens):
                raise CommandError(f"{arg} needs a value")
            value = tokens[index + 1]
            key = _GLOBAL_VALUE_FLAGS[arg]
            index += 1
            if key == "output_format":
                overrides[key] = value.lower()
            else:
                try:
                    number = int(value)
                except ValueError as exc:
                    raise CommandError(f"{arg} expects an integer, got {value!r}") from exc
                if key == "node_budget":
                    budgets[key] = number
                else:
                    overrides[key] = number
        else:
            remaining.append(arg)
        index += 1
    if budgets:
        overrides["budgets"] = budgets
    return overrides, verbose, remaining


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(argv if argv is not None else sys.argv[1:])
    try:
        overrides, verbose, remaining = _extract_global_flags(argv)
        session = CliSession.create(overrides)
    except (CommandError, ShuffleError) as exc:
        console.print(f"Error: {exc}", markup=False)
        return EXIT_ERROR
    configure_logging("DEBUG" if verbose else session.config.log_level)

    if not remaining:
        return run_repl(session)

    dispatcher = CommandDispatcher(session)
    try:
        return dispatcher.execute(remaining)
    except (CommandError, ShuffleError) as exc:
        console.print(f"Error: {exc}", markup=False)
        return EXIT_ERROR


def run_repl(session: Optional[CliSession] = None) -> int:
    dispatcher = CommandDispatcher(session or CliSession.create())
    console.print("Type 'help' for available commands, 'quit' to exit.")
    while True:
        try:
            raw = input(PROMPT)
        except EOFError:
            console.print("\nExited.")
            return 0
        except KeyboardInterrupt:
            console.print("\nInterrupted. Type 'quit' to exit.")
            continue
        command_line = raw.strip()
        if not command_line:
            continue
        try:
            tokens = shlex.split(command_line)
        except ValueError as exc:
            console.print(f"Parse error: {exc}", markup=False)
            continue
        if not tokens:
            continue
        if tokens[0].lower() in {"quit", "exit"}:
            console.print("Bye.")
            return 0
        try:
            dispatcher.execute(tokens)
        except (CommandError, ShuffleError) as exc:
            console.print(f"Error: {exc}", markup=False)
        except SystemExit:
            console.print("Bye.")
            return 0


__all__ = ["run_cli", "run_repl"]
