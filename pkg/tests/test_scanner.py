import asyncio
import math

import pytest

from shufflesq.core.config import AppConfig, SearchBudgets
from shufflesq.core.errors import BudgetExceeded, ShuffleError
from shufflesq.core.models import Rule, Verdict
from shufflesq.core.records import ScanConfig
from shufflesq.core.words import Word, parse_word
from shufflesq.services.container import ServiceContainer
from shufflesq.services.scanner import ScanService, run_census, run_scan
from shufflesq.services.solver import ShuffleSolver


def _service(jobs: int = 1, **budgets) -> ScanService:
    return ScanService(ShuffleSolver(AppConfig(budgets=SearchBudgets(**budgets))), jobs)


def test_binary_census_small_lengths():
    rows = run_census(_service(), [0, 1, 2, 3])

    assert [row.squares for row in rows] == [1, 2, 6, 22]
    assert [row.even_words for row in rows] == [1, 2, 8, 32]
    assert rows[2].density == 0.75


def test_ternary_census_length_two():
    (row,) = run_census(_service(), [1], k=3)

    assert row.squares == 3
    assert row.even_words == 3


def test_census_is_independent_of_job_count():
    serial = run_census(_service(jobs=1), [4, 5])
    parallel = run_census(_service(jobs=4), [4, 5])

    assert serial == parallel


@pytest.mark.slow
def test_binary_census_up_to_eight_meets_central_binomial_bound():
    halves = range(0, 9)

    rows = run_census(_service(jobs=8), halves)

    assert [row.squares for row in rows[:6]] == [1, 2, 6, 22, 82, 320]
    assert all(row.squares >= math.comb(2 * row.n, row.n) for row in rows)
    assert rows == run_census(_service(jobs=1), halves)
    assert rows == run_census(_service(jobs=4), halves)


def test_census_refuses_long_words():
    with pytest.raises(BudgetExceeded):
        run_census(_service(census_max_length=8), [5])


def test_scan_keeps_input_order_and_records_errors():
    items = [
        (1, parse_word("00001001")),
        (2, parse_word("1001")),
        (3, Word((0, 1, 1, 0, 1, 0), 2)),
    ]

    records = run_scan(_service(jobs=3), items)

    assert [record.line for record in records] == [1, 2, 3]
    assert records[0].verdict == Verdict.YES
    assert records[0].rule == Rule.FEW_RUNS
    assert records[0].twins is not None
    assert records[1].verdict == Verdict.NO
    assert records[2].word == "011010"


def test_scan_records_solver_errors():
    class Failing(ShuffleSolver):
        def decide(self, word, rule=Rule.AUTO):
            raise ShuffleError("boom")

    (record,) = run_scan(ScanService(Failing()), [(7, parse_word("0101"))])

    assert record.error == "boom"
    assert record.line == 7
    assert record.verdict is None


def test_scan_with_gaps_reports_distance():
    (record,) = asyncio.run(_service().scan([(None, parse_word("0110"))], gaps=True))

    assert record.verdict == Verdict.NO
    assert record.g == 2
    assert record.f == 1


def test_items_from_each_source(tmp_path):
    service = _service()
    words = tmp_path / "words.txt"
    words.write_text("# corpus\n0110\n\n1^2 0^2\n")

    from_file = service.items(ScanConfig(file=words))
    from_family = service.items(ScanConfig(family=["abba", "2", "3"]))
    exhaustive = service.items(ScanConfig(exhaustive=4))
    sampled = service.items(ScanConfig(random=5, max_length=10, seed=3))

    assert [(line, word.text) for line, word in from_file] == [(2, "0110"), (4, "1100")]
    assert from_family[0][1].text == "100110011001"
    assert len(exhaustive) == 8
    assert len(sampled) == 5
    assert all(len(word) % 2 == 0 and len(word) <= 10 for _, word in sampled)
    assert sampled == service.items(ScanConfig(random=5, max_length=10, seed=3))


def test_non_positive_jobs_rejected():
    with pytest.raises(ShuffleError):
        ScanService(ShuffleSolver(), 0)


def test_container_wires_jobs():
    container = ServiceContainer.build(AppConfig(jobs=2))

    assert container.scanner._jobs == 2
    assert container.solver.config is container.config
