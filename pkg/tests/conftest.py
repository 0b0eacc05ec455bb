import numpy as np
import pytest

from spurion.series import TimeSeries


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def write_csv(tmp_path):
    def _write(name, rows, header="year,value", newline="\n"):
        path = tmp_path / f"{name}.csv"
        lines = [header] + [f"{y},{v}" for y, v in rows]
        path.write_bytes((newline.join(lines) + newline).encode("utf-8"))
        return path
    return _write


def make_series(values, start=1900, label="s", unit="u"):
    return TimeSeries(label=label, start_index=start, values=np.asarray(values, dtype=float), unit=unit,
                      provenance="test")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
