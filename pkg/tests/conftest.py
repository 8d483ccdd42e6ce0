import numpy as np
import pytest

from extreme_hazard.synthetic import garch_prices


@pytest.fixture(scope="session")
def long_prices():
    """Synthetic GARCH index covering 1885-2015 in business days."""
    return garch_prices(n=34200, seed=11, start="1885-02-16")


@pytest.fixture
def write_prices(tmp_path):
    def _write(rows, header=None, name="prices.csv"):
        path = tmp_path / name
        lines = ([header] if header else []) + [f"{d},{v}" for d, v in rows]
        path.write_text("\n".join(lines) + "\n")
        return path

    return _write


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        status, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {detail}")
