import pytest
from hypothesis import HealthCheck, settings

from zsmagic import _kernels
from zsmagic.families import fixture_graph
from zsmagic.multigraph import Multigraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BACKENDS = ["python"] + (["compiled"] if _kernels.compiled_search is not None else [])


@pytest.fixture(params=BACKENDS)
def kernel(request):
    return request.param


def cycle(n: int) -> Multigraph:
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)]) if n > 2 else Multigraph(2, [(0, 1), (0, 1)])


def complete(n: int) -> Multigraph:
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k33() -> Multigraph:
    return Multigraph(6, [(i, j) for i in range(3) for j in range(3, 6)])


@pytest.fixture(scope="session")
def fx():
    """Fixture graphs by name, loaded once."""
    cache: dict[str, Multigraph] = {}

    def get(name: str) -> Multigraph:
        if name not in cache:
            cache[name] = fixture_graph(name)
        return cache[name]

    return get


ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        verdict, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {title}")
