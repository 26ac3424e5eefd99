import pytest
from hypothesis import HealthCheck, settings

from whk.gallery import by_name
from whk.kernel import QQ, Field

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F7 = Field.prime(7)
FIELDS = [QQ, F7]
BASES = ["g2", "g3", "g4"]


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(scope="session")
def gallery():
    cache = {}

    def get(name, fld=QQ):
        key = (name, fld)
        if key not in cache:
            cache[key] = by_name(name, fld)
        return cache[key]

    return get


ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """Records one pass/fail line per acceptance criterion; a test that raises is recorded as FAIL."""
    results = request.config.stash[ACCEPTANCE]
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args

    def verdict(problems: list[str], detail: str = ""):
        line = f"criterion {number:>2}: {'PASS' if not problems else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        if problems:
            line += f"  -> {len(problems)} problem(s), first: {problems[0]}"
        results[number] = line
        assert not problems, "\n".join(problems[:20])

    yield verdict
    results.setdefault(number, f"criterion {number:>2}: FAIL  {title}  -> raised before a verdict")


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
