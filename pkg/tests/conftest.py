import numpy as np
import pytest

from lzjd.harness import load_corpus, make_corpus

DESK_SEED = 0

_verdicts = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_verdicts] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_verdicts, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def verdict(request):
    """Record one acceptance line: verdict(number, status, text)."""

    def record(number, status, text):
        line = f"criterion {number:>2}: {status:<4} {text}"
        request.config.stash[_verdicts].append(line)
        print(line)

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def desk_corpus_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("desk")
    make_corpus(path, seed=DESK_SEED)
    return path


@pytest.fixture(scope="session")
def desk_corpus(desk_corpus_dir):
    return load_corpus(desk_corpus_dir)


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("small")
    make_corpus(path, n_files=8, min_size=8 * 1024, max_size=48 * 1024, seed=7)
    return load_corpus(path)
