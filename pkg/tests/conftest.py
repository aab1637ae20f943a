import os

import pytest

from equichain.spaces import BUILTIN_CORPUS, builtin, fuzz

FUZZ_COUNT = 500


def fuzz_seed_base() -> int:
    return int(os.environ.get("EQUICHAIN_SEED", "0"))


@pytest.fixture(scope="session")
def builtins():
    return {name: builtin(name) for name in BUILTIN_CORPUS}


@pytest.fixture(scope="session")
def fuzz_corpus():
    base = fuzz_seed_base()
    return [fuzz(base + i) for i in range(FUZZ_COUNT)]


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
