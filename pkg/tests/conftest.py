import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from dilatkit import build_surface, homology_basis  # noqa: E402
from dilatkit.corpus import default_corpus  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = dict(default_corpus())
EXACT_NAMES = [k for k, s in CORPUS.items() if s.mode == "exact"]


@lru_cache(maxsize=None)
def built(name):
    return build_surface(CORPUS[name])


@lru_cache(maxsize=None)
def basis_of(name):
    return homology_basis(built(name))


@pytest.fixture(params=sorted(CORPUS))
def corpus_name(request):
    return request.param


@pytest.fixture(params=EXACT_NAMES)
def exact_name(request):
    return request.param


# One line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE = []


def record(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
