import pytest
from hypothesis import settings

from logcardy import catalog

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def _entry(eid):
    H = catalog.load(eid)
    return H, catalog.simples(eid)


@pytest.fixture(scope="session")
def z2():
    return _entry("z2")


@pytest.fixture(scope="session")
def dz2():
    return _entry("double_z2")


@pytest.fixture(scope="session")
def dt2():
    return _entry("double_taft2")


@pytest.fixture(scope="session")
def dt3():
    return _entry("double_taft3")


@pytest.fixture(scope="session")
def taft2():
    return catalog.load("taft2")


# acceptance bookkeeping: one pass/fail line per criterion in the terminal summary

_CRITERIA = pytest.StashKey[dict]()


class _Criterion:
    def __init__(self, store, number, title):
        self.store, self.number, self.title = store, number, title
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = "; ".join(self.notes)
        if not ok:
            detail = f"{detail}; {exc_type.__name__}: {exc}".lstrip("; ")
        self.store.setdefault(self.number, []).append((ok, self.title, detail))
        return False


@pytest.fixture
def criterion(request):
    store = request.config.stash.setdefault(_CRITERIA, {})
    return lambda number, title: _Criterion(store, number, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_CRITERIA, {})
    if not store:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(store):
        runs = store[n]
        ok = all(r[0] for r in runs)
        title = runs[0][1]
        detail = "; ".join(r[2] for r in runs if r[2])
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
