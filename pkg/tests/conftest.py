import time

import pytest
from hypothesis import settings

from glmy import QQ, from_edges, trapezohedron
from glmy.generators import random_digraph, sweep_specs
from glmy.omega3 import basis_size, omega3_basis, omega3_dim
from glmy.oracle import omega_basis, omega_dim

# first calls may load compiled kernels from disk
settings.register_profile("glmy", deadline=None)
settings.load_profile("glmy")


# -- small named digraphs used across modules ---------------------------------


@pytest.fixture
def t2():
    return trapezohedron(2)


@pytest.fixture
def two_cycle():
    return from_edges([("a", "b"), ("b", "a")])


@pytest.fixture
def double_shortcut():
    # a -> i -> j -> b with the shortcuts i -> b and a -> j
    return from_edges([("a", "i"), ("i", "j"), ("j", "b"), ("i", "b"), ("a", "j")])


@pytest.fixture
def b2_example():
    return from_edges([("a", "i"), ("i", "j"), ("j", "b"), ("a", "c"), ("c", "b"), ("i", "c"), ("c", "j")])


@pytest.fixture(scope="session")
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure the computation."""
    g = trapezohedron(2)
    omega3_basis(g)
    basis_size(g)
    omega3_dim(g)
    omega_basis(g, 3)
    omega_dim(g, 3, field=QQ)
    return True


@pytest.fixture(scope="session")
def sweep_graphs():
    return [(spec, random_digraph(spec)) for spec in sweep_specs(500, 12)]


# -- acceptance reporting ------------------------------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    num, title = mark.args
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "secs": 0.0, "notes": []})
    entry["ok"] &= rep.passed
    entry["secs"] += rep.duration
    for name, text in rep.user_properties:
        if name == "detail":
            entry["notes"].append(text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] else "FAIL"
        line = f"criterion {num}: {status}  {e['title']}  ({e['secs']:.2f}s)"
        tr.write_line(line)
        for note in e["notes"]:
            tr.write_line(f"    {note}")


@pytest.fixture
def detail(record_property):
    """Attach a one-line note to the acceptance summary."""

    def note(text):
        record_property("detail", text)

    return note


@pytest.fixture
def stopwatch():
    class Watch:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.secs = time.perf_counter() - self.t0

    return Watch
