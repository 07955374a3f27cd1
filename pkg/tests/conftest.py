import os

from hypothesis import HealthCheck, settings, strategies as st

from monofact.tree import PlaneTree

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def tree_from_word(up: list[bool]) -> PlaneTree:
    """Cycle-lemma rotation of an arbitrary up/down word with one more down
    than ups; plain Python, independent of the vectorised sampler."""
    s, low, arg = 0, 0, -1
    for i, u in enumerate(up):
        s += 1 if u else -1
        if s < low:
            low, arg = s, i
    w = up[arg + 1:] + up[:arg + 1]
    counts, run = [], 0
    for u in w:
        if u:
            run += 1
        else:
            counts.append(run)
            run = 0
    return PlaneTree(tuple(counts))


@st.composite
def plane_trees(draw, min_n=1, max_n=40):
    n = draw(st.integers(min_n, max_n))
    ups = draw(st.sets(st.integers(0, 2 * n - 2), min_size=n - 1, max_size=n - 1))
    return tree_from_word([i in ups for i in range(2 * n - 1)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
