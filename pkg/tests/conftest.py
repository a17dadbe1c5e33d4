import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from multicomplex.core import validate  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def complexes(draw, max_n=4, max_faces=5, max_size=3):
    """Random valid multi-complexes, with relations drawn among contained faces."""
    n = draw(st.integers(0, max_n))
    if n == 0:
        return validate(0, [])
    label = st.integers(1, n)
    faces = draw(st.lists(st.lists(label, min_size=2, max_size=max_size).map(sorted),
                          max_size=max_faces))
    pairs = []
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if len(a) < len(b) and all(b.count(x) >= a.count(x) for x in set(a)):
                if draw(st.booleans()):
                    pairs.append((n + i, n + j))
    return validate(n, [[v] for v in range(1, n + 1)] + faces, pairs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
