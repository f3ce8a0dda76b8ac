import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tfs import parse_feature_structure, parse_interpretation, parse_signature  # noqa: E402

SIG_A = """\
type top
type t refines top
type a refines t
type b refines t
attr f
approp a f a
"""

F1 = "root q0\nnode q0 t\n"
F2 = "root q0\nnode q0 t\nedge q0 f q0\n"
F3 = "root q0\nnode q0 b\nedge q0 f q0\n"
I0 = "obj u0 a\nval u0 f u0\n"

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def sig_a():
    return parse_signature(SIG_A)


@pytest.fixture
def f1(sig_a):
    return parse_feature_structure(F1, sig_a)


@pytest.fixture
def f2(sig_a):
    return parse_feature_structure(F2, sig_a)


@pytest.fixture
def f3(sig_a):
    return parse_feature_structure(F3, sig_a)


@pytest.fixture
def i0(sig_a):
    return parse_interpretation(I0, sig_a)


@pytest.fixture
def example_files(tmp_path):
    for name, text in {"sig": SIG_A, "f1": F1, "f2": F2, "f3": F3, "i0": I0}.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
