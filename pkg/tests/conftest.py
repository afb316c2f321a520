import pytest

from pgquadric import Kind, Sign, make_field, standard_form

# parameter pairs small enough to enumerate completely
SMALL = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)]
SMALL_SIGNED = [(n, q, s) for n, q in SMALL for s in Sign]


def std_form(n: int, q: int, sign: Sign):
    return standard_form(Kind.for_sign(sign), n, make_field(q))


@pytest.fixture(params=SMALL_SIGNED, ids=lambda p: f"n{p[0]}-q{p[1]}{p[2].value}")
def form(request):
    return std_form(*request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.format_results():
        terminalreporter.write_line(line)
