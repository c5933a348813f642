import cmath
from fractions import Fraction

from hypothesis import HealthCheck, settings

from invar.cyclotomic import CycNum

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def to_complex(x: CycNum) -> complex:
    """Evaluate at z = exp(2 pi i / n): an embedding independent of the reduction code."""
    z = cmath.exp(2j * cmath.pi / x.level)
    return sum(complex(float(c)) * z ** i for i, c in enumerate(x.coeffs))


def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    return abs(a - b) < tol * (1 + abs(a) + abs(b))


def frac(n, d=1):
    return Fraction(n, d)


# -- acceptance report: one line per criterion ------------------------------

_CRITERIA: dict[str, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        key = name.split("[")[0]
        ok = _CRITERIA.get(key, ("", True))[1] and report.passed
        _CRITERIA[key] = (key, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        _, ok = _CRITERIA[key]
        num, _, label = key[len("test_criterion_"):].partition("_")
        terminalreporter.write_line(f"criterion {int(num):2d} {'PASS' if ok else 'FAIL'}  {label.replace('_', ' ')}")
