import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2


def random_ket(rng, d=3):
    k = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return k / np.linalg.norm(k)


# Gell-Mann matrices written out by hand, independent of qutritlab.su3.
L1 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
L2 = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)
L3 = np.diag([1, -1, 0]).astype(complex)
L8 = np.diag([1, 1, -2]).astype(complex) / np.sqrt(3)


# One line per acceptance criterion, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
