from pathlib import Path

import numpy as np
import pytest

from discrim.channels import KrausChannel

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def random_channel(rng, dim_in, dim_out, rank=None):
    """Haar-ish random channel from a random isometry (Stinespring)."""
    rank = rank or int(np.ceil(dim_in / dim_out)) + int(rng.integers(0, 3))
    rank = max(rank, int(np.ceil(dim_in / dim_out)))
    g = rng.normal(size=(rank * dim_out, dim_in)) + 1j * rng.normal(size=(rank * dim_out, dim_in))
    q, _ = np.linalg.qr(g)
    return KrausChannel(tuple(q[i * dim_out:(i + 1) * dim_out] for i in range(rank)))


def random_density(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def random_unit_vector(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def exact_phi_kraus():
    """Kraus operators of phi0 and phi1 as exact sympy matrices."""
    import sympy as sp

    s = 1 / sp.sqrt(2)
    k0, k1 = sp.Matrix([1, 0]), sp.Matrix([0, 1])
    plus, minus = s * (k0 + k1), s * (k0 - k1)

    def two(a, b):
        return sp.Matrix(sp.kronecker_product(a, b))

    a_ops = [k0 * two(k0, k0).T, k0 * two(k0, k1).T, k0 * two(k1, k0).T,
             s * k0 * two(k1, k1).T, s * k1 * two(k1, k1).T]
    b_ops = [plus * two(k0, k0).T, plus * two(k0, k1).T, k1 * two(k1, plus).T,
             s * k0 * two(k1, minus).T, s * k1 * two(k1, minus).T]
    return a_ops, b_ops


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
