import pytest

from shiftconv.errors import ArgumentError, TruncationError
from shiftconv.transforms.poisson import poisson_check


def test_gaussian_self_dual():
    rep = poisson_check("schwartz")
    assert rep.abs_err <= 1e-12
    assert rep.lhs == pytest.approx(rep.rhs)


@pytest.mark.parametrize("a,b", [(0.3, 0.0), (2.0, 0.4), (0.05, 7.25)])
def test_gaussian_general(a, b):
    assert poisson_check("schwartz", a=a, b=b).abs_err <= 1e-12


def test_arithmetic_progression():
    rep = poisson_check("arithmetic_progression", a=2, q=5, X=50)
    assert rep.abs_err <= 1e-10
    for q, a in ((7, 3), (12, 5), (3, 0)):
        assert poisson_check("arithmetic_progression", a=a, q=q, X=80).abs_err <= 1e-10


def test_q1_reduces_to_schwartz():
    X, width, center = 50.0, 0.1, 1.5
    ap = poisson_check("arithmetic_progression", a=0, q=1, X=X, center=center, width=width)
    sw = poisson_check("schwartz", a=1.0 / (width * X) ** 2, b=center * X)
    assert abs(ap.lhs - sw.lhs) <= 1e-12 * abs(sw.lhs)
    assert abs(ap.rhs - sw.rhs) <= 1e-12 * abs(sw.rhs)


def test_errors():
    with pytest.raises(TruncationError) as info:
        poisson_check("arithmetic_progression", a=2, q=5, X=50, dual_terms=0)
    assert info.value.suggestion >= 1
    with pytest.raises(ArgumentError):
        poisson_check("fourier")
    with pytest.raises(ArgumentError):
        poisson_check("schwartz", a=-1.0)
