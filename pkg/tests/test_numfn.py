"""Integer helpers: fixtures, proven identities, periodicity, summations."""

import numpy as np
import pytest

from macforge.numfn import phi, varphi, sigma, sigma1, sigma2, sigma3, xi
from macforge.params import GroupParams, OddPrimeParams


def test_phi_fixtures():
    assert phi(1) == 0
    assert phi(-1) == 1
    assert phi(5) == 10
    assert phi(0) == 0


def test_varphi_fixtures():
    assert varphi(2) == 0
    assert varphi(-1) == -1
    assert varphi(5) == 10


def test_sigma_fixtures():
    assert sigma(1, 1, 5) == 45
    assert sigma(2, 2, 3) == 11
    # sigma3(t) equals the sum of varphi(k)*k for k < t, computed directly
    for t in range(0, 30):
        brute = sum(varphi(k) * k for k in range(t))
        assert sigma3(t) == brute, t
    assert sigma(3, 999, 5) == 19  # k is ignored
    with pytest.raises(ValueError):
        sigma(4, 1, 1)


def test_sigma_summation_lemma():
    # closed forms vs explicit summation, 0 <= t <= 50, |a| <= 10
    for a in range(-10, 11):
        for t in range(0, 51):
            assert sum(phi(a * k) for k in range(t + 1)) == \
                a * a * varphi(t + 1) + phi(a) * phi(t + 1)
            assert sum(phi(a * k) * k for k in range(t + 1)) == \
                sigma1(a, t + 1) - a * varphi(t + 1)
            assert sum(varphi(a * k + 1) for k in range(t + 1)) == sigma2(a, t + 1)


def test_phi_varphi_identities_range():
    n = np.arange(-200, 201)
    k = np.arange(-200, 201)
    nn, kk = np.meshgrid(n, k, indexing="ij")
    assert (phi(nn + 1) + phi(nn) == nn * nn).all()
    assert (phi(nn + kk) == phi(nn) + phi(kk) + nn * kk).all()
    assert (varphi(nn + kk) == varphi(nn) + varphi(kk) + nn * phi(kk) + phi(nn) * kk).all()
    assert (phi(-nn) == phi(nn + 1)).all()
    # phi(nt) = phi(n)phi(t+1) + phi(n+1)phi(t)
    assert (phi(nn * kk) == phi(nn) * phi(kk + 1) + phi(nn + 1) * phi(kk)).all()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_periodicity(m):
    p = GroupParams(m, 1)
    fourus = 4 * p.u * p.s
    n = np.arange(-100, 101, dtype=object)
    for q in (-2, 1, 3):
        assert ((phi(n + 8 * p.u * p.s * q) - phi(n)) % fourus == 0).all()
        assert ((varphi(n + 24 * p.u * p.s * q) - varphi(n)) % fourus == 0).all()
        shift = 30 * 6 * fourus * q
        assert all((sigma3(int(v) + shift) - sigma3(int(v))) % fourus == 0 for v in n)


def test_xi_fixtures():
    p21 = GroupParams(2, 1)
    assert xi(1, (1, 1), p21) == 0
    assert xi(1, (2, 1), p21) == 16
    assert xi(2, (0, 0, 0, 0), p21) == 0
    with pytest.raises(ValueError):
        xi(1, (1, 2, 3), p21)
    with pytest.raises(ValueError):
        xi(5, (1, 1), p21)


def test_xi_integrality_sampled():
    rng = np.random.default_rng(0)
    p = GroupParams(3, -5)
    for _ in range(500):
        a, b, c, n = (int(v) for v in rng.integers(-50, 51, size=4))
        xi(1, (a, b), p)
        xi(2, (a, b, c, n), p)
        xi(3, (a, b, c), p)
        xi(4, (a, b, c, n), p)


def test_group_params():
    p = GroupParams(3, -5)
    assert p.alpha == 1 + 8 * (-5)
    assert (p.s, p.u, p.r, p.rbar) == (4, 16, 2, 1)
    assert GroupParams(1, 1).r is None
    assert GroupParams(2, 1).rbar is None
    with pytest.raises(ValueError):
        GroupParams(2, 2)
    with pytest.raises(ValueError):
        GroupParams(0, 1)
    with pytest.raises(ValueError):
        GroupParams(1, 1).require_r()


def test_odd_prime_params():
    p = OddPrimeParams(3, 1, 1)
    assert p.alpha == 4 and p.delta_p3 == 1 and p.chi * 2 == 1 + 3
    assert OddPrimeParams(5, 1, 2).chi * 2 == 6
    with pytest.raises(ValueError):
        OddPrimeParams(4, 1, 1)  # not prime
    with pytest.raises(ValueError):
        OddPrimeParams(3, 1, 3)  # p | ell
    with pytest.raises(ValueError):
        OddPrimeParams(3, 1, 2)  # (alpha-1)/3 = 2 is not 1 mod 3
