import cmath
import math

import pytest

import sonine


def test_special_functions():
    assert abs(sonine.chi(0.5) - 1) < 1e-14
    assert abs(sonine.chi(2).real + 2 * math.pi**2) < 1e-12
    s = 0.3 + 7j
    assert abs(sonine.chi(s) * sonine.chi(1 - s) - 1) < 1e-12
    assert abs(sonine.log_gamma(5) - math.log(24)) < 1e-13
    assert abs(sonine.zeta(2) - math.pi**2 / 6) < 1e-13


def test_zeros():
    table = sonine.find_zeros(30.0)
    assert len(table) == 3
    assert abs(table.gammas[0] - 14.134725141734693790) < 1e-8
    assert table.sign_changes == table.argument_count


def test_pole_raises():
    with pytest.raises(sonine.DomainError):
        sonine.log_gamma(0)


def test_poisson_and_copoisson():
    gauss = sonine.make_gaussian()
    assert sonine.poisson_residual(gauss, math.sqrt(2)) < 1e-12
    g = sonine.make_bump(0.5, 2.0)
    report = sonine.copoisson_identity_check(g)
    assert report["passed"]
    el = sonine.CoPoissonElement(g, False)
    assert abs(el.value(0.25) + el.g1) < 1e-8


def test_sonine_element():
    g_star, info = sonine.normalize_moments(sonine.make_bump(0.5, 2.0))
    assert abs(info["moment0"]) < 1e-10 and abs(info["moment1"]) < 1e-10
    f = sonine.SonineElement.from_copoisson(g_star)
    assert f.vanishing(0.5) < 1e-9


def test_ramanujan_symmetric_point():
    zeros = sonine.find_zeros(60.0)
    value, tail = sonine.ramanujan_rhs(math.sqrt(math.pi), zeros)
    assert abs(value) < 1e-6


def test_moebius():
    table = sonine.moebius_sieve(1000)
    assert table[30] == -1 and table[4] == 0 and table[6] == 1
