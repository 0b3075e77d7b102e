import math

import pytest

import lowlying as ll


def test_gauss_sum_closed_form():
    for k in (1, 3, 15, 45, 105):
        for m in (0, 1, -2, 9):
            brute = ll.tau_m_bruteforce(m, k)
            closed = ll.gauss_factor(k) * ll.G_m_closed_form(m, k)
            assert abs(brute - closed) < 1e-9


def test_family_and_gauss_sums():
    chars = ll.family("cubic", 50)
    assert len(chars) == 14
    for chi in chars:
        assert abs(abs(ll.gauss_sum(chi)) - math.sqrt(chi.modulus)) < 1e-9
    chi = ll.quadratic_character(3)
    assert chi.modulus == 24
    assert chi(7) == pytest.approx(-1)


def test_mobius_split_sums_to_mu_squared():
    for d in (1, 12, 45, 30, 49):
        M, R = ll.mobius_split(d, 5)
        assert M + R == (0 if d in (12, 45, 49) else 1)


def test_zeros_and_counts():
    z = ll.find_zeros(ll.quadratic_character(3), 20.0)
    assert z["complete"]
    g = z["gammas"]
    assert g == sorted(g)
    assert all(abs(a + b) < 1e-8 for a, b in zip(g, reversed(g)))
    assert abs(len(g) - ll.zero_count_expected(24, 20.0)) <= 2


def test_predictions():
    phi = ll.TestFunction.fejer(0.8)
    assert ll.predicted_integral(phi, ll.Kernel.USp) == pytest.approx(0.6)
    assert ll.predicted_integral(phi, ll.Kernel.SO_plus) == pytest.approx(1.4)
    with pytest.raises(ll.DomainError):
        ll.predicted_integral(ll.TestFunction.fejer(1.5), ll.Kernel.USp)


def test_density_report(tmp_path):
    rep = ll.density_report("cubic", 30, sigma=0.4, T=20.0, cache_dir=str(tmp_path))
    assert rep["family"] == "cubic"
    assert rep["predicted"] == pytest.approx(1.0)
    mean = sum(c["S"] for c in rep["characters"]) / len(rep["characters"])
    assert rep["empirical"] == pytest.approx(mean, rel=1e-14)
    csv = ll.density("cubic", 30, sigma=0.4, T=20.0, cache_dir=str(tmp_path), format="csv")
    assert len(csv.strip().splitlines()) == len(rep["characters"]) + 3
    assert any(p.name.startswith("zeros_q") for p in tmp_path.iterdir())


def test_verify_suite():
    rows = ll.verify("mobius")
    assert rows and all(r["pass"] for r in rows)
    with pytest.raises(ll.DomainError):
        ll.verify("nonsense")
