"""Tests for the verification helpers: defects, splitting, pullback, fits."""

from fractions import Fraction

import pytest

from oscalg.coinv import FPoint
from oscalg.quadops import (
    alpha,
    b,
    beta,
    pair,
    tau_hat,
    unit,
    WittElement,
)
from oscalg.verify import (
    CocycleHandle,
    LAMBDA_FIBER,
    THETA_FIBER,
    alpha_closed,
    central_scalars,
    check_closed_forms,
    check_lift_diagram,
    check_jacobi,
    check_pullback_sigma,
    check_splitting,
    cocycle_defect,
    default_fit_probes,
    fit_cocycle_coefficients,
    gamma_closed,
    sigma_hat_defect,
    small_generator_set,
    verdict,
    verify_all,
    witt_probe_elements,
)


def test_cocycle_handles_by_name():
    h = CocycleHandle("psi")
    assert h(tau_hat(2), tau_hat(-2)) == -1
    assert CocycleHandle("alpha")(tau_hat(2), tau_hat(-2)) == -1
    assert CocycleHandle("beta")(b(1), b(-1)) == 1
    assert CocycleHandle("gamma")(pair(1, 1), b(-2)) == 2


def test_cocycle_handle_errors():
    with pytest.raises(ValueError):
        CocycleHandle("nosuch")
    with pytest.raises(ValueError):
        CocycleHandle("custom")
    h = CocycleHandle("custom", evaluate=lambda u, v: Fraction(7))
    assert h(b(1), b(-1)) == 7


def test_defect_examples():
    x, y, z = pair(1, 1), pair(1, -2), b(-1)
    assert cocycle_defect("gamma", x, y, z) == 2
    assert cocycle_defect("alpha", x, y, z) == 0
    assert cocycle_defect("beta", x, y, z) == 0
    # psi = alpha + beta + gamma inherits gamma's defect here
    assert cocycle_defect("psi", x, y, z) == 2
    assert cocycle_defect("beta", b(1), b(2), b(3)) == 0


def test_extension_cocycle_has_zero_defect():
    # the cocycle the bracket actually realizes is -1/2 alpha + beta
    h = CocycleHandle(
        "custom",
        evaluate=lambda u, v: Fraction(-1, 2) * alpha(u, v) + beta(u, v),
    )
    x, y, z = pair(1, 1), pair(1, -2), b(-1)
    assert cocycle_defect(h, x, y, z) == 0
    assert cocycle_defect(h, pair(2, -1), b(1), b(-2)) == 0


def test_defect_rejects_central_argument():
    with pytest.raises(ValueError):
        cocycle_defect("gamma", unit(), b(1), b(-1))


def test_defect_is_alternating():
    x, y, z = pair(1, 1), pair(1, -2), b(-1)
    for name in ("psi", "alpha", "gamma"):
        assert cocycle_defect(name, x, y, z) == -cocycle_defect(name, y, x, z)
        assert cocycle_defect(name, x, x, z) == 0


def test_splitting_examples():
    assert check_splitting(FPoint([1]), 6) is True
    assert check_splitting(FPoint([]), 6) is True
    assert check_splitting(FPoint([1, 3]), 8) is True


def test_pullback_examples():
    L = WittElement.L
    mode = WittElement.mode
    assert sigma_hat_defect(L(2), L(-2)) == -1
    assert sigma_hat_defect(mode(1), mode(-1)) == 1
    assert sigma_hat_defect(L(2), mode(-2)) == -3
    assert check_pullback_sigma(bound=3) is True


def test_pullback_single_probes():
    L = WittElement.L
    mode = WittElement.mode
    probes = [(L(2), L(-2)), (mode(1), mode(-1)), (L(2), mode(-2))]
    assert check_pullback_sigma(probes=probes) is True


def test_fit_psi():
    assert fit_cocycle_coefficients("psi") == (1, 1, 1)


def test_fit_custom_combination():
    h = CocycleHandle(
        "custom",
        evaluate=lambda u, v: Fraction(-1, 2) * alpha(u, v) + beta(u, v),
    )
    assert fit_cocycle_coefficients(h) == (Fraction(-1, 2), 1, 0)
    assert fit_cocycle_coefficients("alpha") == (1, 0, 0)


def test_fit_singular_probes_rejected():
    probes = default_fit_probes()[:2] + [(tau_hat(1), b(-1))]
    with pytest.raises(ValueError, match="probe"):
        fit_cocycle_coefficients("psi", probes=probes)


def test_closed_form_values():
    L = WittElement.L
    mode = WittElement.mode
    assert alpha_closed(L(2), L(-2)) == -1
    assert alpha_closed(L(2), L(3)) == 0
    assert gamma_closed(L(1), mode(-1)) == 1
    assert gamma_closed(L(2), mode(-2)) == 3
    assert gamma_closed(L(2), mode(3)) == 0
    assert check_closed_forms(bound=4) is True


def test_central_scalars_table():
    table = central_scalars()
    assert table["mp_cocycle"] == "-1/2*alpha"
    assert table["mp_cocycle_on_tau2"] == Fraction(1, 2)
    assert table["u2_cocycle"] == "-1/2*alpha + beta"
    assert table["lambda_fiber"] == 2
    assert table["theta_fiber"] == -1
    assert LAMBDA_FIBER == 2
    assert THETA_FIBER == -1
    rows = table["atiyah"]
    assert [r["c"] for r in rows] == [0, 1, 2, 26]
    for r in rows:
        assert r["A_multiple"] == Fraction(r["c"], 2)
        assert r["X_multiple"] == -r["c"]


def test_jacobi_small_set_clean():
    gens = small_generator_set()
    assert len(gens) == 20
    assert check_jacobi(gens) == []


def test_witt_probe_elements():
    elems = witt_probe_elements(2)
    # L(-2..2) and modes b(+-1), b(+-2)
    assert len(elems) == 9


def test_lift_diagram():
    assert check_lift_diagram(bound=3) is True


def test_verdict_key_order():
    v = verdict("demo", {"n": 3}, True)
    assert list(v.keys()) == ["check", "parameters", "pass", "witnesses"]
    assert v["pass"] is True
    assert v["witnesses"] == []


def test_verify_all_passes():
    verdicts = verify_all(probe_bound=3)
    assert len(verdicts) == 8
    names = [v["check"] for v in verdicts]
    assert names == [
        "jacobi",
        "cocycle-defects",
        "splitting",
        "pullback-sigma",
        "fit-psi",
        "closed-forms",
        "central-scalars",
        "lift-diagram",
    ]
    for v in verdicts:
        assert v["pass"] is True, v
