import random
from fractions import Fraction

import pytest

from oscalg.fock import (FockVector, VoaConfig, apply_mode, apply_quadratic,
                         exp_apply, format_label, format_vector, graded_basis,
                         measure_central_charge, parse_label, state_degree,
                         virasoro, virasoro_all)
from oscalg.quadops import QuadraticElement, b, bracket, pair, tau_hat, unit

HALF = Fraction(1, 2)


def basis_upto(deg, rank=1):
    return [FockVector.basis(st) for d in range(deg + 1)
            for st in graded_basis(d, rank)]


def vac(rank=1):
    return FockVector.vacuum(rank)


# -- modes -------------------------------------------------------------------

def test_mode_examples():
    v0 = vac()
    assert apply_mode(1, 1, apply_mode(-1, 1, v0)) == v0
    assert apply_mode(2, 1, v0).is_zero()
    v22 = FockVector.basis(((2, 2),))
    assert apply_mode(2, 1, v22) == FockVector.basis(((2,),)).scale(4)
    with pytest.raises(ValueError):
        apply_mode(0, 1, v0)
    with pytest.raises(ValueError):
        apply_mode(1, 2, v0)


def test_heisenberg_relations():
    vs = basis_upto(8)
    for m in range(-5, 6):
        for n in range(-5, 6):
            if not m or not n:
                continue
            want = Fraction(m) if m + n == 0 else Fraction(0)
            for v in vs:
                got = (apply_mode(m, 1, apply_mode(n, 1, v))
                       - apply_mode(n, 1, apply_mode(m, 1, v)))
                assert got == v.scale(want)


def test_modes_respect_channels():
    v = vac(2)
    w = apply_mode(-2, 1, apply_mode(-1, 2, v))
    assert w == FockVector.basis(((2,), (1,)))
    # modes on distinct channels commute
    w2 = apply_mode(-1, 2, apply_mode(-2, 1, v))
    assert w == w2


# -- quadratic action ----------------------------------------------------------

def test_apply_quadratic_examples():
    v1 = FockVector.basis(((1,),))
    assert apply_quadratic(pair(-1, 1), v1) == v1
    v21 = FockVector.basis(((2, 1),))
    assert apply_quadratic(tau_hat(0), v21) == v21.scale(3)
    assert apply_quadratic(unit(), v21) == v21


def test_grading():
    rng = random.Random(20)
    quads = [pair(a, bb) for a in range(-3, 4) for bb in range(-3, 4)
             if a and bb] + [tau_hat(p) for p in range(-3, 4)]
    vs = basis_upto(6)
    for _ in range(60):
        A = rng.choice(quads)
        d = next(iter(A.quad))
        v = rng.choice(vs)
        image = apply_quadratic(A, v)
        k = state_degree(next(iter(v.terms)))
        for st in image.terms:
            assert state_degree(st) == k - d


def test_virasoro_examples():
    v0 = vac()
    assert virasoro(-1, v0).is_zero()
    assert virasoro(0, v0).is_zero()
    assert virasoro(-2, v0) == FockVector.basis(((1, 1),)).scale(HALF)
    got = (virasoro(2, virasoro(-2, v0)) - virasoro(-2, virasoro(2, v0))
           - virasoro(0, v0).scale(4))
    assert got == v0.scale(HALF)


def test_virasoro_c1_relations():
    vs = basis_upto(6)
    for p in range(-3, 4):
        for q in range(-3, 4):
            central = Fraction(p ** 3 - p, 12) if p + q == 0 else Fraction(0)
            for v in vs:
                got = (virasoro(p, virasoro(q, v)) - virasoro(q, virasoro(p, v))
                       - virasoro(p + q, v).scale(p - q))
                assert got == v.scale(central)


def test_bracket_action_compatibility_sample():
    rng = random.Random(21)
    gens = ([b(m) for m in (-2, -1, 1, 2)]
            + [pair(a, bb) for a in (-2, -1, 1, 2) for bb in (-2, -1, 1, 2)]
            + [tau_hat(p) for p in range(-2, 3)] + [unit()])
    vs = basis_upto(5)
    for _ in range(120):
        A = rng.choice(gens)
        B = rng.choice(gens)
        v = rng.choice(vs)
        lhs = apply_quadratic(bracket(A, B), v)
        rhs = (apply_quadratic(A, apply_quadratic(B, v))
               - apply_quadratic(B, apply_quadratic(A, v)))
        assert lhs == rhs


def test_number_operator_eigenvalues():
    for d in range(0, 9):
        for (lam,) in graded_basis(d, 1):
            v = FockVector.basis((lam,))
            for i in range(1, 9):
                got = apply_quadratic(pair(-i, i), v)
                want = v.scale(i * lam.count(i))
                assert got == want


# -- central charge ------------------------------------------------------------

def test_measure_central_charge_rank1():
    assert measure_central_charge(2, basis_upto(6)) == 1
    assert measure_central_charge(2, [vac()]) == 1
    assert measure_central_charge(3, basis_upto(4)) == 1


def test_measure_central_charge_rank3():
    v = vac(3)
    vecs = [v, apply_mode(-1, 2, v), apply_mode(-2, 3, v),
            apply_mode(-1, 1, apply_mode(-1, 3, v))]
    assert measure_central_charge(2, vecs, virasoro_all) == 3


def test_measure_central_charge_errors():
    with pytest.raises(ValueError):
        measure_central_charge(1, [vac()])
    with pytest.raises(ValueError):
        measure_central_charge(2, [])
    # an action that drops L_0 is inconsistent across degrees
    broken = lambda q, v: virasoro(q, v) if q else v.scale(0)
    with pytest.raises(ValueError, match="inconsistent"):
        measure_central_charge(2, [vac(), FockVector.basis(((1,),))], broken)
    mixed = vac() + FockVector.basis(((1, 1),))
    with pytest.raises(ValueError, match="eigenvector"):
        measure_central_charge(2, [mixed], broken)


# -- exponentials ---------------------------------------------------------------

def test_exp_examples():
    v0 = vac()
    assert exp_apply(pair(1, 1), v0) == v0
    v11 = FockVector.basis(((1, 1),))
    assert exp_apply(pair(1, 1), v11) == v11 + v0.scale(2)
    assert exp_apply(QuadraticElement.zero(), v11) == v11


def test_exp_matches_series_for_nilpotent():
    A = pair(1, 1).scale(HALF) + pair(2, 1) + b(1)
    v = FockVector.basis(((2, 1, 1, 1),))
    acc = v
    w = v
    fact = 1
    for k in range(1, 20):
        w = apply_quadratic(A, w)
        if w.is_zero():
            break
        fact *= k
        acc = acc + w.scale(Fraction(1, fact))
    assert exp_apply(A, v) == acc


def test_exp_number_operator():
    v = FockVector.basis(((2, 1, 1),))
    # eigenvalue of :b_-1 b_1: is 2, scalar 3 acts as 9
    assert exp_apply(pair(-1, 1), v, group_scalar=3) == v.scale(9)
    A = pair(-2, 2).scale(HALF)
    # eigenvalue 1/2 * 2 * 1 = 1
    assert exp_apply(A, v, group_scalar=Fraction(5, 7)) == v.scale(Fraction(5, 7))
    with pytest.raises(ValueError, match="non-integral"):
        exp_apply(pair(-1, 1).scale(HALF), FockVector.basis(((1,),)),
                  group_scalar=2)


def test_exp_rejections():
    v = vac()
    with pytest.raises(ValueError):
        exp_apply(pair(-1, -1), v)
    with pytest.raises(ValueError):
        exp_apply(pair(-1, 1) + pair(1, 1), v)
    with pytest.raises(ValueError):
        exp_apply(pair(-1, 1), v)
    with pytest.raises(ValueError):
        exp_apply(b(-1), v)
    with pytest.raises(ValueError):
        exp_apply(unit(), v)


# -- bases and labels -----------------------------------------------------------

def test_graded_basis_counts_and_order():
    assert len(graded_basis(4, 1)) == 5
    assert graded_basis(0, 3) == [((), (), ())]
    assert graded_basis(2, 2) == [((2,), ()), ((1, 1), ()), ((1,), (1,)),
                                  ((), (2,)), ((), (1, 1))]
    assert graded_basis(4, 1) == [((4,),), ((3, 1),), ((2, 2),),
                                  ((2, 1, 1),), ((1, 1, 1, 1),)]
    with pytest.raises(ValueError):
        graded_basis(-1, 1)


def test_partition_counts():
    want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [len(graded_basis(d, 1)) for d in range(11)] == want


def test_labels_round_trip():
    assert format_label(((3, 1, 1),)) == "[3,1,1]"
    assert format_label(((3, 1), (2,))) == "([3,1]|[2])"
    assert parse_label("[3,1,1]") == ((3, 1, 1),)
    assert parse_label("([3,1]|[2])") == ((3, 1), (2,))
    assert parse_label("(-|[2])") == ((), (2,))
    assert parse_label("[]") == ((),)
    for d in range(5):
        for st in graded_basis(d, 2):
            assert parse_label(format_label(st)) == st


def test_format_vector():
    v0 = vac()
    assert format_vector(v0) == "[]"
    v = FockVector.basis(((1, 1),)).scale(HALF) - FockVector.basis(((2,),))
    assert format_vector(v) == "-[2] + 1/2*[1,1]"
    assert format_vector(FockVector(1)) == "0"
