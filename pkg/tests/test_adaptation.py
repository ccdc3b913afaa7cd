"""Tests for the frame adaptation chain.

Oracles: hand-derived fundamental matrices for a frozen quadratic-graph
fixture, the Maurer-Cartan gauge-change law, the structure equations
d(Omega) = -Omega ^ Omega, and the normal forms that each adaptation level
must produce.
"""

import numpy as np
import pytest

from centroframe.adaptation import (
    GaugeTransform,
    adapt2_spacelike,
    adapt2_timelike,
    adapt3,
    apply_gauge,
    classify_plane,
    frame1,
    fundamental_matrices,
    maurer_cartan,
)
from centroframe.errors import (
    Degenerate,
    IndependenceFailure,
    NotImmersed,
    NotTransversal,
)
from centroframe.linalg5 import SymMat2T, identity, mat_mul
from centroframe.surfaces import builtin_surface, eval_surface, parse_surface
from centroframe.taylor import TaylorScalar

# Quadratic graph whose second-order data at the origin is
# h3 = E11, h4 = offdiag(1), h0 = I: a frozen null-type fixture.
NULL_FIXTURE = "1 + u^2/2 + v^2/2; u; v; u^2/2; u*v"


def _jets(name_or_text, u0, v0, degree=4):
    if ";" in name_or_text:
        spec = parse_surface(name_or_text)
    else:
        spec = builtin_surface(name_or_text)
    return eval_surface(spec, u0, v0, degree)


def _allzero(jet, atol=1e-12):
    return np.allclose(jet.coeffs, 0.0, atol=atol)


def test_frame1_layout_and_position_column():
    jets = _jets("h2", 0.0, 0.0)
    fr = frame1(jets)
    assert fr.level == 1
    consts = np.array([[x.const for x in row] for row in fr.matrix])
    # e0 = (1,0,0,0,0), e1 ~ sqrt(3) e_1, e2 ~ sqrt(3) e_2, completion e_3, e_4
    assert np.allclose(consts[:, 0], [1, 0, 0, 0, 0])
    assert np.allclose(consts[:, 1], [0, np.sqrt(3), 0, 0, 0], atol=1e-12)
    assert np.allclose(consts[:, 2], [0, 0, np.sqrt(3), 0, 0], atol=1e-12)
    assert np.allclose(consts[:, 3], [0, 0, 0, 1, 0])
    assert np.allclose(consts[:, 4], [0, 0, 0, 0, 1])


def test_frame1_not_immersed():
    with pytest.raises(NotImmersed):
        frame1(_jets("1 + u + v; u + v; 1; (u+v)^2; 2", 0.0, 0.0))


def test_frame1_not_transversal():
    with pytest.raises(NotTransversal):
        frame1(_jets("u; v; 0; u; v", 0.5, 0.7))


def test_maurer_cartan_level1_normalization():
    fr = frame1(_jets("h2", 0.3, -0.2, 5))
    mc = maurer_cartan(fr)
    # de0 = e1 du + e2 dv exactly: the coframe is the identity and the
    # remaining entries of column 0 vanish
    assert _allzero(mc.du[1][0] - 1.0) and _allzero(mc.dv[1][0])
    assert _allzero(mc.du[2][0]) and _allzero(mc.dv[2][0] - 1.0)
    for i in (0, 3, 4):
        assert _allzero(mc.du[i][0]) and _allzero(mc.dv[i][0])


def test_maurer_cartan_gauge_change_law():
    # For constant K: Omega~ = K^-1 Omega K
    fr = frame1(_jets("s21", 0.1, 0.2, 4))
    mc = maurer_cartan(fr)
    rng = np.random.default_rng(5)
    K = np.eye(5) + 0.3 * rng.uniform(-1, 1, size=(5, 5))
    gauged = apply_gauge(fr, GaugeTransform([list(r) for r in K]))
    mc2 = maurer_cartan(gauged)
    Kinv = np.linalg.inv(K)
    for part in ("du", "dv"):
        raw = getattr(mc, part)
        new = getattr(mc2, part)
        for i in range(5):
            for j in range(5):
                expected = sum(
                    Kinv[i, a] * raw[a][b] * K[b, j] for a in range(5) for b in range(5)
                )
                assert np.allclose(new[i][j].coeffs, expected.coeffs, atol=1e-10)


def _structure_residual_max(mc):
    """Largest coefficient of d(Omega) + Omega ^ Omega over all entries."""
    worst = 0.0
    for i in range(5):
        for j in range(5):
            d_entry = mc.du[i][j].deriv_v() * -1.0 + mc.dv[i][j].deriv_u()
            wedge = None
            for k in range(5):
                term = mc.du[i][k] * mc.dv[k][j] - mc.dv[i][k] * mc.du[k][j]
                wedge = term if wedge is None else wedge + term
            resid = d_entry + wedge
            worst = max(worst, float(np.abs(resid.coeffs).max()))
    return worst


def test_structure_equations_hold():
    for name in ("h2", "s21"):
        fr = frame1(_jets(name, 0.25, -0.35, 5))
        assert _structure_residual_max(maurer_cartan(fr)) < 1e-10


def test_fundamental_matrices_fixture():
    fr = frame1(_jets(NULL_FIXTURE, 0.0, 0.0))
    fund = fundamental_matrices(maurer_cartan(fr))
    assert np.allclose(fund.h3.const(), (1.0, 0.0, 0.0), atol=1e-12)
    assert np.allclose(fund.h4.const(), (0.0, 1.0, 0.0), atol=1e-12)
    assert np.allclose(fund.h0.const(), (1.0, 0.0, 1.0), atol=1e-12)
    assert fund.asymmetry < 1e-12
    stype = classify_plane(fund)
    assert stype.tag == "Null"


def test_fundamental_matrices_degenerate():
    # Hessians of the last four components span only two directions
    text = "1 + u^2; u; v; v^2; u^2 + v^2"
    fr = frame1(_jets(text, 0.0, 0.0))
    with pytest.raises(Degenerate):
        fundamental_matrices(maurer_cartan(fr))


def test_classify_independence_failure():
    fund_like = type("F", (), {})()
    fund_like.h3 = SymMat2T(1.0, 0.0, -1.0)
    fund_like.h4 = SymMat2T(2.0, 0.0, -2.0)
    with pytest.raises(IndependenceFailure):
        classify_plane(fund_like)


def test_classification_of_builtin_models():
    expected = {"h2": "SpaceLike", "sphere": "SpaceLike", "s21": "TimeLike"}
    for name, tag in expected.items():
        fr = frame1(_jets(name, 0.21, 0.13))
        fund = fundamental_matrices(maurer_cartan(fr))
        assert classify_plane(fund).tag == tag


def _normal_forms(frame):
    return fundamental_matrices(maurer_cartan(frame))


def test_adapt2_spacelike_normal_forms():
    fr = frame1(_jets("h2", 0.4, 0.1, 5))
    fund = _normal_forms(fr)
    fr2, gauge, eps = adapt2_spacelike(fr, fund)
    assert eps == 1 and fr2.level == 2 and fr2.surface_type == "SpaceLike"
    fund2 = _normal_forms(fr2)
    for got, want in (
        (fund2.h3, (1.0, 0.0, -1.0)),
        (fund2.h4, (0.0, 1.0, 0.0)),
        (fund2.h0, (1.0, 0.0, 1.0)),
    ):
        for entry, target in zip((got.a, got.b, got.c), want):
            ref = np.zeros_like(entry.coeffs)
            ref[0] = target
            assert np.allclose(entry.coeffs, ref, atol=1e-10)


def test_adapt2_spacelike_sphere_epsilon():
    fr = frame1(_jets("sphere", 0.2, -0.3, 4))
    _, _, eps = adapt2_spacelike(fr, _normal_forms(fr))
    assert eps == -1


def test_adapt2_timelike_normal_forms():
    fr = frame1(_jets("s21", -0.2, 0.25, 5))
    fr2, gauge = adapt2_timelike(fr, _normal_forms(fr))
    assert fr2.level == 2 and fr2.surface_type == "TimeLike"
    fund2 = _normal_forms(fr2)
    for got, want in (
        (fund2.h3, (1.0, 0.0, 0.0)),
        (fund2.h4, (0.0, 0.0, 1.0)),
        (fund2.h0, (0.0, 1.0, 0.0)),
    ):
        for entry, target in zip((got.a, got.b, got.c), want):
            ref = np.zeros_like(entry.coeffs)
            ref[0] = target
            assert np.allclose(entry.coeffs, ref, atol=1e-10)


def _gauge_distance_from_identity(gauge):
    worst = 0.0
    for i in range(5):
        for j in range(5):
            x = gauge.K[i][j]
            x0 = x.const if isinstance(x, TaylorScalar) else float(x)
            worst = max(worst, abs(x0 - (1.0 if i == j else 0.0)))
    return worst


def test_adapt2_is_stable_on_adapted_frames():
    # re-running the reduction on its own output returns the identity gauge
    fr = frame1(_jets("h2", 0.15, 0.3, 5))
    fr2, _, _ = adapt2_spacelike(fr, _normal_forms(fr))
    _, gauge2, eps2 = adapt2_spacelike(fr2, _normal_forms(fr2))
    assert eps2 == 1
    assert _gauge_distance_from_identity(gauge2) < 1e-10

    fr = frame1(_jets("s21", 0.15, 0.3, 5))
    fr2, _ = adapt2_timelike(fr, _normal_forms(fr))
    _, gauge2 = adapt2_timelike(fr2, _normal_forms(fr2))
    assert _gauge_distance_from_identity(gauge2) < 1e-10


def test_adapt3_kills_normal_translation_terms():
    for name, case in (("h2", "SpaceLike"), ("s21", "TimeLike")):
        fr = frame1(_jets(name, 0.3, -0.1, 5))
        fund = _normal_forms(fr)
        if case == "SpaceLike":
            fr2, _, eps = adapt2_spacelike(fr, fund)
        else:
            fr2, _ = adapt2_timelike(fr, fund)
            eps = 0
        mc2 = maurer_cartan(fr2)
        fr3, gauge3 = adapt3(fr2, mc2, case, eps)
        assert fr3.level == 3
        mc3 = maurer_cartan(fr3)
        for j in (3, 4):
            x1, x2 = mc3.in_coframe(0, j)
            assert abs(x1.const) < 1e-10 and abs(x2.const) < 1e-10
        # idempotence: the translational gauge is now zero
        fr4, gauge4 = adapt3(fr3, mc3, case, eps)
        assert _gauge_distance_from_identity(gauge4) < 1e-10


def test_position_column_is_preserved():
    jets = _jets("sphere", 0.3, 0.2, 5)
    fr = frame1(jets)
    fund = _normal_forms(fr)
    fr2, _, eps = adapt2_spacelike(fr, fund)
    fr3, _ = adapt3(fr2, maurer_cartan(fr2), "SpaceLike", eps)
    for i in range(5):
        want = jets[i].truncate(fr3.matrix[i][0].degree)
        assert np.allclose(fr3.matrix[i][0].coeffs, want.coeffs, atol=1e-11)


def _random_g1_gauge(rng, degree=None, jet_valued=False):
    def entry(x):
        if not jet_valued:
            return float(x)
        from centroframe import taylor

        c = np.zeros(taylor.n_terms(degree))
        c[0] = x
        c[1] = 0.2 * rng.uniform(-1, 1)
        c[2] = 0.2 * rng.uniform(-1, 1)
        return TaylorScalar(c)

    while True:
        A = rng.uniform(-1.5, 1.5, size=(2, 2))
        B = rng.uniform(-1.5, 1.5, size=(2, 2))
        if abs(np.linalg.det(A)) > 0.3 and abs(np.linalg.det(B)) > 0.3:
            break
    r = rng.uniform(-1, 1, size=6)
    return GaugeTransform.from_blocks(
        A=[[entry(x) for x in row] for row in A],
        B=[[entry(x) for x in row] for row in B],
        r03=entry(r[0]),
        r04=entry(r[1]),
        r13=entry(r[2]),
        r14=entry(r[3]),
        r23=entry(r[4]),
        r24=entry(r[5]),
    )


def test_readaptation_after_random_gauge():
    # the 2-adapted normal forms do not depend on the 1-adapted gauge
    rng = np.random.default_rng(42)
    for name, case in (("h2", "SpaceLike"), ("s21", "TimeLike")):
        fr = frame1(_jets(name, 0.2, 0.1, 4))
        for trial in range(5):
            jet_valued = trial >= 3
            gauge = _random_g1_gauge(rng, degree=3, jet_valued=jet_valued)
            gauged = apply_gauge(fr, gauge)
            fund = _normal_forms(gauged)
            assert classify_plane(fund).tag == case
            if case == "SpaceLike":
                fr2, _, eps = adapt2_spacelike(gauged, fund)
                assert eps == 1
            else:
                fr2, _ = adapt2_timelike(gauged, fund)
            fund2 = _normal_forms(fr2)
            want3 = (1.0, 0.0, -1.0) if case == "SpaceLike" else (1.0, 0.0, 0.0)
            want4 = (0.0, 1.0, 0.0) if case == "SpaceLike" else (0.0, 0.0, 1.0)
            assert np.allclose(fund2.h3.const(), want3, atol=1e-9)
            assert np.allclose(fund2.h4.const(), want4, atol=1e-9)


def test_gauge_transform_blocks_round_trip():
    g = GaugeTransform.from_blocks(
        A=[[0.0, 2.0], [-2.0, 0.0]],
        B=[[1.0, 0.5], [0.0, 1.0]],
        r03=0.1,
        r04=0.2,
        r13=0.3,
        r14=0.4,
        r23=0.5,
        r24=0.6,
    )
    assert g.A == [[0.0, 2.0], [-2.0, 0.0]]
    assert g.B == [[1.0, 0.5], [0.0, 1.0]]
    assert g.r == ((0.1, 0.2), (0.3, 0.4), (0.5, 0.6))
    # A = 2 R(pi/2) in the row convention [[cos, sin], [-sin, cos]]
    assert g.lam == pytest.approx(2.0)
    assert g.theta == pytest.approx(np.pi / 2)
    composed = g.compose(GaugeTransform(identity(5)))
    assert np.allclose(composed.K, g.K)
