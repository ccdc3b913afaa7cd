"""Tests for the surface expression language and built-in models."""

import math

import numpy as np
import pytest

from centroframe.errors import (
    ArityError,
    SurfaceSyntaxError,
    UnknownIdentifier,
    UnknownModel,
)
from centroframe.surfaces import (
    BUILTIN_SURFACES,
    builtin_surface,
    eval_surface,
    load_surface_file,
    parse_surface,
    resolve_surface,
    unparse,
)


def _eval_at(text, u0, v0, degree=2, params=None):
    spec = parse_surface(text, params=params)
    return eval_surface(spec, u0, v0, degree)


def test_basic_components_and_coefficients():
    jets = _eval_at("u; v; u*v; u^2 - v; 2", 2.0, 3.0)
    assert [j.const for j in jets] == [2.0, 3.0, 6.0, 1.0, 2.0]
    prod = jets[2]
    assert prod.coefficient(1, 0) == 3.0
    assert prod.coefficient(0, 1) == 2.0
    assert prod.coefficient(1, 1) == 1.0
    quad = jets[3]
    assert quad.coefficient(1, 0) == 4.0
    assert quad.coefficient(0, 1) == -1.0
    assert quad.coefficient(2, 0) == 1.0


def test_operator_precedence_and_associativity():
    jets = _eval_at("-u^2; 2*u^2; 1 - u - 3; 12/u/2; u^-1", 3.0, 0.0)
    assert jets[0].const == -9.0  # unary minus binds below ^
    assert jets[1].const == 18.0
    assert jets[2].const == -5.0  # left-assoc subtraction
    assert jets[3].const == 2.0  # left-assoc division
    assert jets[4].const == pytest.approx(1.0 / 3.0)


def test_functions_and_nesting():
    jets = _eval_at(
        "sin(u); cos(u)*exp(v); sqrt(1 + u^2); neg(v); sinh(cosh(v))", 0.5, -0.25, 3
    )
    assert jets[0].const == pytest.approx(math.sin(0.5))
    assert jets[1].const == pytest.approx(math.cos(0.5) * math.exp(-0.25))
    assert jets[2].const == pytest.approx(math.sqrt(1.25))
    assert jets[3].const == 0.25
    assert jets[4].const == pytest.approx(math.sinh(math.cosh(-0.25)))


def test_syntax_error_carries_position():
    with pytest.raises(SurfaceSyntaxError) as err:
        parse_surface("u; v; u @ v; u; v")
    assert err.value.line == 1
    assert err.value.column == 9
    with pytest.raises(SurfaceSyntaxError) as err:
        parse_surface("u; v;\n (u; u; v")
    assert err.value.line == 2


def test_component_count_enforced():
    with pytest.raises(SurfaceSyntaxError):
        parse_surface("u; v")
    with pytest.raises(SurfaceSyntaxError):
        parse_surface("u; v; u; v; u; v")


def test_unknown_identifier_and_arity():
    with pytest.raises(UnknownIdentifier):
        parse_surface("u; v; w; u; v")
    with pytest.raises(UnknownIdentifier):
        parse_surface("foo(u); v; u; u; v")
    with pytest.raises(ArityError):
        parse_surface("sin(u, v); v; u; u; v")


def test_parameters_bind_and_missing_params_fail():
    jets = _eval_at("a*u; a; v; u; v", 2.0, 0.0, params={"a": 2.5})
    assert jets[0].const == 5.0
    assert jets[1].const == 2.5
    with pytest.raises(UnknownIdentifier):
        parse_surface("a*u; a; v; u; v")


def test_integer_exponent_required():
    with pytest.raises(SurfaceSyntaxError):
        parse_surface("u^2.5; v; u; u; v")


def test_unparse_round_trip():
    texts = list(BUILTIN_SURFACES.values()) + [
        "-u^2 + (u - v)*(u + v); 1/(1 + u^2); neg(u)-(-v); 2^3*u; sin(cos(u*v))",
    ]
    for text in texts:
        spec = parse_surface(text)
        again = parse_surface(unparse(spec))
        assert again.components == spec.components


def _h2_reference(u, v):
    return [
        (3 * math.cosh(u) ** 2 * math.cosh(v) ** 2 - 1) / 2,
        math.sqrt(3) * math.sinh(u) * math.cosh(u) * math.cosh(v) ** 2,
        math.sqrt(3) * math.cosh(u) * math.sinh(v) * math.cosh(v),
        1.5 * (math.cosh(v) ** 2 * (math.cosh(u) ** 2 - 2) + 1),
        3 * math.sinh(u) * math.sinh(v) * math.cosh(v),
    ]


def test_builtins_at_origin():
    for name in ("h2", "sphere", "s21"):
        jets = eval_surface(builtin_surface(name), 0.0, 0.0, 2)
        assert np.allclose([j.const for j in jets], [1, 0, 0, 0, 0], atol=1e-14)


def test_h2_matches_reference_values():
    rng = np.random.default_rng(3)
    spec = builtin_surface("h2")
    for _ in range(10):
        u0, v0 = rng.uniform(-1.5, 1.5, size=2)
        jets = eval_surface(spec, u0, v0, 2)
        assert np.allclose([j.const for j in jets], _h2_reference(u0, v0), atol=1e-12)


def test_builtin_jets_match_finite_differences():
    h = 1e-5
    spec = builtin_surface("s21")
    u0, v0 = 0.3, -0.4
    jets = eval_surface(spec, u0, v0, 3)
    plus = eval_surface(spec, u0 + h, v0, 1)
    minus = eval_surface(spec, u0 - h, v0, 1)
    for jet, p, m in zip(jets, plus, minus):
        fd = (p.const - m.const) / (2 * h)
        assert abs(jet.coefficient(1, 0) - fd) < 1e-6 * max(1.0, abs(fd))


def test_unknown_builtin_raises():
    with pytest.raises(UnknownModel):
        builtin_surface("torus")
    with pytest.raises(UnknownModel):
        resolve_surface("not_a_file_or_model")


def test_file_loading(tmp_path):
    path = tmp_path / "plane_like.surf"
    path.write_text("# a synthetic quadratic graph\n\n1 + u*v; u; v; u^2; v^2  # trailing\n")
    spec = load_surface_file(str(path))
    assert spec.name == "plane_like"
    jets = eval_surface(spec, 1.0, 2.0, 2)
    assert jets[0].const == 3.0
    via_resolve = resolve_surface(str(path))
    assert via_resolve.components == spec.components
    inline = resolve_surface("u; v; 1; u; v")
    assert inline.name == "inline"
    with pytest.raises(SurfaceSyntaxError):
        empty = tmp_path / "empty.surf"
        empty.write_text("# nothing here\n")
        load_surface_file(str(empty))
