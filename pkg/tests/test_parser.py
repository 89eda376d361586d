from fractions import Fraction
from random import Random

import pytest

from poisweyl import (
    HBAR,
    HbarScalar,
    I,
    VariableSpace,
    WeylElement,
    WeylSignature,
    affine_space,
)
from poisweyl.parser import (
    ExprSyntaxError,
    bindings_for_signature,
    bindings_for_space,
    parse_expression,
    parse_scalar,
)
from poisweyl.scalar import I_HBAR

import gen


def parse_in(space, text):
    return parse_expression(text, bindings_for_space(space))


def test_parse_triangular_element():
    space = VariableSpace.canonical(2)
    q1, q2, p1, p2 = space.vars()
    assert parse_in(space, "q1^2*p2 + p1") == q1 ** 2 * p2 + p1


def test_parse_normal_orders_weyl_input():
    sig = WeylSignature.quantum(1)
    value = parse_expression("w1*z1", bindings_for_signature(sig))
    assert str(value) == "z1*w1 - i*h"


def test_syntax_error_position():
    space = VariableSpace.canonical(1)
    with pytest.raises(ExprSyntaxError) as err:
        parse_in(space, "q1 + + p1")
    assert err.value.position == 5


def test_unknown_identifier():
    space = VariableSpace.canonical(1)
    with pytest.raises(ExprSyntaxError) as err:
        parse_in(space, "q1 + bogus")
    assert "bogus" in str(err.value)


def test_scalar_expressions():
    assert parse_scalar("-1/2*i*h^2") == -(I * HBAR ** 2) / 2
    assert parse_scalar("2 + 3*h") == HbarScalar.of(2) + 3 * HBAR
    assert parse_scalar("i^2") == HbarScalar.of(-1)
    with pytest.raises(ExprSyntaxError):
        parse_scalar("q1")


def test_precedence():
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    assert parse_in(space, "q1+p1*q1^2") == q + p * q ** 2
    assert parse_in(space, "-q1^2") == -(q ** 2)
    assert parse_in(space, "(q1+p1)^2") == (q + p) ** 2


def test_exponent_must_be_integer_literal():
    space = VariableSpace.canonical(1)
    with pytest.raises(ExprSyntaxError):
        parse_in(space, "q1^p1")
    with pytest.raises(ExprSyntaxError):
        parse_in(space, "q1^2^3")


def test_division_restrictions():
    space = VariableSpace.canonical(1)
    q, _ = space.vars()
    assert parse_in(space, "q1/2") == q / 2
    with pytest.raises(ExprSyntaxError):
        parse_in(space, "q1/p1")
    with pytest.raises(ExprSyntaxError):
        parse_in(space, "q1/h")
    with pytest.raises(ExprSyntaxError):
        parse_in(space, "q1/0")


def test_unexpected_character():
    with pytest.raises(ExprSyntaxError) as err:
        parse_scalar("1 $ 2")
    assert err.value.position == 2


def test_reserved_names_rejected_in_spaces():
    with pytest.raises(ValueError):
        VariableSpace.abstract(("i", "x"), {})


def _roundtrip(value, bindings, lift=None):
    text = str(value)
    reparsed = parse_expression(text, bindings)
    if lift is not None and isinstance(reparsed, HbarScalar):
        reparsed = lift(reparsed)
    assert reparsed == value, f"round trip failed for {text!r}"
    assert str(reparsed) == text
    return text


def test_roundtrip_corpus():
    rng = Random(59)
    seen = set()

    space1 = VariableSpace.canonical(1)
    space2 = VariableSpace.canonical(2)
    asp = affine_space()
    sig1 = WeylSignature.quantum(1)
    sig2 = WeylSignature.quantum(2)
    dsig = WeylSignature.differential(1)

    for _ in range(15):
        seen.add(_roundtrip(gen.random_poly(rng, space1, 3, gaussian=True),
                            bindings_for_space(space1), space1.constant))
        seen.add(_roundtrip(gen.random_poly(rng, space2, 3),
                            bindings_for_space(space2), space2.constant))
        seen.add(_roundtrip(gen.random_poly(rng, asp, 4),
                            bindings_for_space(asp), asp.constant))
        seen.add(_roundtrip(gen.random_weyl(rng, sig1, 3),
                            bindings_for_signature(sig1),
                            lambda s: WeylElement.identity(sig1) * s))
        seen.add(_roundtrip(gen.random_weyl(rng, sig2, 2),
                            bindings_for_signature(sig2),
                            lambda s: WeylElement.identity(sig2) * s))
        seen.add(_roundtrip(gen.random_weyl(rng, dsig, 3),
                            bindings_for_signature(dsig),
                            lambda s: WeylElement.identity(dsig) * s))
        seen.add(_roundtrip(gen.random_scalar(rng, gaussian=True), {}))
    assert len(seen) >= 50


def test_roundtrip_handpicked():
    cases = [
        (VariableSpace.canonical(2), "q1^2*p2 + p1"),
        (VariableSpace.canonical(1), "-q1"),
        (VariableSpace.canonical(1), "0"),
        (affine_space(), "2*x^2*y"),
        (affine_space(), "x + y"),
    ]
    for space, text in cases:
        value = parse_in(space, text)
        assert str(value) == text
