from __future__ import annotations

from hypothesis import given, settings

from laws import (
    BIT_PARTS, bit_env, bracketings, build, check_bit_association,
    check_commutative, check_unit, pushout_cases,
)
from theoria.core import validate_arrow

LAWS = settings(max_examples=200, deadline=None)


@LAWS
@given(pushout_cases())
def test_combine_is_commutative(case):
    check_commutative(case)


@LAWS
@given(pushout_cases())
def test_combine_with_base_is_unit(case):
    check_unit(case)


@LAWS
@given(pushout_cases())
def test_legs_validate(case):
    env, _ = build(case)
    for a in env.arrows:
        assert validate_arrow(a, env) == []


@LAWS
@given(bracketings())
def test_bit_combine_is_associative(shape):
    check_bit_association(shape)


def test_bit_has_all_operations():
    names = {d.name for d in bit_env()["Bit"].decls}
    assert names == {"bit"} | {p.lower() for p in BIT_PARTS}
