import pytest

from leibcoh.errors import ParseError
from leibcoh.fields import PrimeField, QQ, is_prime, parse_field


def test_primality():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31)


def test_prime_field_requires_prime():
    with pytest.raises(ParseError):
        PrimeField(6)
    with pytest.raises(ParseError):
        parse_field("F9")


def test_rational_parse_and_format():
    x = QQ.parse("-3/6")
    assert QQ.fmt(x) == "-1/2"
    assert QQ.fmt(QQ.parse("4/2")) == "2"
    assert QQ.is_zero(QQ.sub(x, x))
    assert QQ.fmt(QQ.inv(QQ.parse("2/3"))) == "3/2"
    with pytest.raises(ParseError):
        QQ.parse("1/0")


def test_prime_field_arithmetic_canonical():
    f5 = PrimeField(5)
    assert f5.parse("7") == 2
    assert f5.parse("3/4") == f5.div(3, 4)
    assert f5.neg(2) == 3
    assert f5.inv(3) == 2
    assert f5.canon(-1) == 4
    with pytest.raises(ZeroDivisionError):
        f5.inv(5)


def test_field_spec_round_trip():
    from leibcoh.fields import field_to_json

    for spec in ("Q", "F7"):
        f = parse_field(spec)
        assert parse_field(field_to_json(f)) == f
    assert parse_field("Q").char == 0
    assert parse_field("F7").char == 7
