"""
Tests for the numeric codings and domain types.
"""

from fractions import Fraction

import pytest

from ambient.codings import (
  code_length,
  code_members,
  decode_ball,
  decode_code,
  decode_point,
  decode_positive,
  decode_rational,
  encode_ball,
  encode_finite_set,
  encode_positive,
  encode_rational,
  encode_seq,
  get_dimension,
  pair,
  set_dimension,
  union_code,
  unpair,
)
from ambient.types import Ball, Point, SetCode, format_rational, parse_rational


class TestPairing:
  """Cantor pairing and its inverse."""

  def test_small_values(self):
    assert pair(0, 0) == 0
    assert pair(1, 0) == 1
    assert pair(0, 1) == 2
    assert unpair(1) == (1, 0)
    assert unpair(2) == (0, 1)

  def test_unpair_inverts_pair(self, rng):
    for _ in range(200):
      a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
      assert unpair(pair(a, b)) == (a, b)

  def test_negative_arguments_rejected(self):
    with pytest.raises(ValueError):
      pair(-1, 0)
    with pytest.raises(ValueError):
      unpair(-3)


class TestRationals:
  """The enumerations of rationals and positive rationals."""

  def test_first_rationals(self):
    assert decode_rational(0) == 0
    assert decode_rational(1) == 1
    assert decode_rational(2) == -1
    assert decode_rational(3) == 2

  def test_canonical_index(self):
    assert encode_rational(Fraction(2)) == 3
    assert encode_rational(Fraction(-1, 2)) == 6
    assert decode_rational(6) == Fraction(-1, 2)

  def test_duplicates_decode_to_same_value(self):
    # (a, b) = (1, 1) is 2/2
    assert decode_positive(pair(1, 1)) == 1

  def test_positive(self):
    assert decode_positive(0) == 1
    assert decode_positive(2) == Fraction(1, 2)
    with pytest.raises(ValueError):
      encode_positive(Fraction(0))


class TestBalls:
  """Decoding of ball indices."""

  def test_ball_zero(self):
    assert decode_ball(0) == ((Fraction(0), Fraction(0)), Fraction(1))

  def test_unit_ball_at_one(self):
    assert encode_ball((Fraction(1), Fraction(0)), Fraction(1)) == 1
    ball = Ball.from_index(1)
    assert ball.center == (1, 0)
    assert ball.radius == 1

  def test_index_is_canonical(self):
    ball = Ball((Fraction(2, 4), Fraction(-3)), Fraction(6, 4))
    assert Ball.from_index(ball.index) == ball

  def test_open_and_closed_membership(self):
    ball = Ball((0, 0), 1)
    assert not ball.contains((Fraction(1), Fraction(0)))
    assert ball.contains((Fraction(1), Fraction(0)), closed=True)

  def test_nonpositive_radius_rejected(self):
    with pytest.raises(ValueError):
      Ball((0, 0), 0)

  def test_dimension_changes_decoding(self):
    set_dimension(3)
    assert get_dimension() == 3
    assert decode_point(0) == (0, 0, 0)
    set_dimension(2)
    assert decode_point(0) == (0, 0)

  def test_bad_dimension(self):
    with pytest.raises(ValueError):
      set_dimension(0)


class TestSetCodes:
  """Codes of finite sequences and sets."""

  def test_single_entry(self):
    assert encode_seq([5]) == 20
    assert decode_code(20) == (5,)
    assert code_length(20) == 0

  def test_sequence_of_two(self):
    j = encode_seq([1, 2])
    assert j == 53
    assert decode_code(j) == (1, 2)
    assert code_members(j) == frozenset({1, 2})

  def test_empty_code_forbidden(self):
    with pytest.raises(ValueError, match="empty code forbidden"):
      encode_seq([])
    with pytest.raises(ValueError, match="empty code forbidden"):
      encode_finite_set([])
    with pytest.raises(ValueError, match="empty code forbidden"):
      SetCode(())

  def test_union_code(self):
    l = encode_seq([encode_seq([3]), encode_seq([1, 2])])
    assert decode_code(union_code(l, 0, 1)) == (1, 2, 3)
    assert decode_code(union_code(l, 1, 1)) == (1, 2)

  def test_union_code_invalid_segment(self):
    l = encode_seq([encode_seq([3]), encode_seq([1, 2])])
    with pytest.raises(ValueError, match="empty/invalid segment"):
      union_code(l, 1, 0)
    with pytest.raises(ValueError, match="empty/invalid segment"):
      union_code(l, 0, 2)

  def test_setcode_canonical_members(self):
    code = SetCode.from_members([3, 1, 3])
    assert code.balls == (1, 3)
    assert code.last == 1
    assert SetCode.from_code(code.code) == code

  def test_from_balls_deduplicates(self):
    ball = Ball((0, 0), 1)
    code = SetCode.from_balls([ball, Ball((Fraction(0), Fraction(0)), Fraction(2, 2))])
    assert code.balls == (0,)
    assert code.decoded == [ball]

  def test_membership(self):
    code = SetCode.from_balls([Ball((0, 0), 1), Ball((3, 0), 1)])
    assert code.contains((Fraction(3), Fraction(1, 2)))
    assert not code.contains((Fraction(2), Fraction(0)))


class TestRationalText:
  """The exact "p/q" text format."""

  def test_parse(self):
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(7) == 7

  @pytest.mark.parametrize("text", ["0.5", "1e3", "", "1/0", "x"])
  def test_inexact_or_malformed_rejected(self, text):
    with pytest.raises(ValueError):
      parse_rational(text)

  def test_format_always_has_denominator(self):
    assert format_rational(Fraction(2)) == "2/1"
    assert format_rational(Fraction(-3, 9)) == "-1/3"

  def test_points(self):
    point = Point.parse("1/2,3")
    assert point.coords == (Fraction(1, 2), Fraction(3))
    assert point.format(";") == "1/2;3/1"
    with pytest.raises(ValueError):
      Point.of(1)
