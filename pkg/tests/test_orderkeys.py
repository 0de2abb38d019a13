from fractions import Fraction

from valforge.orderkeys import (DegLexOrder, LexOrder, OrderKey, WeightOrder,
                                WordDegLexOrder, key_dot)


def test_orderkey_lexicographic():
    a = OrderKey((1, 0))
    b = OrderKey((1, 1))
    c = OrderKey((2, -5))
    assert a < b < c
    assert a + b == OrderKey((2, 1))
    assert (c - a).levels == (1, -5)
    assert a.scale(Fraction(3, 2)) == OrderKey((Fraction(3, 2), 0))


def test_key_dot():
    keys = [OrderKey((1, 0)), OrderKey((0, 1))]
    assert key_dot(keys, (2, 3)) == OrderKey((2, 3))


def test_lex_order_priority():
    # x dominant: (1,0) beats (0,5)
    lex = LexOrder(2, priority=[0, 1])
    assert lex.compare((1, 0), (0, 5)) == 1
    assert lex.max([(1, 0), (0, 5), (1, 1)]) == (1, 1)


def test_deglex_degree_first():
    deglex = DegLexOrder(2, priority=[0, 1])
    assert deglex.compare((1, 0), (0, 2)) == -1
    assert deglex.compare((1, 1), (0, 2)) == 1  # tie on degree, x wins


def test_weight_order_with_infinitesimal():
    # weights (1+eps, 1): deglex in disguise
    w = WeightOrder([OrderKey((1, 1)), OrderKey((1, 0))], priority=[0, 1])
    assert w.compare((1, 0), (0, 2)) == -1   # x < y^2
    assert w.compare((2, 0), (0, 3)) == -1   # x^2 < y^3
    assert w.compare((1, 0), (0, 1)) == 1    # x > y


def test_word_deglex_shorter_is_smaller():
    o = WordDegLexOrder(3, priority=[0, 1, 2])
    assert o.compare((0,), (1, 2)) == -1
    assert o.compare((2, 2, 2), (0,)) == 1
    # same length: letter priority decides, dominant first
    assert o.compare((0, 2), (1, 0)) == 1


def test_word_deglex_generator_lengths():
    o = WordDegLexOrder(2, priority=[0, 1], lengths=[2, 1])
    # one copy of the heavy letter outweighs one light letter
    assert o.compare((0,), (1,)) == 1
    assert o.compare((0,), (1, 1)) == 1  # equal weight, letter 0 dominant
