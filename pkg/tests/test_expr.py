import math
import random

import pytest

from parsers.expr import depends_on, eval_expr, free_names, functions_used, parse, pretty, tokenize
from utils.errors import DomainError, ExprSyntaxError, UnboundParameter


# --------------------------------------------------
# parse
# --------------------------------------------------
def test_single_variable():
    assert parse("eta").root == ("var", "eta")


def test_power_binds_tighter_than_sum():
    assert parse("eta + eta^3").root == ("op", "+", ("var", "eta"), ("op", "^", ("var", "eta"), ("num", 3.0)))


def test_power_is_right_associative():
    assert parse("2^3^2").root == ("op", "^", ("num", 2.0), ("op", "^", ("num", 3.0), ("num", 2.0)))


def test_unary_minus_below_power():
    assert parse("-eta^2").root == ("neg", ("op", "^", ("var", "eta"), ("num", 2.0)))


def test_function_call_and_scientific_literal():
    e = parse("1.5e-1*tanh(eta)")
    assert e.root == ("op", "*", ("num", 0.15), ("func", "tanh", ("var", "eta")))


def test_unclosed_parenthesis_reports_end_offset():
    source = "-(alpha*tanh(eta)"
    with pytest.raises(ExprSyntaxError) as err:
        parse(source)
    assert err.value.offset == len(source)
    assert "Unclosed parenthesis" in str(err.value)
    assert err.value.module == "expr"


def test_unknown_function_rejected():
    with pytest.raises(ExprSyntaxError) as err:
        parse("erf(eta)")
    assert err.value.offset == 0


def test_implicit_multiplication_rejected():
    with pytest.raises(ExprSyntaxError) as err:
        parse("2 eta")
    assert err.value.offset == 2


def test_stray_closing_parenthesis():
    with pytest.raises(ExprSyntaxError):
        parse("eta)")


def test_offsets_count_utf8_bytes():
    tokens = tokenize("eta + 1")
    assert [t.offset for t in tokens] == [0, 4, 6, 7]
    with pytest.raises(ExprSyntaxError) as err:
        parse("é + $")
    assert err.value.offset == 5


# --------------------------------------------------
# eval
# --------------------------------------------------
def test_eval_examples():
    assert eval_expr(parse("eta + eta^3"), 0.0, 1.0) == 2.0
    assert eval_expr(parse("-alpha*tanh(eta)"), 3.0, 0.0, {"alpha": 2.0}) == 0.0
    assert eval_expr(parse("eta"), 7.0, -0.5) == -0.5


def test_eval_constant_pi():
    assert eval_expr(parse("-(pi/2)*eta"), 0.0, 1.0) == pytest.approx(-math.pi / 2, abs=0)


def test_eval_is_deterministic():
    e = parse("cosh(xi)*sinh(eta)/(1+eta^2)")
    values = {eval_expr(e, 0.3, -1.7) for _ in range(5)}
    assert len(values) == 1


@pytest.mark.parametrize("source, xi, eta", [
    ("eta/xi", 0.0, 1.0),
    ("sqrt(eta)", 0.0, -1.0),
    ("eta^0.5", 0.0, -4.0),
    ("exp(eta)", 0.0, 1e4),
    ("xi^(-1)", 0.0, 1.0),
])
def test_domain_errors(source, xi, eta):
    with pytest.raises(DomainError):
        eval_expr(parse(source), xi, eta)


def test_negative_base_integer_power_is_fine():
    assert eval_expr(parse("eta^3"), 0.0, -2.0) == -8.0


def test_unbound_parameter():
    with pytest.raises(UnboundParameter):
        eval_expr(parse("alpha*eta"), 0.0, 1.0)


# --------------------------------------------------
# introspection and printing
# --------------------------------------------------
def test_free_names():
    assert free_names(parse("eta+eta^3")) == set()
    assert free_names(parse("-alpha*tanh(beta*eta)")) == {"alpha", "beta"}
    assert free_names(parse("xi*0 + eta")) == set()
    assert free_names(parse("pi*eta")) == set()


def test_functions_and_dependencies():
    e = parse("abs(xi)*tanh(eta)")
    assert functions_used(e) == {"abs", "tanh"}
    assert depends_on(e, "xi")
    assert not depends_on(parse("eta^3"), "xi")


@pytest.mark.parametrize("source", [
    "eta + eta^3",
    "-(alpha*tanh(eta))",
    "(eta-xi)-(xi-eta)",
    "eta/(xi*2)",
    "(-eta)^3",
    "2^-eta",
    "(2^3)^2",
    "-(-eta)",
    "cos(xi)*eta/(1+xi^2)",
])
def test_pretty_reparses_to_same_tree(source):
    e = parse(source)
    assert parse(pretty(e)).root == e.root


def test_pretty_is_minimal():
    assert pretty(parse("((eta)) + ((eta^3))")) == "eta+eta^3"
    assert str(parse("-(alpha * tanh(eta))")) == "-(alpha*tanh(eta))"


# --------------------------------------------------
# random trees: parenthesized text, canonical text and direct evaluation agree
# --------------------------------------------------
def _random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([("var", "xi"), ("var", "eta"), ("var", "alpha"),
                           ("num", float(rng.randint(1, 5))), ("num", 0.5)])
    kind = rng.choice(["+", "-", "*", "/", "^", "neg", "func"])
    if kind == "neg":
        return ("neg", _random_tree(rng, depth - 1))
    if kind == "func":
        return ("func", rng.choice(["sin", "cos", "tanh"]), _random_tree(rng, depth - 1))
    if kind == "^":
        return ("op", "^", _random_tree(rng, depth - 1), ("num", float(rng.randint(0, 3))))
    if kind == "/":
        denominator = ("op", "+", ("num", 2.0), ("func", "cos", _random_tree(rng, depth - 1)))
        return ("op", "/", _random_tree(rng, depth - 1), denominator)
    return ("op", kind, _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def _parenthesized(node):
    kind = node[0]
    if kind == "num":
        return repr(node[1])
    if kind == "var":
        return node[1]
    if kind == "neg":
        return f"(-{_parenthesized(node[1])})"
    if kind == "func":
        return f"{node[1]}({_parenthesized(node[2])})"
    return f"({_parenthesized(node[2])} {node[1]} {_parenthesized(node[3])})"


def _direct(node, env):
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        return env[node[1]]
    if kind == "neg":
        return -_direct(node[1], env)
    if kind == "func":
        return getattr(math, node[1])(_direct(node[2], env))
    a, b = _direct(node[2], env), _direct(node[3], env)
    op = node[1]
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    return math.pow(a, b)


def test_random_trees_respect_precedence_and_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        tree = _random_tree(rng, 4)
        e = parse(_parenthesized(tree))
        assert e.root == tree
        canonical = parse(pretty(e))
        assert canonical.root == tree
        xi, eta, alpha = (rng.uniform(-2, 2) for _ in range(3))
        expected = _direct(tree, {"xi": xi, "eta": eta, "alpha": alpha})
        assert eval_expr(canonical, xi, eta, {"alpha": alpha}) == pytest.approx(expected, rel=1e-12, abs=1e-12)
