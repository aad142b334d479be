import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratkit.exprlang import (
    ExprEvalError,
    ExprSyntaxError,
    eval_dual,
    eval_expr,
    format_expr,
    jacobian,
    parse,
    substitute,
    variables_of,
)


def test_basic_arithmetic():
    assert eval_expr(parse("x^2 + y", ["x", "y"]), [2, 3]) == 7.0
    assert eval_expr(parse("x*y", ["x", "y"]), [3, 4]) == 12.0
    assert eval_expr(parse("sqrt(y)", ["x", "y"]), [0, 4]) == 2.0


def test_precedence():
    vars_ = ["x", "y"]
    assert eval_expr(parse("-x^2", vars_), [3, 0]) == -9.0
    assert eval_expr(parse("2^-2", vars_), [0, 0]) == 0.25
    assert eval_expr(parse("2^3^2", vars_), [0, 0]) == 512.0  # right-assoc
    assert eval_expr(parse("2*-3", vars_), [0, 0]) == -6.0
    assert eval_expr(parse("6 - 2 - 1", vars_), [0, 0]) == 3.0
    assert eval_expr(parse("8 / 4 / 2", vars_), [0, 0]) == 1.0
    assert eval_expr(parse("min(3, max(1, 2))", vars_), [0, 0]) == 2.0


def test_conditional_evaluates_lazily():
    # the untaken branch would divide by zero
    e = parse("if(y > 0, x / y, 0)", ["x", "y"])
    assert eval_expr(e, [3.0, 0.0]) == 0.0
    assert eval_expr(e, [3.0, 2.0]) == 1.5


def test_piecewise_flat_function_matches_hand_coded():
    e = parse("if(x^2 < y^9, (x^2/y^7 - y^2)^2, 0)", ["x", "y"])

    def by_hand(x, y):
        return (x * x / y**7 - y * y) ** 2 if x * x < y**9 else 0.0

    y = 0.01
    x = y**4.5 / math.sqrt(3.0)
    got = eval_expr(e, [x, y])
    want = by_hand(x, y)
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))
    assert eval_expr(e, [0.3, 0.1]) == 0.0  # x^2 >= y^9 region


def test_syntax_errors_carry_offsets():
    with pytest.raises(ExprSyntaxError) as err:
        parse("x + * y", ["x", "y"])
    assert err.value.offset == 4
    with pytest.raises(ExprSyntaxError, match="unknown identifier"):
        parse("x + z", ["x", "y"])
    with pytest.raises(ExprSyntaxError, match="takes 1 argument"):
        parse("sqrt(x, y)", ["x", "y"])
    with pytest.raises(ExprSyntaxError, match="comparison"):
        parse("if(x, 1, 2)", ["x"])
    with pytest.raises(ExprSyntaxError, match="unknown function"):
        parse("tan(x)", ["x"])


def test_domain_errors():
    with pytest.raises(ExprEvalError, match="square root"):
        eval_expr(parse("sqrt(x)", ["x"]), [-1.0])
    with pytest.raises(ExprEvalError, match="log"):
        eval_expr(parse("log(x)", ["x"]), [0.0])
    with pytest.raises(ExprEvalError, match="division by zero"):
        eval_expr(parse("1 / x", ["x"]), [0.0])
    with pytest.raises(ExprEvalError, match="negative power"):
        eval_expr(parse("x^-1", ["x"]), [0.0])
    with pytest.raises(ExprEvalError, match="requires a > 0"):
        eval_expr(parse("x^0.5", ["x"]), [-2.0])
    # integral exponents are specialized: negative bases are fine
    assert eval_expr(parse("x^3", ["x"]), [-2.0]) == -8.0


def test_overflow_is_not_silent():
    with pytest.raises(ExprEvalError):
        eval_expr(parse("exp(x)", ["x"]), [1e4])


def test_dual_simple_derivatives():
    d = eval_dual(parse("x^2", ["x"]), [3.0])
    assert d.value == 9.0 and d.partials[0] == 6.0
    d = eval_dual(parse("sqrt(y)", ["x", "y"]), [1.0, 4.0])
    assert d.partials[1] == 0.25 and d.partials[0] == 0.0


def test_dual_derivative_of_flat_function():
    e = parse("if(x^2 < y^9, (x^2/y^7 - y^2)^2, 0)", ["x", "y"])
    c = 8.0 / (3.0 * math.sqrt(3.0))
    for y in (0.04, 0.01):
        x = y**4.5 / math.sqrt(3.0)
        d = eval_dual(e, [x, y])
        want = c / math.sqrt(y)
        assert abs(abs(d.partials[0]) - want) <= 1e-6 * want


def test_switching_surface_warning():
    e = parse("if(x < 1, x^2, x)", ["x"])
    near = eval_dual(e, [1.0 + 1e-12])
    assert near.warnings
    far = eval_dual(e, [0.5])
    assert not far.warnings


_SMOOTH_EXPRS = [
    "x*y + sin(x)*cos(y)",
    "exp(x/4) * sqrt(y^2 + 1)",
    "(x + 2*y)^3",
    "x^2 * y - y^2 / (x^2 + 1)",
    "sqrt(exp(x/8) + y^2)",
    "log(x^2 + 1) + y",
    "x / (1 + y^2)",
    "cos(x*y)",
    "(x^2 + y^2 + 1)^0.5",
    "min(x, y)^2 + max(x, y)",
    "abs(x) * y",
    "if(x < y, x*y, x + y)",
]


def test_dual_matches_central_differences():
    rng = np.random.default_rng(1234)
    h = 1e-6
    checked = 0
    while checked < 1000:
        src = _SMOOTH_EXPRS[checked % len(_SMOOTH_EXPRS)]
        e = parse(src, ["x", "y"])
        pt = rng.uniform(-2.0, 2.0, size=2)
        if abs(pt[0] - pt[1]) < 1e-2 or abs(pt[0]) < 1e-2:
            continue  # stay away from kinks and switching surfaces
        d = eval_dual(e, pt)
        for j in range(2):
            lo = pt.copy()
            hi = pt.copy()
            lo[j] -= h
            hi[j] += h
            fd = (eval_expr(e, hi) - eval_expr(e, lo)) / (2 * h)
            assert abs(d.partials[j] - fd) <= 1e-5 * (1.0 + abs(fd))
        checked += 1


def test_dual_value_equals_eval_exactly():
    rng = np.random.default_rng(4321)
    for i in range(300):
        src = _SMOOTH_EXPRS[i % len(_SMOOTH_EXPRS)]
        e = parse(src, ["x", "y"])
        pt = rng.uniform(-2.0, 2.0, size=2)
        assert eval_dual(e, pt).value == eval_expr(e, pt)  # 0 ulp


def _leaf(vars_):
    return st.one_of(
        st.sampled_from(vars_),
        st.floats(min_value=0.0, max_value=9.5,
                  allow_nan=False, allow_infinity=False).map(lambda f: repr(round(f, 3))),
    )


def _exprs(vars_):
    unary = ["sqrt", "sin", "cos", "exp", "log", "abs"]
    return st.recursive(
        _leaf(vars_),
        lambda children: st.one_of(
            st.tuples(children, st.sampled_from("+-*/^"), children).map(
                lambda t: f"({t[0]}) {t[1]} ({t[2]})"),
            st.tuples(st.sampled_from(unary), children).map(
                lambda t: f"{t[0]}({t[1]})"),
            st.tuples(children, st.sampled_from(["<", "<=", ">", ">="]),
                      children, children, children).map(
                lambda t: f"if({t[0]} {t[1]} {t[2]}, {t[3]}, {t[4]})"),
            children.map(lambda c: f"-({c})"),
        ),
        max_leaves=12,
    )


@settings(max_examples=200, deadline=None)
@given(src=_exprs(["x", "y", "z"]))
def test_parse_print_round_trip(src):
    e = parse(src, ["x", "y", "z"])
    assert parse(format_expr(e), ["x", "y", "z"]) == e


def test_substitute_composes_expressions():
    g = parse("a^2 + b", ["a", "b"])
    fa = parse("x + 1", ["x"])
    fb = parse("2*x", ["x"])
    composed = substitute(g, {"a": fa, "b": fb})
    assert variables_of(composed) == {"x"}
    # (x+1)^2 + 2x at x = 3: 16 + 6
    assert eval_expr(composed, [3.0]) == 22.0


def test_jacobian_of_chart():
    vals, J, warns = jacobian(
        [parse("u", ["u", "t"]), parse("u^2 * (1 + t) / 2", ["u", "t"])],
        [0.5, 0.5])
    assert np.allclose(vals, [0.5, 0.1875])
    assert np.allclose(J, [[1.0, 0.0], [0.75, 0.125]])
    assert warns == ()
