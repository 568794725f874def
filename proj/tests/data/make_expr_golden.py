"""Evaluates the expression corpus with Python semantics and writes expr_golden.json."""
import json
import math

EXPRS = [
    "1", "x1", "-x1", "x1+x2", "x1-x2-x3", "x1*x2+x3", "x1+x2*x3", "(x1+x2)*x3", "x1/x2", "x1/x2/x3",
    "2^3^2", "-2^2", "(-2)^2", "2^-1", "x1^2+x2^2", "abs(x1-x2)", "sgn(x1)", "sgn(0)", "pos(x1)", "pos(-x1)",
    "max(x1, x2)", "min(x1, x2, x3)", "max(x1, x1+x2)^2", "pow(abs(-2), 1.5)", "pow(x2, 3)", "abs(x1)^0.5",
    "max(x1, x1+x2, x1+x2+x3)", "pos(x1+x2+x3)^1.5", "x1*x2*x3", "1.5e2*x1", "2.5E-1+x2", ".5*x1",
    "3.*x2", "min(abs(x1), abs(x2))", "max(0, x1)*max(0, x2)", "sgn(x1*x2)*abs(x3)", "x1-(x2-x3)",
    "(x1)", "((x1+1))*((x2-1))", "-(-x1)", "--x1", "x1^2^0.5", "pos(x1)^2-pos(-x1)^2", "max(x1,x2)-min(x1,x2)",
    "abs(x1+x2)^3/4", "x3/(1+x1^2)", "pow(pos(x2), 0.25)", "1-x1/2", "min(1, max(-1, x1*3))",
    "x1 + 2 * x2 ^ 2 - x3 / 4",
]

POINTS = [[0.5, -1.25, 2.0], [-3.0, 0.75, 1.5], [2.0, 4.0, -0.5]]


def py(expr):
    s = expr.replace("^", "**")
    for k in (3, 2, 1):
        s = s.replace(f"x{k}", f"x[{k - 1}]")
    return s


ENV = {
    "abs": abs,
    "max": max,
    "min": min,
    "pow": lambda a, b: a ** b,
    "sgn": lambda v: (v > 0) - (v < 0),
    "pos": lambda v: max(v, 0.0),
}


def main():
    rows = []
    for e in EXPRS:
        for pt in POINTS:
            try:
                v = eval(py(e), dict(ENV), {"x": pt})
            except ZeroDivisionError:
                continue
            if isinstance(v, complex) or not math.isfinite(v):
                continue
            rows.append({"expr": e, "point": pt, "value": float(v)})
    with open("expr_golden.json", "w") as f:
        json.dump({"format_version": 1, "cases": rows}, f, indent=1)
    print(len(EXPRS), "expressions,", len(rows), "cases")


if __name__ == "__main__":
    main()
