"""Sparse exact multivariate polynomials over Z and Q.

A :class:`MultiPoly` maps exponent tuples to nonzero ``int`` or ``Fraction``
coefficients. Integral ``Fraction`` values are stored as ``int`` so integer
polynomials stay on the fast integer path. Binary operations merge the
variable lists by name.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Sequence, Union

from sympy import divisors

from .exact_arith import DomainError, format_rational

Scalar = Union[int, Fraction]
Exp = tuple[int, ...]

__all__ = [
    "InexactDivisionError",
    "MultiPoly",
    "UniView",
    "content_primitive",
    "divide_monic",
    "exact_divide",
    "integer_roots",
    "parse_poly",
    "rational_roots",
    "resultant",
    "substitute",
]


class InexactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend."""


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Scalar, b: Scalar) -> Scalar:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(Fraction(a) / b)


class MultiPoly:
    """Immutable sparse polynomial. Create with :meth:`var`, :meth:`const` or :func:`parse_poly`."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, Scalar] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        t = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if c:
                t[tuple(e)] = _norm(c)
        self.terms: dict[Exp, Scalar] = t
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exp, Scalar]) -> "MultiPoly":
        # trusted constructor: terms already normalized and nonzero
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: 1})

    @classmethod
    def const(cls, c: Scalar, vars: Sequence[str] = ()) -> "MultiPoly":
        vars = tuple(vars)
        c = _norm(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Scalar], var: str) -> "MultiPoly":
        """Build from ascending coefficients ``[a0, a1, ...]``."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs) if c})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every variable in use."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = set(self.used_vars()) - set(vars)
        if missing:
            raise DomainError(f"cannot drop variables in use: {sorted(missing)}")
        idx = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {
            tuple(e[i] if i is not None else 0 for i in idx): c
            for e, c in self.terms.items()
        }
        return MultiPoly._raw(vars, terms)

    def coefficients(self) -> list[Scalar]:
        return list(self.terms.values())

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars)
        return NotImplemented

    @staticmethod
    def _align(p: "MultiPoly", q: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if p.vars == q.vars:
            return p, q
        vars = p.vars + tuple(v for v in q.vars if v not in p.vars)
        return p.with_vars(vars), q.with_vars(vars)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = MultiPoly._align(self, other)
        terms = dict(p.terms)
        for e, c in q.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = _norm(s)
            else:
                terms.pop(e, None)
        return MultiPoly._raw(p.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = MultiPoly._align(self, other)
        terms: dict[Exp, Scalar] = {}
        get = terms.get
        n = len(p.vars)
        if n == 1:
            for (e1,), c1 in p.terms.items():
                for (e2,), c2 in q.terms.items():
                    k = (e1 + e2,)
                    terms[k] = get(k, 0) + c1 * c2
        elif n == 2:
            for (a1, b1), c1 in p.terms.items():
                for (a2, b2), c2 in q.terms.items():
                    k = (a1 + a2, b1 + b2)
                    terms[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in p.terms.items():
                for e2, c2 in q.terms.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    terms[k] = get(k, 0) + c1 * c2
        return MultiPoly._raw(p.vars, {e: _norm(c) for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        p, q = MultiPoly._align(self, other)
        return p.terms == q.terms

    def __hash__(self):
        if self._hash is None:
            used = sorted(self.used_vars())
            p = self.with_vars(used)
            self._hash = hash((tuple(used), frozenset(p.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate with every used variable bound; values may be any ring elements."""
        missing = set(self.used_vars()) - set(values)
        if missing:
            raise DomainError(f"unbound variables: {sorted(missing)}")
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, x in idx:
                if e[i]:
                    t = t * x ** e[i]
            total = total + t
        return total

    def partial(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute scalar values for some variables, keeping the variable list."""
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        terms: dict[Exp, Scalar] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, x in idx:
                if e[i]:
                    c = c * x ** e[i]
                    e2[i] = 0
            k = tuple(e2)
            terms[k] = terms.get(k, 0) + c
        return MultiPoly(self.vars, terms)

    # -- text and JSON ---------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exp, Scalar]]:
        """Terms in graded-lex descending order (variable order as stored)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = c < 0
            mag = format_rational(abs(c))
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, vars={self.vars})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coef": format_rational(c)} for e, c in self.sorted_terms()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict | str) -> "MultiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})


# -- parsing ---------------------------------------------------------------


def parse_poly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse an expression with ``+ - * ^ **``, parentheses, integers and
    names; ``/`` is allowed only by a nonzero constant.

    Variables are taken in order of first appearance unless ``vars`` is given.
    """
    src = text.replace("^", "**").replace("−", "-")
    tree = ast.parse(src.strip(), mode="eval")
    order: list[str] = list(vars) if vars is not None else []
    for node in ast.walk(tree):
        if isinstance(node, ast.Name) and node.id not in order:
            order.append(node.id)
    # ast.walk is breadth-first; reorder names by source position when not given
    if vars is None:
        names = sorted(
            (n for n in ast.walk(tree) if isinstance(n, ast.Name)),
            key=lambda n: (n.lineno, n.col_offset),
        )
        order = list(dict.fromkeys(n.id for n in names))
    vars_t = tuple(order)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return MultiPoly.const(node.value, vars_t)
        if isinstance(node, ast.Name):
            return MultiPoly.var(node.id, vars_t)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Pow):
                if not right.is_constant() or type(right.constant_value()) is not int:
                    raise ValueError("exponent must be a nonnegative integer")
                return left ** right.constant_value()
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError("division only by nonzero constants")
                return left * (1 / Fraction(right.constant_value()))
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    return ev(tree)


# -- univariate views ------------------------------------------------------


@dataclass(frozen=True)
class UniView:
    """``base`` seen as a polynomial in ``main_var`` with coefficients in the other variables."""

    base: MultiPoly
    main_var: str
    coeffs: tuple[MultiPoly, ...]

    @classmethod
    def of(cls, p: MultiPoly, var: str) -> "UniView":
        if var not in p.vars:
            p = p.with_vars(p.vars + (var,))
        i = p.vars.index(var)
        rest = p.vars[:i] + p.vars[i + 1 :]
        buckets: dict[int, dict[Exp, Scalar]] = {}
        for e, c in p.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        deg = max(buckets, default=-1)
        coeffs = tuple(MultiPoly._raw(rest, buckets.get(k, {})) for k in range(deg + 1))
        return cls(p, var, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> MultiPoly:
        return self.coeffs[-1]

    def reassemble(self) -> MultiPoly:
        return _from_coeffs(self.coeffs, self.main_var, self.base.vars)


def _from_coeffs(coeffs: Sequence[MultiPoly], var: str, vars: Sequence[str]) -> MultiPoly:
    vars = tuple(vars)
    i = vars.index(var)
    rest = vars[:i] + vars[i + 1 :]
    terms: dict[Exp, Scalar] = {}
    for k, cp in enumerate(coeffs):
        cp = cp.with_vars(rest) if cp.vars != rest else cp
        for e, c in cp.terms.items():
            terms[e[:i] + (k,) + e[i:]] = c
    return MultiPoly._raw(vars, terms)


def _trim(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


# -- operations ------------------------------------------------------------


def substitute(p: MultiPoly, var: str, replacement: MultiPoly | Scalar) -> MultiPoly:
    """Replace ``var`` in ``p`` by ``replacement`` (Horner in ``var``)."""
    if var not in p.vars:
        raise DomainError(f"unknown variable {var!r} in polynomial over {p.vars}")
    if not isinstance(replacement, MultiPoly):
        replacement = MultiPoly.const(replacement)
    view = UniView.of(p, var)
    vars = p.vars[: p.vars.index(var)] + p.vars[p.vars.index(var) + 1 :]
    vars = vars + tuple(v for v in replacement.vars if v not in vars)
    result = MultiPoly.const(0, vars)
    for cp in reversed(view.coeffs):
        result = result * replacement + cp
    out_vars = tuple(v for v in p.vars if v != var or var in replacement.vars)
    out_vars = out_vars + tuple(v for v in replacement.vars if v not in out_vars)
    return result.with_vars(out_vars)


def _pick_main_var(p: MultiPoly, q: MultiPoly) -> str | None:
    for v in q.vars:
        if q.degree(v) > 0:
            return v
    return None


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``r * q == p`` over Q; raise :class:`InexactDivisionError` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p, q = MultiPoly._align(p, q)
    if p.is_zero():
        return MultiPoly._raw(p.vars, {})
    if q.is_constant():
        c = q.constant_value()
        return MultiPoly._raw(p.vars, {e: _div(a, c) for e, a in p.terms.items()})
    var = _pick_main_var(p, q)
    pv, qv = UniView.of(p, var), UniView.of(q, var)
    rem = list(pv.coeffs)
    dq = qv.degree
    lq = qv.leading()
    if len(rem) - 1 < dq:
        raise InexactDivisionError(f"degree in {var} of dividend below divisor")
    quot = [MultiPoly.const(0)] * (len(rem) - dq)
    one = lq.is_constant() and lq.constant_value() == 1
    for k in range(len(rem) - 1 - dq, -1, -1):
        top = rem[k + dq]
        if top.is_zero():
            continue
        t = top if one else exact_divide(top, lq)
        quot[k] = t
        for j, cq in enumerate(qv.coeffs):
            if not cq.is_zero():
                rem[k + j] = rem[k + j] - t * cq
    if any(not r.is_zero() for r in rem):
        raise InexactDivisionError("nonzero remainder")
    return _from_coeffs(quot, var, p.vars)


def divide_monic(p: MultiPoly, divisor: MultiPoly, main_var: str) -> tuple[MultiPoly, MultiPoly]:
    """Long division by a divisor whose leading coefficient in ``main_var`` is 1.

    Returns ``(quotient, remainder)`` with ``p == quotient*divisor + remainder``
    and ``deg_{main_var}(remainder) < deg_{main_var}(divisor)``.
    """
    p, divisor = MultiPoly._align(p, divisor)
    if main_var not in p.vars:
        raise DomainError(f"unknown variable {main_var!r}")
    dv = UniView.of(divisor, main_var)
    if dv.degree < 1:
        raise DomainError(f"divisor has degree {dv.degree} in {main_var}")
    lead = dv.leading()
    if not (lead.is_constant() and lead.constant_value() == 1):
        raise DomainError(f"divisor is not monic in {main_var}")
    rem = list(UniView.of(p, main_var).coeffs)
    dd = dv.degree
    nq = max(len(rem) - dd, 0)
    quot = [MultiPoly.const(0)] * nq
    for k in range(nq - 1, -1, -1):
        t = rem[k + dd]
        if t.is_zero():
            continue
        quot[k] = t
        for j, cd in enumerate(dv.coeffs):
            if not cd.is_zero():
                rem[k + j] = rem[k + j] - t * cd
    rem = rem[:dd]
    return _from_coeffs(quot, main_var, p.vars), _from_coeffs(rem, main_var, p.vars)


# -- resultants --------------------------------------------------------------


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    p, q = MultiPoly._align(p, q)
    a = list(reversed(UniView.of(p, var).coeffs))
    b = list(reversed(UniView.of(q, var).coeffs))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.const(0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant (Bareiss) with row pivoting; all divisions exact."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return MultiPoly.const(1)
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.const(0)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = pivot * M[i][j] - mik * M[k][j]
                M[i][j] = exact_divide(num, prev) if not num.is_zero() else num
            M[i][k] = MultiPoly.const(0)
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    # pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b; coefficient lists ascending
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        t = r[-1]
        r = [lb * c for c in r]
        shift = dr - db
        for j, cb in enumerate(b):
            r[shift + j] = r[shift + j] - t * cb
        r.pop()
        e -= 1
        _trim(r)
    return [lb**e * c for c in r] if e > 0 else r


def subresultant_resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant by the subresultant pseudo-remainder sequence."""
    p, q = MultiPoly._align(p, q)
    rest = tuple(v for v in p.vars if v != var)
    A = [c.with_vars(rest) for c in UniView.of(p, var).coeffs]
    B = [c.with_vars(rest) for c in UniView.of(q, var).coeffs]
    if not A or not B:
        return MultiPoly.const(0, rest)
    one = MultiPoly.const(1, rest)
    g = h = one
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    while len(B) - 1 > 0:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return MultiPoly.const(0, rest)
        div = g * h**delta
        B = [exact_divide(c, div) for c in R]
        g = A[-1]
        h = exact_divide(g**delta, h ** (delta - 1)) if delta >= 1 else h
    da = len(A) - 1
    lb = B[-1]
    if da == 0:
        h = one
    else:
        h = exact_divide(lb**da, h ** (da - 1))
    return h * s


def resultant(p: MultiPoly, q: MultiPoly, var: str, method: str = "bareiss") -> MultiPoly:
    """Resultant with respect to ``var`` (Sylvester determinant convention).

    ``method`` is ``"bareiss"`` (fraction-free elimination on the Sylvester
    matrix) or ``"subresultant"``.
    """
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise DomainError(f"resultant needs positive degree in {var!r} for both inputs")
    p, q = MultiPoly._align(p, q)
    rest = tuple(v for v in p.vars if v != var)
    if method == "bareiss":
        r = bareiss_det(sylvester_matrix(p, q, var))
    elif method == "subresultant":
        r = subresultant_resultant(p, q, var)
    else:
        raise ValueError(f"unknown resultant method {method!r}")
    return r.with_vars(rest) if set(r.used_vars()) <= set(rest) else r


# -- content and roots -------------------------------------------------------


def content_primitive(p: MultiPoly) -> tuple[int, MultiPoly]:
    """Split an integer polynomial as ``content * primitive`` with positive content."""
    if not p.is_integral():
        raise DomainError("content_primitive needs integer coefficients")
    if p.is_zero():
        return 0, p
    cont = reduce(gcd, (abs(c) for c in p.terms.values()))
    return cont, MultiPoly._raw(p.vars, {e: c // cont for e, c in p.terms.items()})


def _univariate_coeffs(p: MultiPoly) -> list[Scalar]:
    used = p.used_vars()
    if len(used) > 1:
        raise DomainError(f"expected a univariate polynomial, got variables {used}")
    if not used:
        return [p.constant_value()] if p.terms else []
    view = UniView.of(p, used[0])
    return [c.constant_value() if c.terms else 0 for c in view.coeffs]


def integer_coefficients(coeffs: Sequence[Scalar]) -> list[int]:
    """Scale rational coefficients by the lcm of denominators and drop the content."""
    den = reduce(lcm, (Fraction(c).denominator for c in coeffs), 1)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    return [c // g for c in ints] if g > 1 else ints


def _horner_exact(coeffs: Sequence[int], u: int, v: int) -> int:
    # v^n * F(u/v) for ascending integer coefficients
    n = len(coeffs) - 1
    acc = 0
    vp = 1
    for i in range(n, -1, -1):
        acc = acc * u + coeffs[i] * vp
        vp *= v
    return acc


def _root_bound(coeffs: Sequence[int]) -> Fraction:
    # Fujiwara-style bound 2*max |a_{n-k}/a_n|^(1/k), rounded up safely
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    best = 0.0
    for k in range(1, n + 1):
        a = abs(coeffs[n - k])
        if a:
            best = max(best, (a / lead) ** (1.0 / k))
    return Fraction(int(2 * best * (1 + 1e-9)) + 1)


def rational_roots(p: MultiPoly | Sequence[Scalar]) -> set[Fraction]:
    """All rational roots of a univariate polynomial, by the rational root theorem.

    Denominators are cleared; a candidate ``u/v`` must have ``v`` dividing the
    leading coefficient and ``u`` dividing the trailing one. Candidates are
    screened with the ``(v - u) | F(1)`` and ``(v + u) | F(-1)`` tests and a
    root bound, then confirmed by exact evaluation.
    """
    coeffs = list(p) if not isinstance(p, MultiPoly) else _univariate_coeffs(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("rational_roots of the zero polynomial")
    F = integer_coefficients(coeffs)
    roots: set[Fraction] = set()
    k = 0
    while F[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        F = F[k:]
    if len(F) == 1:
        return roots
    lead, trail = abs(F[-1]), abs(F[0])
    f1 = sum(F)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(F))
    bound = _root_bound(F)
    vs = divisors(lead)
    us = divisors(trail)
    for v in vs:
        limit = bound * v
        for u0 in us:
            if u0 > limit:
                break
            if gcd(u0, v) != 1:
                continue
            for u in (u0, -u0):
                if f1 and (v - u) and f1 % (v - u):
                    continue
                if fm1 and (v + u) and fm1 % (v + u):
                    continue
                if _horner_exact(F, u, v) == 0:
                    roots.add(Fraction(u, v))
    return roots


def integer_roots(coeffs: Sequence[int], bound: int) -> set[int]:
    """Integer roots ``w`` with ``|w| <= bound`` of an integer polynomial (ascending coefficients)."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("integer_roots of the zero polynomial")
    roots = set()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.add(0)
        coeffs = coeffs[k:]
    trail = coeffs[0]
    for w in range(1, bound + 1):
        if trail % w:
            continue
        for x in (w, -w):
            acc = 0
            for c in reversed(coeffs):
                acc = acc * x + c
            if acc == 0:
                roots.add(x)
    return roots
