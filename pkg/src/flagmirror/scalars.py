"""Exact scalar domains: rational functions, Puiseux series, tropical data.

Everything downstream (generic matrices, charts, quiver decorations, the
tropical side) is written against plain arithmetic operators, so the three
coefficient domains used in practice are

* ``fractions.Fraction`` for numeric instances,
* :class:`RationalFunction` for symbolic work in the chart variables,
* :class:`PuiseuxSeries` for one-parameter degenerations in ``t``.

``RationalFunction`` wraps a sympy expression and only normalizes (single
cancelled fraction, deterministic term order) when asked for equality, a
canonical string, or its monomials.  Variable names are ordered by
(letter part, numeric suffix), so ``d1 < d2 < m1 < m10 < z1``.

The tropical types at the bottom (:class:`TropValue`, :class:`LamForm`,
:class:`AffineForm`, :class:`TropExpr`) record piecewise-linear data exactly:
an affine form has integer coefficients on the tropicalized coordinates and an
affine-in-lambda constant with rational coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .errors import (
    DivisionByZero,
    NonMonomialDenominator,
    NotSubtractionFree,
    TruncationRequired,
    UnknownValuation,
)

_NAME_RE = re.compile(r"([A-Za-z_']+?)(\d*)$")


def _name_key(name):
    """Sort key for variable names: letters first, then the numeric suffix."""
    m = _NAME_RE.match(name)
    if not m:
        return (name, -1, name)
    head, idx = m.groups()
    return (head, int(idx) if idx else -1, name)


@lru_cache(maxsize=None)
def _symbol(name):
    return sp.Symbol(name)


def _to_sympy_scalar(x):
    if isinstance(x, int):
        return sp.Integer(x)
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    return None


# =========================================================================
# Rational functions
# =========================================================================

class RationalFunction:
    """An exact multivariate rational function over the rationals."""

    __slots__ = ("_expr", "_canon", "_normed")

    def __init__(self, expr=0):
        self._normed = False
        if isinstance(expr, RationalFunction):
            self._expr = expr._expr
            self._normed = expr._normed
        else:
            s = _to_sympy_scalar(expr)
            if s is not None:
                self._expr = s
            elif isinstance(expr, sp.Expr):
                self._expr = expr
            else:
                raise TypeError(f"cannot build a rational function from {expr!r}")
        self._canon = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def var(name):
        return RationalFunction(_symbol(name))

    @staticmethod
    def const(q):
        return RationalFunction(Fraction(q))

    # -- basic accessors ---------------------------------------------------

    @property
    def expr(self):
        """The underlying sympy expression (not necessarily normalized)."""
        return self._expr

    def variables(self):
        """Names appearing in the cancelled form, in canonical order."""
        num, den, _ = self._canonical()
        seen = set()
        for _, mono in list(num) + list(den):
            seen.update(name for name, _ in mono)
        return tuple(sorted(seen, key=_name_key))

    def is_zero(self):
        if self._normed:
            return self._expr == 0
        return sp.cancel(self._expr) == 0

    def normalized(self):
        """A copy whose internal expression is held in cancelled p/q form.

        The value is unchanged; calling this on the intermediate results of
        long elimination loops keeps expression trees from snowballing.
        """
        if self._normed:
            return self
        out = RationalFunction(sp.cancel(sp.together(self._expr)))
        out._normed = True
        return out

    def as_fraction(self):
        """Return the value as a ``Fraction`` if constant, else raise."""
        c = sp.cancel(self._expr)
        if c.free_symbols:
            raise ValueError(f"not a constant: {self}")
        q = sp.Rational(c)
        return Fraction(int(q.p), int(q.q))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other._expr
        return _to_sympy_scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self._expr + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self._expr - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(o - self._expr)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self._expr * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0 or (isinstance(other, RationalFunction) and other.is_zero()):
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self._expr / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(o / self._expr)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0 and self.is_zero():
            raise DivisionByZero("negative power of zero")
        return RationalFunction(self._expr ** k)

    def __neg__(self):
        return RationalFunction(-self._expr)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return sp.cancel(self._expr - o) == 0

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(str(self))

    def __bool__(self):
        return not self.is_zero()

    # -- canonical form ----------------------------------------------------

    def _canonical(self):
        """Cancelled numerator/denominator as sorted integer-coefficient terms.

        Returns ``(num_terms, den_terms, names)`` where each terms tuple lists
        ``(coeff, ((name, exp), ...))`` in descending lexicographic order of
        the exponent vectors, coefficients are integers with overall content 1,
        and the leading denominator coefficient is positive.
        """
        if self._canon is not None:
            return self._canon
        expr = sp.cancel(sp.together(self._expr))
        num, den = sp.fraction(expr)
        names = tuple(sorted((s.name for s in expr.free_symbols), key=_name_key))
        syms = [_symbol(nm) for nm in names]

        def poly_terms(e):
            if not names:
                q = sp.Rational(e)
                c = Fraction(int(q.p), int(q.q))
                return [] if c == 0 else [(c, ())]
            p = sp.Poly(sp.expand(e), *syms)
            out = []
            for mono, coeff in p.terms():
                q = sp.Rational(coeff)
                out.append((Fraction(int(q.p), int(q.q)), tuple(mono)))
            out.sort(key=lambda t: t[1], reverse=True)
            return out

        nt = poly_terms(num)
        dt = poly_terms(den)
        # Normalize: integer coefficients, joint content 1, denominator lead > 0.
        denoms = [c.denominator for c, _ in nt + dt]
        lcm = 1
        for d in denoms:
            lcm = lcm * d // sp.igcd(lcm, d)
        nt = [(c * lcm, m) for c, m in nt]
        dt = [(c * lcm, m) for c, m in dt]
        ints = [abs(int(c)) for c, _ in nt + dt if c != 0]
        g = 0
        for v in ints:
            g = sp.igcd(g, v)
        g = g or 1
        sign = -1 if (dt and dt[0][0] < 0) else 1

        def fix(terms):
            return tuple((int(c) * sign // g, m) for c, m in terms)

        nt = fix(nt)
        dt = fix(dt)

        def attach(terms):
            return tuple(
                (c, tuple((names[i], e) for i, e in enumerate(m) if e))
                for c, m in terms
            )

        self._canon = (attach(nt), attach(dt), names)
        return self._canon

    def canonical_terms(self):
        """``(numerator_terms, denominator_terms)`` of the cancelled form.

        Each term is ``(integer coefficient, ((name, exponent), ...))``.
        """
        num, den, _ = self._canonical()
        return num, den

    def __str__(self):
        num, den, _ = self._canonical()
        ns = _fmt_terms(num)
        if den == ((1, ()),):
            return ns
        ds = _fmt_terms(den)
        if len(num) > 1:
            ns = "(" + ns + ")"
        if len(den) > 1 or _fmt_components(den[0]) > 1:
            ds = "(" + ds + ")"
        return ns + "/" + ds

    def __repr__(self):
        return f"RationalFunction({self!s})"

    # -- substitution / evaluation ----------------------------------------

    def subs(self, mapping):
        """Simultaneous substitution ``name -> RationalFunction`` (or number)."""
        table = {}
        for name, value in mapping.items():
            v = value if isinstance(value, RationalFunction) else RationalFunction(value)
            table[_symbol(name)] = v._expr
        return RationalFunction(self._expr.xreplace(table))

    def evaluate(self, env):
        """Evaluate in an arbitrary field given ``name -> value``.

        Works for Fractions, floats, :class:`PuiseuxSeries`, or other
        :class:`RationalFunction` values: the expression tree is folded using
        the target domain's own arithmetic.
        """
        return _eval_expr(self._expr, env)


def _fmt_components(term):
    c, mono = term
    n = len(mono)
    if abs(c) != 1 or n == 0:
        n += 1
    return n


def _fmt_terms(terms):
    if not terms:
        return "0"
    parts = []
    for idx, (c, mono) in enumerate(terms):
        factors = []
        for name, e in mono:
            factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        a = abs(c)
        if not body:
            body = str(a)
        elif a != 1:
            body = f"{a}*{body}"
        if idx == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def _eval_expr(e, env):
    if isinstance(e, sp.Symbol):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"no value supplied for variable {e.name}") from None
    if isinstance(e, (sp.Integer, sp.Rational)):
        return Fraction(int(e.p), int(e.q))
    if isinstance(e, sp.Add):
        args = [_eval_expr(a, env) for a in e.args]
        acc = args[0]
        for a in args[1:]:
            acc = acc + a
        return acc
    if isinstance(e, sp.Mul):
        args = [_eval_expr(a, env) for a in e.args]
        acc = args[0]
        for a in args[1:]:
            acc = acc * a
        return acc
    if isinstance(e, sp.Pow):
        base = _eval_expr(e.base, env)
        k = e.exp
        if not (isinstance(k, sp.Integer)):
            raise ValueError(f"non-integer exponent in {e}")
        k = int(k)
        if k >= 0:
            return base ** k
        inv = 1 / base
        return inv ** (-k)
    raise ValueError(f"cannot evaluate expression node {type(e).__name__}: {e}")


def rf(x):
    """Shorthand: coerce a number or name into a :class:`RationalFunction`."""
    if isinstance(x, str):
        return RationalFunction.var(x)
    return RationalFunction(x)


# =========================================================================
# Puiseux series
# =========================================================================

def _frac(q):
    return q if isinstance(q, Fraction) else Fraction(q)


class PuiseuxSeries:
    """A Puiseux series in ``t`` with rational exponents and coefficients.

    Terms are stored sorted by strictly increasing exponent; ``truncation``
    is either ``None`` (the series is exact) or a rational q meaning the
    series is only known modulo ``O(t^q)``.  All stored exponents are below
    the truncation order.
    """

    __slots__ = ("_terms", "_trunc")

    def __init__(self, terms=(), truncation=None):
        trunc = None if truncation is None else _frac(truncation)
        merged = {}
        for e, c in terms:
            e = _frac(e)
            c = _frac(c)
            merged[e] = merged.get(e, Fraction(0)) + c
        clean = sorted(
            (e, c) for e, c in merged.items()
            if c != 0 and (trunc is None or e < trunc)
        )
        self._terms = tuple(clean)
        self._trunc = trunc

    # -- constructors ------------------------------------------------------

    @staticmethod
    def monomial(coeff, exponent=0):
        return PuiseuxSeries([(exponent, coeff)])

    @staticmethod
    def t(exponent=1):
        return PuiseuxSeries([(exponent, 1)])

    @staticmethod
    def zero(truncation=None):
        return PuiseuxSeries([], truncation)

    # -- accessors ---------------------------------------------------------

    @property
    def terms(self):
        return self._terms

    @property
    def truncation(self):
        return self._trunc

    def is_exact(self):
        return self._trunc is None

    def is_exact_zero(self):
        return not self._terms and self._trunc is None

    def low_bound(self):
        """A lower bound for the valuation: the first exponent, else the
        truncation order.  ``None`` means plus infinity (exact zero)."""
        if self._terms:
            return self._terms[0][0]
        return self._trunc

    def leading(self):
        """``(exponent, coefficient)`` of the lowest term.

        Raises :class:`UnknownValuation` when no term is visible but the
        series is truncated, and :class:`DivisionByZero` never -- an exact
        zero raises ``ValueError``.
        """
        if self._terms:
            return self._terms[0]
        if self._trunc is not None:
            raise UnknownValuation(
                f"no term below the truncation order {self._trunc}")
        raise ValueError("exact zero series has no leading term")

    def truncated(self, order):
        order = _frac(order)
        if self._trunc is not None and self._trunc <= order:
            return self
        return PuiseuxSeries(self._terms, order)

    def coefficient(self, exponent):
        exponent = _frac(exponent)
        if self._trunc is not None and exponent >= self._trunc:
            raise UnknownValuation(
                f"coefficient of t^{exponent} is beyond the truncation")
        for e, c in self._terms:
            if e == exponent:
                return c
        return Fraction(0)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, PuiseuxSeries):
            return x
        if isinstance(x, (int, Fraction)):
            return PuiseuxSeries.monomial(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        truncs = [q for q in (self._trunc, o._trunc) if q is not None]
        trunc = min(truncs) if truncs else None
        return PuiseuxSeries(self._terms + o._terms, trunc)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries([(e, -c) for e, c in self._terms], self._trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_exact_zero() or o.is_exact_zero():
            return PuiseuxSeries()
        cands = []
        if self._trunc is not None:
            cands.append(self._trunc + o.low_bound())
        if o._trunc is not None:
            cands.append(o._trunc + self.low_bound())
        trunc = min(cands) if cands else None
        prod = {}
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                prod[e] = prod.get(e, Fraction(0)) + c1 * c2
        return PuiseuxSeries(prod.items(), trunc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        acc = PuiseuxSeries.monomial(1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return puiseux_divide(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return puiseux_divide(o, self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms and self._trunc == o._trunc

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self._terms, self._trunc))

    def __bool__(self):
        return bool(self._terms) or self._trunc is not None

    def agrees_with(self, other):
        """Do the two series agree on the common known range?

        Returns ``(equal, certain)``: ``certain`` is True when both series
        are exact, so agreement means genuine equality.
        """
        o = self._coerce(other)
        truncs = [q for q in (self._trunc, o._trunc) if q is not None]
        if not truncs:
            return (self._terms == o._terms, True)
        k = min(truncs)
        mine = tuple((e, c) for e, c in self._terms if e < k)
        theirs = tuple((e, c) for e, c in o._terms if e < k)
        return (mine == theirs, False)

    # -- display -----------------------------------------------------------

    @staticmethod
    def _fmt_exp(e):
        if e.denominator == 1:
            return f"t^{e.numerator}" if e != 1 else "t"
        return f"t^({e})"

    def __str__(self):
        parts = []
        for i, (e, c) in enumerate(self._terms):
            if e == 0:
                body = str(abs(c))
            else:
                tp = self._fmt_exp(e)
                body = tp if abs(c) == 1 else f"{abs(c)}*{tp}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        if self._trunc is not None:
            o = "O(1)" if self._trunc == 0 else f"O({self._fmt_exp(self._trunc)})"
            parts.append((" + " if parts else "") + o)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"PuiseuxSeries({self!s})"


def puiseux_divide(a, b, truncation=None):
    """Exact-as-possible division of Puiseux series.

    Division by a monomial is exact.  Otherwise the inverse is expanded as a
    geometric series up to a truncation order inferred from the operands
    (or given explicitly); if both operands are exact and no order is given,
    :class:`TruncationRequired` is raised.
    """
    a = PuiseuxSeries._coerce(a)
    b = PuiseuxSeries._coerce(b)
    if not b.terms:
        if b.truncation is None:
            raise DivisionByZero("division by exact zero series")
        raise UnknownValuation(
            "divisor has no visible term below its truncation order")
    v, c = b.leading()
    if len(b.terms) == 1 and b.truncation is None:
        trunc = None if a.truncation is None else a.truncation - v
        return PuiseuxSeries([(e - v, q / c) for e, q in a.terms], trunc)
    if a.is_exact_zero():
        return PuiseuxSeries()
    cands = []
    if truncation is not None:
        cands.append(_frac(truncation))
    if a.truncation is not None:
        cands.append(a.truncation - v)
    if b.truncation is not None:
        cands.append(a.low_bound() + b.truncation - 2 * v)
    if not cands:
        raise TruncationRequired(
            "dividing exact series with an infinite expansion: "
            "pass an explicit truncation order")
    trunc = min(cands)
    # 1/b = (1/L) * sum (-r)^k  with b = L(1+r), L the leading monomial.
    rel = trunc - a.low_bound() + v  # relative orders of 1/b that matter
    lead = PuiseuxSeries.monomial(c, v)
    r = puiseux_divide(b - lead, lead)
    r = r.truncated(rel)
    acc = PuiseuxSeries.monomial(1)
    power = PuiseuxSeries.monomial(1)
    while True:
        power = power * (-r)
        if not power.terms:
            break
        lb = power.low_bound()
        if lb is not None and lb >= rel:
            break
        acc = acc + power
    acc = acc.truncated(rel)
    inv = puiseux_divide(acc, lead)
    return (a * inv).truncated(trunc)


def puiseux_arith(a, b, op):
    """Convenience dispatcher: ``op`` one of ``"add" | "mul" | "div"``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return puiseux_divide(a, b)
    raise ValueError(f"unknown operation {op!r}")


# =========================================================================
# Tropical values and expressions
# =========================================================================

class TropValue:
    """A rational number or plus infinity (the valuation of zero)."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = None if value is None else _frac(value)

    @property
    def is_infinite(self):
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, TropValue):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value is not None and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other):
        """Tropical multiplication: ordinary addition, absorbing infinity."""
        o = other if isinstance(other, TropValue) else TropValue(other)
        if self.is_infinite or o.is_infinite:
            return TropValue()
        return TropValue(self.value + o.value)

    __radd__ = __add__

    def min(self, other):
        """Tropical addition."""
        o = other if isinstance(other, TropValue) else TropValue(other)
        if self.is_infinite:
            return o
        if o.is_infinite:
            return self
        return TropValue(min(self.value, o.value))

    def __str__(self):
        return "oo" if self.value is None else str(self.value)

    def __repr__(self):
        return f"TropValue({self})"


TROP_INFINITY = TropValue()


def val(s):
    """Valuation of a Puiseux series as a :class:`TropValue`.

    The exact zero series has valuation infinity; a truncated series with no
    visible term raises :class:`UnknownValuation`.
    """
    if s.terms:
        return TropValue(s.terms[0][0])
    if s.truncation is None:
        return TROP_INFINITY
    raise UnknownValuation(
        f"series is O(t^{s.truncation}) with no visible term")


def is_positive(s):
    """Positivity of a nonzero series near t = 0+: leading coefficient > 0."""
    if s.terms:
        return s.terms[0][1] > 0
    if s.truncation is None:
        return False
    raise UnknownValuation("cannot read the sign of an all-unknown series")


@dataclass(frozen=True)
class LamForm:
    """An affine function of the weight entries: sum of c_i * lam_i + const."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    @staticmethod
    def constant(q, k):
        return LamForm(tuple(Fraction(0) for _ in range(k)), _frac(q))

    @staticmethod
    def unit(i, k):
        """The form lam_i (1-indexed) in a context with k weight entries."""
        return LamForm(tuple(Fraction(1 if j == i else 0) for j in range(1, k + 1)))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LamForm.constant(other, len(self.coeffs))
        return LamForm(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)),
            self.const + other.const,
        )

    __radd__ = __add__

    def __neg__(self):
        return LamForm(tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LamForm.constant(other, len(self.coeffs))
        return self + (-other)

    def scaled(self, q):
        q = _frac(q)
        return LamForm(tuple(a * q for a in self.coeffs), self.const * q)

    def __call__(self, lam):
        lam = [_frac(x) for x in lam]
        if len(lam) != len(self.coeffs):
            raise ValueError("wrong number of weight entries")
        return sum((a * x for a, x in zip(self.coeffs, lam)), self.const)

    def is_zero(self):
        return self.const == 0 and all(a == 0 for a in self.coeffs)

    def fmt(self, names=None):
        names = names or tuple(f"L{i}" for i in range(1, len(self.coeffs) + 1))
        parts = []
        for a, nm in zip(self.coeffs, names):
            if a == 0:
                continue
            parts.append((a, nm))
        out = ""
        for i, (a, nm) in enumerate(parts):
            mag = "" if abs(a) == 1 else f"{abs(a)}*"
            if i == 0:
                out = ("-" if a < 0 else "") + mag + nm
            else:
                out += (" + " if a > 0 else " - ") + mag + nm
        if self.const != 0 or not parts:
            c = self.const
            if not out:
                out = str(c)
            else:
                out += (" + " if c > 0 else " - ") + str(abs(c))
        return out


@dataclass(frozen=True)
class AffineForm:
    """Integer-coefficient affine form in the tropical coordinates.

    ``coeffs`` is aligned with the owning expression's coordinate tuple;
    ``lam`` is the affine-in-lambda constant part.
    """

    coeffs: tuple
    lam: LamForm

    def evaluate(self, point, lam):
        acc = self.lam(lam)
        for a, x in zip(self.coeffs, point, strict=True):
            acc += a * _frac(x)
        return acc

    def fmt(self, coord_names, lam_names=None):
        parts = []
        for a, nm in zip(self.coeffs, coord_names):
            if a:
                parts.append((a, nm))
        out = ""
        for i, (a, nm) in enumerate(parts):
            mag = "" if abs(a) == 1 else f"{abs(a)}*"
            if i == 0:
                out = ("-" if a < 0 else "") + mag + nm
            else:
                out += (" + " if a > 0 else " - ") + mag + nm
        lam_s = self.lam.fmt(lam_names)
        if lam_s != "0":
            if not out:
                out = lam_s
            elif lam_s.startswith("-"):
                out += " - " + lam_s[1:]
            else:
                out += " + " + lam_s
        return out or "0"


class TropExpr:
    """A finite min of affine forms: the tropicalization of a positive
    Laurent expression."""

    def __init__(self, coords, forms):
        self.coords = tuple(coords)
        uniq = sorted(set(forms), key=lambda f: (f.coeffs, f.lam.coeffs, f.lam.const))
        if not uniq:
            raise ValueError("a tropical expression needs at least one form")
        self.forms = tuple(uniq)

    def evaluate(self, point, lam=()):
        if isinstance(point, dict):
            point = [point[c] for c in self.coords]
        best = None
        for f in self.forms:
            v = f.evaluate(point, lam)
            best = v if best is None or v < best else best
        return TropValue(best)

    def __eq__(self, other):
        if not isinstance(other, TropExpr):
            return NotImplemented
        return self.coords == other.coords and self.forms == other.forms

    def __hash__(self):
        return hash((self.coords, self.forms))

    def fmt(self, lam_names=None):
        inner = ", ".join(f.fmt(self.coords, lam_names) for f in self.forms)
        return "min{" + inner + "}"

    def __str__(self):
        return self.fmt()

    def __repr__(self):
        return f"TropExpr({self})"


def tropicalize(e, coords, t_exponents=None, n_lambda=0):
    """Tropicalize a subtraction-free rational expression.

    ``coords`` lists the variable names that become tropical coordinates.
    ``t_exponents`` maps the remaining variable names to :class:`LamForm`
    exponents (a variable standing for ``t`` raised to that affine power);
    use it for weight parameters, e.g. ``{"d1": LamForm.unit(1, n)}``.

    A monomial ``c * prod v_i^{a_i}`` with c > 0 maps to the affine form
    ``sum a_i * coord_i + (lambda part)``.  A quotient is handled when the
    denominator is a single monomial; a sum of monomials tropicalizes to the
    min of the term forms.
    """
    e = e if isinstance(e, RationalFunction) else RationalFunction(e)
    t_exponents = dict(t_exponents or {})
    index = {name: i for i, name in enumerate(coords)}
    num, den = e.canonical_terms()
    if len(den) != 1:
        raise NonMonomialDenominator(
            f"denominator of the canonical form has {len(den)} terms")

    def term_form(coeff, mono):
        if coeff < 0:
            raise NotSubtractionFree(
                f"canonical form has a negative coefficient ({coeff})")
        vec = [0] * len(coords)
        lam = LamForm.constant(0, n_lambda)
        for name, exp in mono:
            if name in index:
                vec[index[name]] += exp
            elif name in t_exponents:
                lam = lam + t_exponents[name].scaled(exp)
            else:
                raise KeyError(f"variable {name} is neither a coordinate "
                               f"nor a declared t-power")
        return AffineForm(tuple(vec), lam)

    dform = term_form(*den[0])
    forms = []
    for coeff, mono in num:
        f = term_form(coeff, mono)
        forms.append(AffineForm(
            tuple(a - b for a, b in zip(f.coeffs, dform.coeffs)),
            f.lam - dform.lam,
        ))
    if not forms:
        raise NotSubtractionFree("cannot tropicalize the zero expression")
    return TropExpr(coords, forms)
