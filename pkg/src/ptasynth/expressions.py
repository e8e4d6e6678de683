"""Parameter expressions: integer-linear, multivariate polynomial, or infinity.

A linear expression is ``c0 + c1*p1 + ... + cn*pn`` with integer
coefficients; ``con(e)`` is the constant term and ``cf(e, p)`` the
coefficient of parameter ``p``.  Polynomial expressions map monomials
(sorted tuples of ``(param, exponent)`` pairs) to integer coefficients.
The parser emits the linear kind whenever the total degree is <= 1, so
the polynomial kind always means "genuinely nonlinear".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Tuple

from .scalars import INF

LINEAR = "linear"
POLY = "poly"
INFINITE = "inf"

Monomial = Tuple[Tuple[str, int], ...]


class ExpressionError(ValueError):
    pass


@dataclass(frozen=True)
class Expression:
    kind: str
    const: int = 0
    coeffs: Mapping[str, int] = field(default_factory=dict)
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    @staticmethod
    def linear(const: int = 0, coeffs: Mapping[str, int] | None = None) -> "Expression":
        clean = {p: c for p, c in (coeffs or {}).items() if c != 0}
        return Expression(LINEAR, const=int(const), coeffs=clean)

    @staticmethod
    def constant(value: int) -> "Expression":
        return Expression.linear(value)

    @staticmethod
    def param(name: str, coeff: int = 1) -> "Expression":
        return Expression.linear(0, {name: coeff})

    @staticmethod
    def polynomial(terms: Mapping[Monomial, int]) -> "Expression":
        clean = {m: c for m, c in terms.items() if c != 0}
        degree = max((sum(e for _, e in m) for m in clean), default=0)
        if degree <= 1:
            const = clean.get((), 0)
            coeffs = {m[0][0]: c for m, c in clean.items() if m}
            return Expression.linear(const, coeffs)
        return Expression(POLY, terms=clean)

    @staticmethod
    def infinity() -> "Expression":
        return Expression(INFINITE)

    # -- queries ---------------------------------------------------------

    def canonical_key(self) -> tuple:
        if self.kind == LINEAR:
            return (LINEAR, self.const, tuple(sorted(self.coeffs.items())))
        if self.kind == POLY:
            return (POLY, tuple(sorted(self.terms.items())))
        return (INFINITE,)

    def __hash__(self):
        return hash(self.canonical_key())

    def is_infinite(self) -> bool:
        return self.kind == INFINITE

    def is_linear(self) -> bool:
        return self.kind == LINEAR

    def con(self) -> int:
        """Constant term of a linear expression."""
        if self.kind != LINEAR:
            raise ExpressionError("con() is only defined for linear expressions")
        return self.const

    def cf(self, param: str) -> int:
        """Coefficient of ``param`` in a linear expression (0 if absent)."""
        if self.kind != LINEAR:
            raise ExpressionError("cf() is only defined for linear expressions")
        return self.coeffs.get(param, 0)

    def params(self) -> frozenset:
        if self.kind == LINEAR:
            return frozenset(self.coeffs)
        if self.kind == POLY:
            out = set()
            for mono in self.terms:
                out.update(p for p, _ in mono)
            return frozenset(out)
        return frozenset()

    def is_parametric(self) -> bool:
        return bool(self.params())

    def as_poly_terms(self) -> dict:
        """View the expression as a monomial->coefficient map."""
        if self.kind == POLY:
            return dict(self.terms)
        if self.kind == LINEAR:
            out = {}
            if self.const:
                out[()] = self.const
            for p, c in self.coeffs.items():
                out[((p, 1),)] = c
            return out
        raise ExpressionError("infinity has no polynomial form")

    # -- arithmetic ------------------------------------------------------

    def negated(self) -> "Expression":
        if self.kind == INFINITE:
            raise ExpressionError("cannot negate infinity")
        if self.kind == LINEAR:
            return Expression.linear(-self.const, {p: -c for p, c in self.coeffs.items()})
        return Expression.polynomial({m: -c for m, c in self.terms.items()})

    def plus_const(self, delta: int) -> "Expression":
        if self.kind == INFINITE:
            return self
        if self.kind == LINEAR:
            return Expression.linear(self.const + delta, dict(self.coeffs))
        terms = dict(self.terms)
        terms[()] = terms.get((), 0) + delta
        return Expression.polynomial(terms)

    def minus(self, other: "Expression") -> "Expression":
        if self.kind == INFINITE or other.kind == INFINITE:
            raise ExpressionError("cannot subtract with infinity")
        a = self.as_poly_terms()
        for m, c in other.as_poly_terms().items():
            a[m] = a.get(m, 0) - c
        return Expression.polynomial(a)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, gamma: Mapping[str, Fraction]):
        """Exact value under a parameter valuation; INF for infinity.

        Parameter values are rationals or, for single-parameter
        expressions, exact algebraic numbers; the result is then the exact
        derived algebraic value.
        """
        if self.kind == INFINITE:
            return INF
        mine = self.params()
        missing = mine - set(gamma)
        if missing:
            raise ExpressionError("missing parameter value for %s" % ", ".join(sorted(missing)))
        algebraic = [p for p in mine if not isinstance(gamma[p], (int, Fraction))]
        if algebraic:
            return self._evaluate_algebraic(gamma, algebraic[0])
        if self.kind == LINEAR:
            total = Fraction(self.const)
            for p, c in self.coeffs.items():
                total += c * Fraction(gamma[p])
            return total
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = Fraction(c)
            for p, e in mono:
                term *= Fraction(gamma[p]) ** e
            total += term
        return total

    def _evaluate_algebraic(self, gamma, param):
        from .polynomials import AlgValue, AlgebraicNumber

        if len(self.params()) > 1:
            raise ExpressionError("algebraic evaluation supports a single parameter")
        root = gamma[param]
        if not isinstance(root, AlgebraicNumber):
            raise ExpressionError("parameter values must be rationals or algebraic numbers")
        if root.is_rational():
            return self.evaluate({param: root.to_fraction()})
        coeffs: dict = {}
        for mono, c in self.as_poly_terms().items():
            exp = mono[0][1] if mono else 0
            coeffs[exp] = coeffs.get(exp, 0) + c
        poly = tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1))
        return AlgValue(root, poly)

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if self.kind == INFINITE:
            return "inf"
        parts = []
        if self.kind == LINEAR:
            items = sorted(self.coeffs.items())
            for p, c in items:
                parts.append(_render_term(c, [(p, 1)]))
            if self.const or not parts:
                parts.append(("+ " if self.const >= 0 else "- ") + str(abs(self.const)))
        else:
            for mono, c in sorted(self.terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), kv[0])):
                parts.append(_render_term(c, list(mono)))
            if not parts:
                parts.append("+ 0")
        text = " ".join(parts)
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            text = "-" + text[2:]
        return text

    def __str__(self):
        return self.render()


def _render_term(coeff: int, mono) -> str:
    sign = "+ " if coeff >= 0 else "- "
    mag = abs(coeff)
    if not mono:
        return sign + str(mag)
    factors = []
    for p, e in mono:
        factors.append(p if e == 1 else "%s^%d" % (p, e))
    body = "*".join(factors)
    if mag != 1:
        body = "%d*%s" % (mag, body)
    return sign + body
