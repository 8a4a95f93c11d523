"""Sparse multivariate polynomials on simplex charts.

Coefficients are exact rationals (Fraction) by default; plain floats are
accepted everywhere for the double-precision backend.  Exponent keys are
dense tuples, one slot per chart variable, with zero coefficients pruned.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction


class ShapeError(ValueError):
    """Operand chart dimensions do not match, or a slot is out of range."""


class PolyParseError(ValueError):
    """Malformed polynomial text."""


def _strip_zeros(terms):
    return {e: c for e, c in terms.items() if c != 0}


class SimplexPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise ShapeError("nvars must be nonnegative")
        self.nvars = nvars
        self.terms = _strip_zeros(terms or {})
        for e in self.terms:
            if len(e) != nvars or any(p < 0 for p in e):
                raise ShapeError(f"bad exponent tuple {e} for {nvars} variables")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SimplexPolynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "SimplexPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "SimplexPolynomial":
        return cls.constant(nvars, Fraction(1))

    @classmethod
    def monomial(cls, nvars: int, exponents, c=Fraction(1)) -> "SimplexPolynomial":
        return cls(nvars, {tuple(exponents): c})

    @classmethod
    def variable(cls, nvars: int, slot: int) -> "SimplexPolynomial":
        e = [0] * nvars
        e[slot] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplexPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ShapeError(
                f"chart dimensions differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, SimplexPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SimplexPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SimplexPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "SimplexPolynomial":
        return SimplexPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SimplexPolynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return SimplexPolynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def diff(self, slot: int) -> "SimplexPolynomial":
        if not (0 <= slot < self.nvars):
            raise ShapeError(f"slot {slot} out of range for {self.nvars} variables")
        out: dict = {}
        for e, c in self.terms.items():
            p = e[slot]
            if p == 0:
                continue
            key = e[:slot] + (p - 1,) + e[slot + 1:]
            out[key] = out.get(key, 0) + c * p
        return SimplexPolynomial(self.nvars, out)

    def map_coeffs(self, fn) -> "SimplexPolynomial":
        return SimplexPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # -- substitutions ------------------------------------------------------

    def substitute_zero(self, slot: int) -> "SimplexPolynomial":
        """Restrict to the coordinate facet x_slot = 0 and drop the slot."""
        if not (0 <= slot < self.nvars):
            raise ShapeError(f"slot {slot} out of range for {self.nvars} variables")
        out: dict = {}
        for e, c in self.terms.items():
            if e[slot] != 0:
                continue
            key = e[:slot] + e[slot + 1:]
            out[key] = out.get(key, 0) + c
        return SimplexPolynomial(self.nvars - 1, out)

    def substitute_closure(self, slot: int) -> "SimplexPolynomial":
        """Eliminate x_slot via x_slot = 1 - sum of the remaining variables."""
        if not (0 <= slot < self.nvars):
            raise ShapeError(f"slot {slot} out of range for {self.nvars} variables")
        m = self.nvars - 1
        one_minus = SimplexPolynomial.one(m)
        for j in range(m):
            one_minus = one_minus - SimplexPolynomial.variable(m, j)
        maxp = max((e[slot] for e in self.terms), default=0)
        powers = [SimplexPolynomial.one(m)]
        for _ in range(maxp):
            powers.append(powers[-1] * one_minus)
        result = SimplexPolynomial.zero(m)
        for e, c in self.terms.items():
            rest = e[:slot] + e[slot + 1:]
            result = result + SimplexPolynomial.monomial(m, rest, c) * powers[e[slot]]
        return result

    # -- integration and evaluation -----------------------------------------

    def simplex_integral(self):
        """Integral over the standard open simplex of the chart dimension.

        Termwise Dirichlet formula: int x^a = prod(a_i!) / (|a| + k)!.
        """
        k = self.nvars
        total = 0
        for e, c in self.terms.items():
            num = 1
            for p in e:
                num *= math.factorial(p)
            total = total + c * Fraction(num, math.factorial(sum(e) + k))
        return total

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ShapeError(
                f"point has {len(point)} coordinates, chart has {self.nvars}")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v = v * x ** p
            total = total + v
        return total

    # -- text and JSON forms -------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), t)):
            c = self.terms[e]
            factors = [str(c)]
            for i, p in enumerate(e):
                if p == 1:
                    factors.append(f"x{i + 1}")
                elif p > 1:
                    factors.append(f"x{i + 1}^{p}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, nvars: int) -> "SimplexPolynomial":
        s = text.replace(" ", "")
        if not s:
            raise PolyParseError("empty polynomial text")
        # collapse sign pairs so '+ -1*x1' style coefficients tokenize
        while re.search(r"[+-][+-]", s):
            s = s.replace("--", "+").replace("++", "+")
            s = s.replace("+-", "-").replace("-+", "-")
        chunks = re.findall(r"[+-]?[^+-]+", s)
        if "".join(chunks) != s:
            raise PolyParseError(f"cannot tokenize {text!r}")
        result = cls.zero(nvars)
        for chunk in chunks:
            sign = 1
            if chunk[0] == "+":
                chunk = chunk[1:]
            elif chunk[0] == "-":
                sign = -1
                chunk = chunk[1:]
            if not chunk:
                raise PolyParseError(f"dangling sign in {text!r}")
            coeff = Fraction(sign)
            exps = [0] * nvars
            for factor in chunk.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if m:
                    idx = int(m.group(1))
                    if not (1 <= idx <= nvars):
                        raise PolyParseError(
                            f"variable x{idx} out of range 1..{nvars}")
                    exps[idx - 1] += int(m.group(2)) if m.group(2) else 1
                    continue
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if m:
                    coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                    continue
                m = re.fullmatch(r"\d*\.\d+", factor)
                if m:
                    coeff *= Fraction(factor)
                    continue
                raise PolyParseError(
                    f"bad factor {factor!r} (juxtaposition needs explicit '*')")
            result = result + cls.monomial(nvars, exps, coeff)
        return result

    def to_json(self) -> list:
        out = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), t)):
            c = self.terms[e]
            if isinstance(c, float):
                out.append({"exponents": list(e), "coeff": c})
            else:
                f = Fraction(c)
                out.append({"exponents": list(e),
                            "numerator": f.numerator,
                            "denominator": f.denominator})
        return out

    @classmethod
    def from_json(cls, data: list, nvars: int) -> "SimplexPolynomial":
        terms: dict = {}
        for item in data:
            e = tuple(item["exponents"])
            if "coeff" in item:
                c = item["coeff"]
            else:
                c = Fraction(item["numerator"], item["denominator"])
            terms[e] = terms.get(e, 0) + c
        return cls(nvars, terms)

    def __repr__(self):
        return f"SimplexPolynomial({self.nvars}, {self.to_text()!r})"


def poly_bound(p: SimplexPolynomial):
    """Upper bound for |p| on the closed simplex: sum of |coefficients|."""
    return sum(abs(c) for c in p.terms.values())
