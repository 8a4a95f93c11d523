"""Closed-form time dependence: finite sums of c * t^p * exp(-lambda*t).

All decay rates arising in the solver are of the form m*(m-1)/2 for integer
m, hence integers; atoms are keyed by the exact pair (rate, power) so that
cancellations are detected symbolically in the rational backend.
"""
from __future__ import annotations

import math
from fractions import Fraction


class TimeProfile:
    __slots__ = ("atoms",)

    def __init__(self, atoms: dict | None = None):
        self.atoms = {k: c for k, c in (atoms or {}).items() if c != 0}
        for (rate, power) in self.atoms:
            if rate < 0 or power < 0:
                raise ValueError(f"bad atom key ({rate}, {power})")

    @classmethod
    def zero(cls) -> "TimeProfile":
        return cls()

    @classmethod
    def decay(cls, rate: int, coeff=Fraction(1)) -> "TimeProfile":
        return cls({(rate, 0): coeff})

    def is_zero(self) -> bool:
        return not self.atoms

    def __eq__(self, other):
        if not isinstance(other, TimeProfile):
            return NotImplemented
        return self.atoms == other.atoms

    def __add__(self, other: "TimeProfile") -> "TimeProfile":
        out = dict(self.atoms)
        for k, c in other.atoms.items():
            out[k] = out.get(k, 0) + c
        return TimeProfile(out)

    def __sub__(self, other: "TimeProfile") -> "TimeProfile":
        return self + other.scale(-1)

    def scale(self, c) -> "TimeProfile":
        return TimeProfile({k: c * v for k, v in self.atoms.items()})

    def derivative(self) -> "TimeProfile":
        out: dict = {}
        for (rate, p), c in self.atoms.items():
            if p > 0:
                k = (rate, p - 1)
                out[k] = out.get(k, 0) + c * p
            if rate != 0:
                k = (rate, p)
                out[k] = out.get(k, 0) - c * rate
        return TimeProfile(out)

    def at(self, t: float) -> float:
        total = 0.0
        for (rate, p), c in self.atoms.items():
            total += float(c) * t ** p * math.exp(-rate * t)
        return total

    def value0(self):
        """Exact value at t = 0 (only power-0 atoms contribute)."""
        return sum((c for (rate, p), c in self.atoms.items() if p == 0), 0)

    def map_coeffs(self, fn) -> "TimeProfile":
        return TimeProfile({k: fn(c) for k, c in self.atoms.items()})

    def to_json(self) -> list:
        out = []
        for (rate, p) in sorted(self.atoms):
            c = self.atoms[(rate, p)]
            entry = {"lambda": rate, "power": p}
            if isinstance(c, float):
                entry["coeff"] = c
            else:
                f = Fraction(c)
                entry["numerator"] = f.numerator
                entry["denominator"] = f.denominator
            out.append(entry)
        return out

    @classmethod
    def from_json(cls, data: list) -> "TimeProfile":
        atoms: dict = {}
        for item in data:
            key = (item["lambda"], item["power"])
            if "coeff" in item:
                c = item["coeff"]
            else:
                c = Fraction(item["numerator"], item["denominator"])
            atoms[key] = atoms.get(key, 0) + c
        return cls(atoms)

    def __repr__(self):
        bits = [f"({c}) t^{p} e^(-{r}t)" for (r, p), c in sorted(self.atoms.items())]
        return "TimeProfile[" + " + ".join(bits) + "]" if bits else "TimeProfile[0]"


def convolve(parent: TimeProfile, child_rate: int) -> tuple[TimeProfile, int]:
    """Duhamel integral int_0^t parent(tau) * exp(-child_rate*(t-tau)) dtau.

    Returns the closed-form profile together with the number of resonant
    atoms (parent rate equal to child_rate), which produce secular t^(p+1)
    terms instead of the generic two-exponential combination.
    """
    b = child_rate
    out: dict = {}
    resonant = 0

    def bump(key, val):
        out[key] = out.get(key, 0) + val

    for (a, p), c in parent.atoms.items():
        if a == b:
            resonant += 1
            bump((a, p + 1), c * Fraction(1, p + 1))
            continue
        d = a - b
        fact_p = math.factorial(p)
        bump((b, 0), c * Fraction(fact_p, d ** (p + 1)))
        for q in range(p + 1):
            bump((a, q), -c * Fraction(fact_p, math.factorial(q) * d ** (p + 1 - q)))
    return TimeProfile(out), resonant
