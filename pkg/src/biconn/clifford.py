"""Exact arithmetic in the real Clifford algebra Cl(r, s).

Basis vectors are indexed ``0 .. m-1``.  The first ``s`` of them square to
``-1`` and the remaining ``r`` to ``+1``, so in Lorentzian signature
``(n, 1)`` the timelike vector is ``e_0``.  The product convention is
``v v = eta(v, v)``.

Coefficients are :class:`fractions.Fraction`; nothing in this module ever
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

Blade = tuple[int, ...]


@dataclass(frozen=True)
class Signature:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0 or self.r + self.s < 1:
            raise ValueError(f"invalid signature ({self.r}, {self.s})")

    @property
    def m(self) -> int:
        return self.r + self.s

    @property
    def is_lorentzian(self) -> bool:
        return self.s == 1

    def eta(self, a: int) -> int:
        """Diagonal entry eta(e_a, e_a)."""
        if not 0 <= a < self.m:
            raise IndexError(f"basis index {a} out of range for m={self.m}")
        return -1 if a < self.s else 1

    @classmethod
    def lorentzian(cls, n: int) -> "Signature":
        return cls(n, 1)


@lru_cache(maxsize=None)
def _blade_product(sig: Signature, a: Blade, b: Blade) -> tuple[int, Blade]:
    # sign from sorting the concatenation, then contract repeated indices
    swaps = sum(1 for i in a for j in b if i > j)
    sign = -1 if swaps % 2 else 1
    common = set(a) & set(b)
    for i in common:
        sign *= sig.eta(i)
    return sign, tuple(sorted(set(a) ^ set(b)))


def _canonical(indices: Iterable[int], sig: Signature) -> tuple[int, Blade]:
    """Reduce an arbitrary index word to (sign, canonical blade)."""
    sign, blade = 1, ()
    for i in indices:
        s, blade = _blade_product(sig, blade, (i,))
        sign *= s
    return sign, blade


class Multivector:
    """Sparse element of Cl(r, s) with exact rational coefficients."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Mapping[Blade, object] | None = None):
        self.sig = sig
        clean: dict[Blade, Fraction] = {}
        for blade, coeff in (terms or {}).items():
            sign, canon = _canonical(blade, sig)
            c = Fraction(coeff) * sign
            if c:
                clean[canon] = clean.get(canon, Fraction(0)) + c
                if not clean[canon]:
                    del clean[canon]
        self.terms = clean

    @classmethod
    def scalar(cls, sig: Signature, value=1) -> "Multivector":
        return cls(sig, {(): value})

    def _check(self, other: "Multivector"):
        if self.sig != other.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Multivector.scalar(self.sig, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for blade, c in other.terms.items():
            out[blade] = out.get(blade, Fraction(0)) + c
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Multivector(self.sig, {b: c * other for b, c in self.terms.items()})
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(self.sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for blade in sorted(self.terms, key=lambda b: (len(b), b)):
            name = "e" + "".join(map(str, blade)) if blade else "1"
            parts.append(f"{self.terms[blade]}*{name}")
        return " + ".join(parts)

    def coefficient(self, blade: Blade) -> Fraction:
        sign, canon = _canonical(blade, self.sig)
        return sign * self.terms.get(canon, Fraction(0))

    def grades(self) -> set[int]:
        return {len(b) for b in self.terms}

    def to_json(self) -> dict:
        return {
            "signature": [self.sig.r, self.sig.s],
            "terms": [
                {"blade": list(b), "num": str(c.numerator), "den": str(c.denominator)}
                for b, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Multivector":
        sig = Signature(*data["signature"])
        terms: dict[Blade, Fraction] = {}
        for t in data["terms"]:
            blade = tuple(t["blade"])
            if any(not 0 <= i < sig.m for i in blade) or len(set(blade)) != len(blade):
                raise ValueError(f"invalid blade {blade}")
            terms[blade] = terms.get(blade, Fraction(0)) + Fraction(int(t["num"]), int(t["den"]))
        return cls(sig, terms)


def basis_vector(sig: Signature, a: int) -> Multivector:
    if not 0 <= a < sig.m:
        raise IndexError(f"basis index {a} out of range for m={sig.m}")
    return Multivector(sig, {(a,): 1})


def blade(sig: Signature, *indices: int, coeff=1) -> Multivector:
    """The product e_{i1} e_{i2} ... as a multivector (indices need not be sorted)."""
    for i in indices:
        if not 0 <= i < sig.m:
            raise IndexError(f"basis index {i} out of range for m={sig.m}")
    return Multivector(sig, {tuple(indices): coeff})


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    out: dict[Blade, Fraction] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            sign, c = _blade_product(x.sig, a, b)
            out[c] = out.get(c, Fraction(0)) + sign * ca * cb
    return Multivector(x.sig, out)


def commutator(x: Multivector, y: Multivector) -> Multivector:
    return geometric_product(x, y) - geometric_product(y, x)


def grade_project(x: Multivector, k: int) -> Multivector:
    if k < 0:
        raise ValueError("grade must be non-negative")
    return Multivector(x.sig, {b: c for b, c in x.terms.items() if len(b) == k})


def spin_algebra_basis(sig: Signature) -> list[Multivector]:
    """Bivectors ``1/2 e_a e_b`` for ``a < b``, in lexicographic order.

    The factor 1/2 matches ``T_ab = 1/2 e_a ^ e_b``.
    """
    if sig.m < 2:
        raise ValueError("spin algebra needs m >= 2")
    return [blade(sig, a, b, coeff=Fraction(1, 2)) for a, b in combinations(range(sig.m), 2)]
