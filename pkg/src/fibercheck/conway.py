"""Exact Conway polynomial via the skein relation.

The engine resolves the first descending-order violation along a
deterministic walk of the diagram: at a positive pivot crossing
``nabla(D) = nabla(switch) + z * nabla(smooth)``, at a negative pivot
``nabla(D) = nabla(switch) - z * nabla(smooth)``.  Switching moves the
walk's first violation strictly later and smoothing removes a crossing,
so the recursion bottoms out at descending diagrams (unlinks).  Results
are memoized on canonical diagram fingerprints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagram import Diagram

__all__ = [
    "ConwayPolynomial",
    "conway",
    "alexander",
    "hopf_plumbing_obstruction",
    "mm_forbidden",
]


@dataclass(frozen=True)
class ConwayPolynomial:
    """Integer polynomial in z, coefficients from degree 0 upward."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> "ConwayPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "ConwayPolynomial":
        return cls((1,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial(tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        if self.is_zero or other.is_zero:
            return ConwayPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ConwayPolynomial(tuple(out))

    def __neg__(self) -> "ConwayPolynomial":
        return ConwayPolynomial(tuple(-a for a in self.coeffs))

    def shift(self) -> "ConwayPolynomial":
        """Multiply by z."""
        if self.is_zero:
            return self
        return ConwayPolynomial((0,) + self.coeffs)

    def is_monic_of_degree(self, n: int) -> bool:
        """Degree exactly ``n`` with leading coefficient +-1."""
        return self.degree == n and abs(self.coeffs[-1]) == 1

    @cached_property
    def _string(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                z = "z" if i == 1 else f"z^{i}"
                if a == 1:
                    terms.append(z)
                elif a == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{a}{z}")
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def __str__(self) -> str:
        return self._string


_MEMO: dict[str, ConwayPolynomial] = {}

DEFAULT_BOUND = 16


def conway(d: Diagram, bound: int | None = DEFAULT_BOUND) -> ConwayPolynomial:
    """The Conway polynomial of the link presented by ``d``.

    ``bound`` caps the crossing count of the input (the recursion never
    grows a diagram); pass ``None`` to disable.
    """
    if bound is not None and d.n > bound:
        raise ValueError(f"diagram has {d.n} crossings, bound is {bound}")
    key = d.fingerprint
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    result = _conway(d)
    _MEMO[key] = result
    return result


def _conway(d: Diagram) -> ConwayPolynomial:
    pieces = len(d.projection_components) + d.free_loops
    if pieces >= 2:
        return ConwayPolynomial.zero()
    if d.n == 0:
        # a single free loop (the empty diagram never reaches here)
        return ConwayPolynomial.one()
    nug = d.nugatory
    if nug:
        return conway(d.untwist(min(nug)))
    pivot = _first_violation(d)
    if pivot is None:
        # descending diagram: an unlink
        return ConwayPolynomial.one() if d.component_count == 1 else ConwayPolynomial.zero()
    switched = conway(d.switch_crossing(pivot))
    smoothed = conway(d.smooth_crossing(pivot)).shift()
    if d.sign(pivot) > 0:
        return switched + smoothed
    return switched - smoothed


def _first_violation(d: Diagram) -> int | None:
    """First crossing reached on its under-strand before its over-strand.

    Components are walked in order of their least edge label, each from
    that least edge; a diagram with no violation is descending, hence an
    unlink.
    """
    visited: set[int] = set()
    for comp in sorted(d.components, key=min):
        start = comp.index(min(comp))
        for j in range(len(comp)):
            e = comp[(start + j) % len(comp)]
            ci, slot = d.head_of(e)
            if ci in visited:
                continue
            if slot == 0:
                return ci
            visited.add(ci)
    return None


def alexander(poly: ConwayPolynomial) -> dict[int, int]:
    """Alexander polynomial via z -> t^(1/2) - t^(-1/2).

    Returns exponent -> coefficient with exponents in half-integer units
    (a key of ``k`` means ``t^(k/2)``), symmetric about 0.
    """
    out: dict[int, int] = {}
    for i, a in enumerate(poly.coeffs):
        if a == 0:
            continue
        # (s - 1/s)^i expanded in s = t^(1/2)
        binom = 1
        for j in range(i + 1):
            exp = i - 2 * j
            out[exp] = out.get(exp, 0) + a * binom * (-1) ** j
            binom = binom * (i - j) // (j + 1)
    return {k: v for k, v in sorted(out.items()) if v != 0}


def hopf_plumbing_obstruction(poly: ConwayPolynomial) -> str | None:
    """Genus-2 obstruction to being a plumbing of Hopf bands.

    A fibered knot of genus 2 whose Conway polynomial has one of the
    shapes below cannot be constructed by plumbing Hopf bands:

    * ``1 + c1*z^2 + z^4`` with ``c1 = 0 (mod 4)``
    * ``1 + c1*z^2 - z^4`` with ``c1 = 2 (mod 4)``

    Returns a description of the matched shape, or ``None``.
    """
    if poly.degree != 4 or poly[0] != 1 or poly[1] != 0 or poly[3] != 0:
        return None
    c1 = poly[2]
    if poly[4] == 1 and c1 % 4 == 0:
        return f"1 + {c1}z^2 + z^4 with {c1} = 0 (mod 4)"
    if poly[4] == -1 and c1 % 4 == 2:
        return f"1 + {c1}z^2 - z^4 with {c1} = 2 (mod 4)"
    return None


def mm_forbidden(poly: ConwayPolynomial) -> bool:
    """True iff ``poly`` matches a genus-2 non-plumbability shape.

    Boolean form of :func:`hopf_plumbing_obstruction`.  The caller is
    responsible for the hypotheses (genus-2 fibered knot); this predicate
    only inspects the polynomial.
    """
    return hopf_plumbing_obstruction(poly) is not None
