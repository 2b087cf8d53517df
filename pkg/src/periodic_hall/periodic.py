"""The m-periodic derived Hall algebra DH_m for odd m.

Basis elements are m-tuples of module classes (index arithmetic mod m),
standing for the sum of shifted stalks in the m-periodic derived category.
The product of two basis elements is a twisted sum over tuples (I_i) of
"connecting" module classes, with one brute-force derived Hall number per
position:

    u_A u_B = v^twist * sum_{I, M} prod_i H(M_i; I_i[1] + A_i, B_i + I_{i-1}[-1])
                                        / |Aut(I_i)| * u_M

where twist = sum_i < sum_k (-1)^k [A_{i+k}], [B_i] >.  The enumeration of
(I_i) is pruned by the necessary condition that I_i embeds into B_i and
A_{i+1} surjects onto I_i, which only requires comparing dimension
vectors; pruned terms vanish (the tests spot-check this against the
unpruned counter).

Only odd m is accepted: without the extension by K-elements the even
periodic multiplication is not defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import combo
from .derived import DerivedContext
from .errors import EvenPeriodError, ParseError, UsageError
from .repcat import IsoClass


@dataclass(frozen=True)
class PeriodicObject:
    """Basis element: one module class per degree in Z_m."""

    classes: tuple

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def is_unit(self) -> bool:
        return all(c.is_zero for c in self.classes)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.classes)

    def __str__(self):
        parts = [
            f"{cls.name}@{i}" for i, cls in enumerate(self.classes) if not cls.is_zero
        ]
        return "[" + (" + ".join(parts) or "0") + "]"

    __repr__ = __str__


class PeriodicElement:
    """Finite scalar combination of basis elements."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "PeriodicAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = {b: s for b, s in terms.items() if not s.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __add__(self, other):
        self.algebra._check_element(other)
        return PeriodicElement(self.algebra, combo.combine(self.terms, other.terms))

    def __sub__(self, other):
        self.algebra._check_element(other)
        return PeriodicElement(
            self.algebra, combo.combine(self.terms, other.terms, negate_b=True)
        )

    def __neg__(self):
        return PeriodicElement(
            self.algebra, {b: -s for b, s in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, PeriodicElement):
            return self.algebra.multiply(self, other)
        return PeriodicElement(self.algebra, combo.scale(self.terms, other))

    def __rmul__(self, other):
        # scalar * element (elements multiply via __mul__)
        return PeriodicElement(self.algebra, combo.scale(self.terms, other))

    def __eq__(self, other):
        return (
            isinstance(other, PeriodicElement)
            and other.algebra is self.algebra
            and other.terms == self.terms
        )

    def __str__(self):
        return combo.format_terms([(str(b), s) for b, s in self.sorted_terms()])

    __repr__ = __str__

    def to_json(self):
        return [
            {"basis": str(b), "scalar": s.to_strings(), "scalar_text": str(s)}
            for b, s in self.sorted_terms()
        ]


class PeriodicAlgebra:
    """DH_m over a fixed quiver, prime and odd period."""

    def __init__(self, derived: DerivedContext, m: int):
        if m < 1:
            raise UsageError(f"period must be positive, got {m}")
        if m % 2 == 0:
            raise EvenPeriodError(
                f"the m-periodic derived Hall algebra needs odd m, got {m}"
            )
        self.derived = derived
        self.rep = derived.rep
        self.field = derived.field
        self.m = m
        self._product_cache: dict = {}

    # -- element builders -----------------------------------------------------

    def basis(self, classes) -> PeriodicObject:
        classes = tuple(classes)
        if len(classes) != self.m:
            raise UsageError(f"expected {self.m} classes, got {len(classes)}")
        for cls in classes:
            if not isinstance(cls, IsoClass):
                raise UsageError("basis entries must be IsoClass values")
        return PeriodicObject(classes)

    def basis_from_degrees(self, entries: dict) -> PeriodicObject:
        """{degree: class} with degrees reduced mod m; collisions direct-sum."""
        classes = [self.rep.zero_class] * self.m
        for deg, cls in entries.items():
            i = deg % self.m
            classes[i] = self.rep.direct_sum_class(classes[i], cls)
        return self.basis(classes)

    @property
    def unit_basis(self) -> PeriodicObject:
        return self.basis([self.rep.zero_class] * self.m)

    def unit(self) -> PeriodicElement:
        return self.element({self.unit_basis: self.field.one})

    def element(self, terms: dict) -> PeriodicElement:
        for b in terms:
            if b.m != self.m:
                raise UsageError("basis element has the wrong period")
        return PeriodicElement(self, dict(terms))

    def monomial(self, basis: PeriodicObject) -> PeriodicElement:
        return self.element({basis: self.field.one})

    def _check_element(self, other):
        if not isinstance(other, PeriodicElement) or other.algebra is not self:
            raise UsageError("operands belong to different algebras")

    # -- multiplication ---------------------------------------------------------

    def multiply(self, x: PeriodicElement, y: PeriodicElement) -> PeriodicElement:
        self._check_element(x)
        self._check_element(y)
        acc: dict = {}
        for a, sa in x.terms.items():
            for b, sb in y.terms.items():
                coeff = sa * sb
                for basis, s in self.basis_product(a, b).items():
                    combo.add_term(acc, basis, coeff * s)
        return PeriodicElement(self, acc)

    def basis_product(self, a: PeriodicObject, b: PeriodicObject) -> dict:
        key = (a.classes, b.classes)
        cached = self._product_cache.get(key)
        if cached is None:
            cached = self._compute_basis_product(a, b)
            self._product_cache[key] = cached
        return cached

    def _compute_basis_product(self, a: PeriodicObject, b: PeriodicObject) -> dict:
        m = self.m
        d = self.derived
        rep = self.rep
        dims_a = [np.asarray(cls.dims, dtype=np.int64) for cls in a.classes]
        dims_b = [np.asarray(cls.dims, dtype=np.int64) for cls in b.classes]

        twist = 0
        for i in range(m):
            alt = sum((-1) ** k * dims_a[(i + k) % m] for k in range(m))
            twist += rep.euler(alt, dims_b[i])

        candidates = []
        for i in range(m):
            bound = np.minimum(dims_b[i], dims_a[(i + 1) % m])
            candidates.append(rep.iso_classes_upto(tuple(int(x) for x in bound)))

        accum: dict = {}
        for I in product(*candidates):
            factors = self._hall_factors(a.classes, b.classes, I)
            if factors is None:
                continue
            for combo_choice in product(*(f.items() for f in factors)):
                modules = tuple(cls for cls, _ in combo_choice)
                coeff = Fraction(1)
                for _, c in combo_choice:
                    coeff *= c
                accum[modules] = accum.get(modules, Fraction(0)) + coeff

        vt = self.field.v_power(4 * twist)
        out: dict = {}
        for modules, coeff in accum.items():
            if coeff:
                out[PeriodicObject(modules)] = vt * self.field.from_rational(coeff)
        return out

    def _hall_factors(self, A, B, I):
        """Per-position maps M -> H(M)/|Aut(I_i)| as exact rationals."""
        m = self.m
        d = self.derived
        rep = self.rep
        q = Fraction(rep.q)
        factors = []
        for i in range(m):
            X = d.graded({1: I[i], 0: A[i]})
            Y = d.graded({0: B[i], -1: I[(i - 1) % m]})
            counts = d.module_fiber_counts(X, Y)
            if not counts:
                return None
            weight = q ** (-d.hall_denominator_exponent(X, Y)) / rep.aut_count(I[i])
            factors.append({cls: c * weight for cls, c in counts.items()})
        return factors

    # -- parsing / printing -------------------------------------------------------

    def parse_basis(self, text: str) -> PeriodicObject:
        """'[S1@0 + P1@2]' (grouped class sums allowed), '[0]' is the unit."""
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"basis literal must be bracketed: {text!r}")
        inner = text[1:-1].strip()
        if inner in ("", "0"):
            return self.unit_basis
        graded = self.derived.parse_graded(inner)
        return self.basis_from_degrees(dict(graded.entries))

    def parse_element(self, text: str) -> PeriodicElement:
        """Sums 'coef*[basis] + ...'; coefficient literals as in the scalar field."""
        from .scalar import parse_scalar

        terms: dict = {}
        for piece, sign in _split_element(text):
            coef_text, basis_text = _split_coefficient(piece)
            scalar = (
                parse_scalar(self.field, coef_text) if coef_text else self.field.one
            )
            if sign < 0:
                scalar = -scalar
            basis = self.parse_basis(basis_text)
            combo.add_term(terms, basis, scalar)
        return PeriodicElement(self, terms)


def _split_element(text: str):
    """Split 'a*[..] + b*[..] - c*[..]' at top level, tracking signs."""
    text = text.strip()
    if not text:
        raise ParseError("empty element literal")
    pieces = []
    depth = 0
    sign = 1
    current = ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and current.strip().endswith("]"):
            pieces.append((current.strip(), sign))
            sign = 1 if ch == "+" else -1
            current = ""
        else:
            current += ch
        i += 1
    if current.strip():
        pieces.append((current.strip(), sign))
    if not pieces:
        raise ParseError(f"no terms in element literal {text!r}")
    return pieces


def _split_coefficient(piece: str):
    """'<coef>*[basis...]' -> (coef or '', basis literal).

    The basis part may also start with 'K[' (pure K-monomials in the
    extended algebra), so a '[' directly preceded by 'K' starts the basis.
    """
    idx = piece.find("[")
    if idx < 0:
        raise ParseError(f"term {piece!r} has no bracketed basis")
    if idx > 0 and piece[idx - 1] == "K":
        idx -= 1
    coef = piece[:idx].strip()
    if coef.endswith("*"):
        coef = coef[:-1].strip()
    if coef.startswith("-"):
        # leading sign folded here keeps '-[S1@0]' parseable
        rest = coef[1:].strip()
        coef = f"-1*{rest}" if rest else "-1"
    return coef, piece[idx:]
