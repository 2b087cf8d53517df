"""Exact arithmetic in the coefficient field Q[t]/(t^8 - q).

All twists in the Hall algebras are powers of v = sqrt(q), with exponents
in (1/4)Z.  Working with t = q^(1/8) makes every such power an honest
monomial: v^(n/4) = t^n.  Since q is prime, t^8 - q is irreducible over Q
(Eisenstein) and the quotient is a field.

Scalars are immutable.  Coefficients are stored sparsely as a map
{degree: Fraction} with degrees in 0..7 and no zero values; products of
basis elements only ever produce rational multiples of a single t-power,
so the sparse form keeps the hot arithmetic path cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ParseError, UsageError

_DEG = 8  # t^8 = q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ScalarField:
    """Shared context fixing the prime q; builds and names scalars."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise UsageError(f"q must be prime, got {q}")
        self.q = q
        self._zero = Scalar(self, {})
        self._one = Scalar(self, {0: Fraction(1)})

    def __repr__(self):
        return f"ScalarField(q={self.q})"

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.q == self.q

    def __hash__(self):
        return hash(("ScalarField", self.q))

    @property
    def zero(self) -> "Scalar":
        return self._zero

    @property
    def one(self) -> "Scalar":
        return self._one

    def from_rational(self, value) -> "Scalar":
        c = Fraction(value)
        return Scalar(self, {0: c} if c else {})

    def v_power(self, n: int) -> "Scalar":
        """t^n, i.e. v^(n/4).  Negative n uses t^(-1) = t^7/q."""
        k, r = divmod(n, _DEG)
        return Scalar(self, {r: Fraction(self.q) ** k})

    def q_power(self, n: int) -> "Scalar":
        return self.from_rational(Fraction(self.q) ** n)

    def scalar(self, coeffs) -> "Scalar":
        """Build from a dense 8-sequence or a {degree: rational} map."""
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        data = {}
        for j, c in items:
            c = Fraction(c)
            if c:
                if not 0 <= j < _DEG:
                    raise UsageError(f"coefficient degree {j} out of range")
                data[j] = c
        return Scalar(self, data)

    def from_strings(self, strings) -> "Scalar":
        """Inverse of Scalar.to_strings: 8 entries 'num/den' or 'num'."""
        if len(strings) != _DEG:
            raise ParseError(f"expected 8 coefficient strings, got {len(strings)}")
        try:
            return self.scalar([Fraction(s) for s in strings])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient string: {exc}") from exc


class Scalar:
    """Element of Q[t]/(t^8 - q).  Immutable; equality is exact."""

    __slots__ = ("field", "_c")

    def __init__(self, field: ScalarField, coeffs: dict):
        self.field = field
        self._c = coeffs  # {deg: Fraction}, canonical: no zeros, 0 <= deg < 8

    # -- ring structure -------------------------------------------------

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return None
            other = self.field.from_rational(other)
        if other.field.q != self.field.q:
            raise UsageError("scalars from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        data = dict(self._c)
        for j, c in other._c.items():
            s = data.get(j, 0) + c
            if s:
                data[j] = s
            else:
                data.pop(j, None)
        return Scalar(self.field, data)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, {j: -c for j, c in self._c.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        q = Fraction(self.field.q)
        data = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                k, r = divmod(i + j, _DEG)
                c = a * b * q**k
                s = data.get(r, 0) + c
                if s:
                    data[r] = s
                else:
                    data.pop(r, None)
        return Scalar(self.field, data)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Field inverse via extended Euclid in Q[t] against t^8 - q."""
        if not self._c:
            raise ZeroDivisionError("cannot invert the zero scalar")
        if len(self._c) == 1:
            # monomial fast path: (c t^j)^-1 = c^-1 q^-1 t^(8-j) for j > 0
            ((j, c),) = self._c.items()
            if j == 0:
                return Scalar(self.field, {0: 1 / c})
            return Scalar(self.field, {_DEG - j: 1 / (c * self.field.q)})
        mod = [Fraction(-self.field.q)] + [Fraction(0)] * (_DEG - 1) + [Fraction(1)]
        a = [Fraction(0)] * _DEG
        for j, c in self._c.items():
            a[j] = c
        # invariants: r0 = s0 * self (mod t^8 - q), r1 = s1 * self (mod ...)
        r0, s0 = mod, [Fraction(0)]
        r1, s1 = list(a), [Fraction(1)]
        while any(r1):
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        # r0 is now a nonzero constant gcd (t^8 - q is irreducible)
        lead = next(c for c in r0 if c)
        inv_coeffs = _poly_mod_reduce([c / lead for c in s0], self.field.q)
        return self.field.scalar({j: c for j, c in enumerate(inv_coeffs) if c})

    def __truediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, Scalar)
            and other.field.q == self.field.q
            and other._c == self._c
        )

    def __hash__(self):
        return hash((self.field.q, tuple(sorted(self._c.items()))))

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    # -- views -----------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        """Dense tuple (c0, ..., c7) of Fractions."""
        return tuple(self._c.get(j, Fraction(0)) for j in range(_DEG))

    def eval_real(self) -> float:
        """Numeric value at the positive root t = q^(1/8); diagnostics only."""
        t = self.field.q ** (1.0 / _DEG)
        return sum(float(c) * t**j for j, c in self._c.items())

    def to_strings(self) -> list:
        """8 exact 'num/den' strings, lowest terms, positive denominators."""
        out = []
        for c in self.coeffs:
            out.append(str(c.numerator) if c.denominator == 1 else str(c))
        return out

    def as_monomial(self):
        """(rational, t_exponent) with the rational prime to q, or None.

        Folds q-powers into the exponent so e.g. (1/q) * t^4 prints as v^-1.
        """
        if len(self._c) != 1:
            return None
        ((j, c),) = self._c.items()
        q = self.field.q
        num, den = c.numerator, c.denominator
        e = j
        while num % q == 0:
            num //= q
            e += _DEG
        while den % q == 0:
            den //= q
            e -= _DEG
        g = gcd(abs(num), den)
        return Fraction(num // g, den // g), e

    def __str__(self):
        if not self._c:
            return "0"
        mono = self.as_monomial()
        if mono is not None:
            return _format_monomial(*mono)
        parts = []
        for j in sorted(self._c):
            term = _format_monomial(self._c[j], j)
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return "(" + " ".join(parts) + ")"

    __repr__ = __str__


def _format_monomial(c: Fraction, e: int) -> str:
    if e == 0:
        base = ""
    elif e % 4 == 0:
        k = e // 4
        base = "v" if k == 1 else f"v^{k}"
    else:
        base = "t" if e == 1 else f"t^{e}"
    if not base:
        return str(c)
    if c == 1:
        return base
    if c == -1:
        return "-" + base
    return f"{c}*{base}"


# -- dense polynomial helpers over Q (used only by inverse) ---------------


def _poly_divmod(a, b):
    a = list(a)
    db = max(i for i, c in enumerate(b) if c)
    quo = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            f = a[i] / b[db]
            quo[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return quo, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]


def _poly_mod_reduce(a, q):
    out = [Fraction(0)] * _DEG
    for i, c in enumerate(a):
        k, r = divmod(i, _DEG)
        out[r] += c * Fraction(q) ** k
    return out


# -- scalar literal parsing (used by the CLI element parsers) --------------


def parse_scalar(field: ScalarField, text: str) -> Scalar:
    """Parse coefficient literals like '2*v^-1', '1/3', 't^5', '(1 + v)'."""
    tokens = _tokenize(text)
    value, pos = _parse_sum(field, tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing input in scalar literal {text!r}")
    return value


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()*+-":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "vtq":
            j = i + 1
            if j < len(text) and text[j] == "^":
                j += 1
                if j < len(text) and text[j] == "-":
                    j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r} in scalar literal")
    return tokens


def _parse_sum(field, tokens, pos):
    total = field.zero
    sign = 1
    expect_term = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == ")":
            break
        if tok in "+-":
            if expect_term and tok == "-":
                sign = -sign
            elif not expect_term:
                sign = 1 if tok == "+" else -1
                expect_term = True
            pos += 1
            continue
        term, pos = _parse_product(field, tokens, pos)
        total = total + (term if sign == 1 else -term)
        sign = 1
        expect_term = False
    return total, pos


def _parse_product(field, tokens, pos):
    value = field.one
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "(":
            inner, pos = _parse_sum(field, tokens, pos + 1)
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ParseError("unbalanced parenthesis in scalar literal")
            value = value * inner
            pos += 1
        elif tok[0].isdigit():
            try:
                value = value * field.from_rational(Fraction(tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational {tok!r}") from exc
            pos += 1
        elif tok[0] in "vtq":
            exp = 1
            if "^" in tok:
                base, _, e = tok.partition("^")
                try:
                    exp = int(e)
                except ValueError as exc:
                    raise ParseError(f"bad exponent in {tok!r}") from exc
            else:
                base = tok
            if base == "v":
                value = value * field.v_power(4 * exp)
            elif base == "t":
                value = value * field.v_power(exp)
            else:
                value = value * field.q_power(exp)
            pos += 1
        else:
            break
        if pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            continue
        break
    return value, pos
