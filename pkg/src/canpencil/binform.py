"""Binary forms: homogeneous polynomials in (t0, t1) over an exact field.

A form of degree d is stored as the coefficient tuple ``(c_0, ..., c_d)``
where ``c_i`` multiplies ``t0^(d-i) * t1^i``.  The identically-zero form is
a single shared shape with no degree: any API slot that demands "a form of
degree d" accepts it, because the geometric degree formulas routinely
prescribe negative degrees and thereby force coefficients to vanish.

Division, gcd and root finding work through the chart t1 = 1 with the
t1-multiplicity tracked separately, so nothing is lost at the point (1:0).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .fields import FieldSpec, Scalar


class BinFormError(ValueError):
    pass


def _require_same_field(a: "BinForm", b: "BinForm") -> None:
    if a.field != b.field:
        raise BinFormError(f"mixed coefficient fields: {a.field} vs {b.field}")


class BinForm:
    """Immutable homogeneous polynomial in (t0, t1)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable):
        normalized = tuple(field.normalize(c) for c in coeffs)
        if normalized and all(c == 0 for c in normalized):
            normalized = ()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", normalized)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("BinForm is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec) -> "BinForm":
        return BinForm(field, ())

    @staticmethod
    def constant(field: FieldSpec, c) -> "BinForm":
        return BinForm(field, (c,))

    @staticmethod
    def one(field: FieldSpec) -> "BinForm":
        return BinForm(field, (1,))

    @staticmethod
    def monomial(field: FieldSpec, degree: int, t1_exp: int, coeff=1) -> "BinForm":
        """coeff * t0^(degree - t1_exp) * t1^t1_exp."""
        if not 0 <= t1_exp <= degree:
            raise BinFormError(f"exponent {t1_exp} outside degree {degree}")
        coeffs = [0] * (degree + 1)
        coeffs[t1_exp] = coeff
        return BinForm(field, coeffs)

    @staticmethod
    def t0(field: FieldSpec) -> "BinForm":
        return BinForm.monomial(field, 1, 0)

    @staticmethod
    def t1(field: FieldSpec) -> "BinForm":
        return BinForm.monomial(field, 1, 1)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        """Homogeneity degree, or None for the zero form."""
        return None if self.is_zero else len(self.coeffs) - 1

    def coefficient(self, t1_exp: int) -> Scalar:
        if self.is_zero or not 0 <= t1_exp < len(self.coeffs):
            return self.field.zero
        return self.coeffs[t1_exp]

    @property
    def lead_coeff(self) -> Scalar:
        """Coefficient of the highest t0-power present; 0 for the zero form."""
        for c in self.coeffs:
            if c != 0:
                return c
        return self.field.zero

    def t1_multiplicity(self) -> int:
        """Largest e with t1^e dividing the form (0 for the zero form)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def t0_multiplicity(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0:
                return len(self.coeffs) - 1 - i
        return 0

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "BinForm") -> "BinForm":
        _require_same_field(self, other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise BinFormError(f"degree mismatch in sum: {self.degree} vs {other.degree}")
        add = self.field.add
        return BinForm(self.field, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinForm":
        neg = self.field.neg
        return BinForm(self.field, tuple(neg(c) for c in self.coeffs))

    def __sub__(self, other: "BinForm") -> "BinForm":
        return self + (-other)

    def __mul__(self, other: "BinForm") -> "BinForm":
        _require_same_field(self, other)
        if self.is_zero or other.is_zero:
            return BinForm.zero(self.field)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return BinForm(f, out)

    def scale(self, c) -> "BinForm":
        c = self.field.normalize(c)
        if c == 0:
            return BinForm.zero(self.field)
        mul = self.field.mul
        return BinForm(self.field, tuple(mul(c, a) for a in self.coeffs))

    def __pow__(self, n: int) -> "BinForm":
        if n < 0:
            raise BinFormError("negative power")
        result = BinForm.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "BinForm":
        if self.is_zero:
            raise BinFormError("zero form has no monic normalization")
        return self.scale(self.field.inv(self.lead_coeff))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def proportional_to(self, other: "BinForm") -> bool:
        """True when the forms differ by a nonzero scalar."""
        _require_same_field(self, other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.degree != other.degree:
            return False
        return self.monic() == other.monic()

    # -- evaluation and calculus ------------------------------------------

    def evaluate(self, a, b) -> Scalar:
        """Value at (t0, t1) = (a, b)."""
        f = self.field
        a, b = f.normalize(a), f.normalize(b)
        if self.is_zero:
            return f.zero
        d = len(self.coeffs) - 1
        pa = [f.one]
        for _ in range(d):
            pa.append(f.mul(pa[-1], a))
        pb = [f.one]
        for _ in range(d):
            pb.append(f.mul(pb[-1], b))
        acc = f.zero
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = f.add(acc, f.mul(c, f.mul(pa[d - i], pb[i])))
        return acc

    def deriv_t0(self) -> "BinForm":
        """Formal partial derivative with respect to t0."""
        if self.is_zero or self.degree == 0:
            return BinForm.zero(self.field)
        d = self.degree
        f = self.field
        return BinForm(f, tuple(f.mul(f.normalize(d - i), self.coeffs[i]) for i in range(d)))

    def deriv_t1(self) -> "BinForm":
        if self.is_zero or self.degree == 0:
            return BinForm.zero(self.field)
        f = self.field
        return BinForm(f, tuple(f.mul(f.normalize(i), self.coeffs[i]) for i in range(1, len(self.coeffs))))

    # -- chart t1 = 1 ------------------------------------------------------

    def dehomogenize(self) -> list:
        """Coefficients of f(x, 1) ascending in x; exact length deg+1."""
        return [self.coeffs[len(self.coeffs) - 1 - j] for j in range(len(self.coeffs))]

    @staticmethod
    def homogenize(field: FieldSpec, poly: list, t1_shift: int = 0) -> "BinForm":
        """Inverse of :meth:`dehomogenize`, times an extra t1^t1_shift."""
        while poly and poly[-1] == 0:
            poly = poly[:-1]
        if not poly:
            return BinForm.zero(field)
        d = len(poly) - 1
        coeffs = [poly[d - i] for i in range(d + 1)]
        return BinForm(field, [field.zero] * t1_shift + coeffs)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return format_binform(self)

    def __repr__(self) -> str:
        return f"BinForm({self.field}, {format_binform(self)!r})"


# ---------------------------------------------------------------------------
# univariate helpers on dense ascending coefficient lists
# ---------------------------------------------------------------------------


def _upoly_trim(u: list) -> list:
    while u and u[-1] == 0:
        u.pop()
    return u


def _upoly_divmod(u: list, v: list, f: FieldSpec):
    v = _upoly_trim(list(v))
    if not v:
        raise ZeroDivisionError("division by zero polynomial")
    u = _upoly_trim(list(u))
    q = [f.zero] * max(0, len(u) - len(v) + 1)
    inv_lead = f.inv(v[-1])
    for k in range(len(u) - len(v), -1, -1):
        c = f.mul(u[k + len(v) - 1], inv_lead)
        if c == 0:
            continue
        q[k] = c
        for j, vj in enumerate(v):
            u[k + j] = f.sub(u[k + j], f.mul(c, vj))
    return q, _upoly_trim(u)


def _upoly_gcd(u: list, v: list, f: FieldSpec) -> list:
    u, v = _upoly_trim(list(u)), _upoly_trim(list(v))
    while v:
        _, r = _upoly_divmod(u, v, f)
        u, v = v, r
    if u:
        inv = f.inv(u[-1])
        u = [f.mul(inv, c) for c in u]
    return u


# ---------------------------------------------------------------------------
# gcd / exact division / roots
# ---------------------------------------------------------------------------


def gcd(a: BinForm, b: BinForm) -> BinForm:
    """Monic greatest common divisor; leading coefficient normalized to 1.

    Raises when both inputs are zero.
    """
    _require_same_field(a, b)
    if a.is_zero and b.is_zero:
        raise BinFormError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    f = a.field
    e = min(a.t1_multiplicity(), b.t1_multiplicity())
    g = _upoly_gcd(a.dehomogenize(), b.dehomogenize(), f)
    return BinForm.homogenize(f, g, t1_shift=e)


def divides(divisor: BinForm, dividend: BinForm) -> bool:
    """True when `divisor` divides `dividend` exactly."""
    if divisor.is_zero:
        return dividend.is_zero
    if dividend.is_zero:
        return True
    if divisor.t1_multiplicity() > dividend.t1_multiplicity():
        return False
    _, r = _upoly_divmod(dividend.dehomogenize(), divisor.dehomogenize(), dividend.field)
    return not r


def divexact(a: BinForm, b: BinForm) -> BinForm:
    """Exact quotient a / b; raises when the division leaves a remainder."""
    _require_same_field(a, b)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if a.is_zero:
        return a
    shift = a.t1_multiplicity() - b.t1_multiplicity()
    if shift < 0:
        raise BinFormError("inexact division (t1 multiplicity)")
    q, r = _upoly_divmod(a.dehomogenize(), b.dehomogenize(), a.field)
    if r:
        raise BinFormError("inexact division")
    return BinForm.homogenize(a.field, q, t1_shift=shift)


def lcm(a: BinForm, b: BinForm) -> BinForm:
    if a.is_zero or b.is_zero:
        return BinForm.zero(a.field)
    return divexact(a * b, gcd(a, b)).monic()


def roots(form: BinForm) -> dict:
    """All roots of a nonzero form in P^1(F_p), with multiplicities.

    Points are canonical pairs ``(a, 1)`` or ``(1, 0)``.  Rational-root
    finding over QQ is out of scope and rejected.
    """
    if not form.field.is_prime_field:
        raise BinFormError("root finding requires a prime field")
    if form.is_zero:
        raise BinFormError("zero form has every point as a root")
    p = form.field.p
    f = form.field
    out = {}
    inf_mult = form.t1_multiplicity()
    if inf_mult:
        out[(1, 0)] = inf_mult
    u = _upoly_trim(form.dehomogenize())
    for a in range(p):
        # Horner
        acc = 0
        for c in reversed(u):
            acc = (acc * a + c) % p
        if acc == 0:
            mult = 0
            w = u
            while True:
                q, r = _upoly_divmod(w, [(-a) % p, 1], f)
                if r:
                    break
                mult += 1
                w = q
            out[(a, 1)] = mult
    return out


def _distinct_upoly_roots(u: list, f: FieldSpec) -> int:
    """Distinct roots of a univariate polynomial in the algebraic closure."""
    if len(u) <= 1:
        return 0
    du = _upoly_trim([f.mul(f.normalize(i), u[i]) for i in range(1, len(u))])
    if not du:
        # u' = 0 in characteristic p: u = v(x^p), and over the prime field
        # Frobenius fixes scalars, so v has the same coefficients
        p = f.p
        v = [u[j] for j in range(0, len(u), p)]
        return _distinct_upoly_roots(v, f)
    g = _upoly_gcd(u, du, f)
    return (len(u) - 1) - (len(g) - 1)


def count_distinct_roots(form: BinForm) -> int:
    """Number of distinct roots in P^1 over the algebraic closure.

    Computed as the degree of the squarefree part, so it is available over
    the rationals as well; no factorization is performed.
    """
    if form.is_zero:
        raise BinFormError("zero form")
    if form.degree == 0:
        return 0
    e = form.t1_multiplicity()
    u = _upoly_trim(form.dehomogenize())
    distinct_finite = _distinct_upoly_roots(u, form.field)
    return distinct_finite + (1 if e > 0 else 0)


def random_binform(field: FieldSpec, degree: int, rng) -> BinForm:
    """Uniform coefficients over F_p; bounded integers in [-9, 9] over QQ.

    A negative requested degree yields the zero form, matching the
    forced-zero convention of the degree tables.
    """
    if degree < 0:
        return BinForm.zero(field)
    return BinForm(field, [field.random_element(rng) for _ in range(degree + 1)])


def random_split_squarefree(field: FieldSpec, degree: int, rng) -> BinForm:
    """Product of `degree` distinct monic linear forms t0 - c*t1 (prime field)."""
    if not field.is_prime_field:
        raise BinFormError("split-squarefree construction needs a prime field")
    if degree > field.p:
        raise BinFormError("not enough distinct roots available")
    cs = rng.sample(range(field.p), degree)
    out = BinForm.one(field)
    for c in cs:
        out = out * BinForm(field, (1, -c))
    return out


# ---------------------------------------------------------------------------
# parsing / printing of the literal grammar
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    """Syntax or homogeneity error; `offset` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if text.startswith("t0", i) or text.startswith("t1", i):
            tokens.append(("var", text[i : i + 2], i))
            i += 2
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            raise ParseError(f"unknown variable {text[i:j]!r} (expected t0 or t1)", i)
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_binform(text: str, field: FieldSpec) -> BinForm:
    """Parse the literal grammar: signed ints or a/b rationals, t0, t1, + - * ^.

    Example: ``"3*t0^2*t1 - 1/2*t1^3"``.  All terms must share one total
    degree once zero-coefficient terms are dropped.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial literal", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def advance():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_factor():
        kind, value, off = peek()
        if kind == "int":
            advance()
            num = int(value)
            if peek()[0] == "/":
                advance()
                k2, v2, o2 = peek()
                if k2 != "int":
                    raise ParseError("expected denominator after '/'", o2)
                advance()
                if int(v2) == 0:
                    raise ParseError("zero denominator", o2)
                return ("coeff", Fraction(num, int(v2)), off)
            return ("coeff", Fraction(num), off)
        if kind == "var":
            advance()
            exp = 1
            if peek()[0] == "^":
                advance()
                k2, v2, o2 = peek()
                if k2 != "int":
                    raise ParseError("expected integer exponent after '^'", o2)
                advance()
                exp = int(v2)
            return (value, exp, off)
        raise ParseError("expected coefficient or variable", off)

    terms = []  # (coeff Fraction, e0, e1, offset)
    while True:
        sign = 1
        kind, value, off = peek()
        term_off = off
        if kind in ("+", "-"):
            advance()
            sign = -1 if kind == "-" else 1
        coeff = Fraction(sign)
        e0 = e1 = 0
        while True:
            what, val, foff = parse_factor()
            if what == "coeff":
                coeff *= val
            elif what == "t0":
                e0 += val
            else:
                e1 += val
            if peek()[0] == "*":
                advance()
                continue
            break
        terms.append((coeff, e0, e1, term_off))
        kind, _, off = peek()
        if kind is None:
            break
        if kind not in ("+", "-"):
            raise ParseError("expected '+' or '-' between terms", off)

    try:
        live = [(field.normalize(c), e0, e1, off) for (c, e0, e1, off) in terms]
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), terms[0][3]) from None
    live = [t for t in live if t[0] != 0]
    if not live:
        return BinForm.zero(field)
    degree = live[0][1] + live[0][2]
    for c, e0, e1, off in live:
        if e0 + e1 != degree:
            raise ParseError(
                f"inhomogeneous literal: term of degree {e0 + e1} in a degree-{degree} form", off
            )
    coeffs = [field.zero] * (degree + 1)
    for c, e0, e1, _ in live:
        coeffs[e1] = field.add(coeffs[e1], c)
    return BinForm(field, coeffs)


def format_binform(form: BinForm) -> str:
    """Canonical printer; output re-parses to an equal form."""
    if form.is_zero:
        return "0"
    d = form.degree
    pieces = []
    for i, c in enumerate(form.coeffs):
        if c == 0:
            continue
        e0, e1 = d - i, i
        mono_parts = []
        if e0:
            mono_parts.append("t0" if e0 == 1 else f"t0^{e0}")
        if e1:
            mono_parts.append("t1" if e1 == 1 else f"t1^{e1}")
        mono = "*".join(mono_parts)
        if isinstance(c, Fraction):
            negative = c < 0
            mag = -c if negative else c
        else:
            negative = False
            mag = c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
