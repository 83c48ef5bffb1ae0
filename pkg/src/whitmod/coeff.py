"""Exact coefficient arithmetic.

A Scalar is an element of Q[s1, s2, s3]: a sparse polynomial with Fraction
coefficients in the three generator values that determine a type
homomorphism.  Plain rationals are the constant polynomials.  ZPoly is a
univariate polynomial in z whose coefficients are Scalars.  Everything here
is immutable, hashable and exact; nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction


class SingularPsi(ValueError):
    """Raised when a specialized type value is zero; the type must be nonsingular."""


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("expected an int or Fraction, got %r" % (value,))


class Scalar:
    """Sparse polynomial in s1, s2, s3 over Q.

    Internally a dict mapping exponent triples (e1, e2, e3) to nonzero
    Fractions.  The representation is canonical: zero coefficients are never
    stored, so == and hash are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                e = (int(exps[0]), int(exps[1]), int(exps[2]))
                if min(e) < 0:
                    raise ValueError("negative exponent in scalar monomial: %r" % (e,))
                c = _coerce(coeff)
                if c:
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if not clean[e]:
                        del clean[e]
        object.__setattr__(self, "_terms", clean)

    @staticmethod
    def rational(p, q=1) -> "Scalar":
        return Scalar({(0, 0, 0): Fraction(p, q)})

    @staticmethod
    def generator(j: int) -> "Scalar":
        """The indeterminate s_j, j in {1, 2, 3}."""
        if j not in (1, 2, 3):
            raise ValueError("generator index must be 1, 2 or 3")
        e = [0, 0, 0]
        e[j - 1] = 1
        return Scalar({tuple(e): Fraction(1)})

    def terms(self):
        """Monomials as (exponent-triple, Fraction), highest triple first."""
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0, 0)}

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("scalar %s is not a plain rational" % self)
        return self._terms[(0, 0, 0)]

    def __add__(self, other):
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for e, c in other._terms.items():
            s = merged.get(e, Fraction(0)) + c
            if s:
                merged[e] = s
            elif e in merged:
                del merged[e]
        return _raw(merged)

    __radd__ = __add__

    def __neg__(self):
        return _raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        # constants are by far the most common case in specialized runs
        if len(a) == 1 and (0, 0, 0) in a:
            ca = a[(0, 0, 0)]
            return _raw({e: ca * c for e, c in b.items()})
        if len(b) == 1 and (0, 0, 0) in b:
            cb = b[(0, 0, 0)]
            return _raw({e: c * cb for e, c in a.items()})
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative scalar powers are not defined")
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def specialize(self, spec: "PsiSpec") -> "Scalar":
        """Substitute the spec's rational values for s1, s2, s3.

        Requires a specialized spec; substitution into symbolic mode is a
        no-op conceptually but almost always a caller bug, so it raises.
        """
        if spec.is_symbolic():
            raise ValueError("cannot specialize with a symbolic type spec")
        p1, p2, p3 = spec.values
        total = Fraction(0)
        for (e1, e2, e3), c in self._terms.items():
            total += c * p1**e1 * p2**e2 * p3**e3
        return Scalar.rational(total)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.terms():
            names = []
            for name, e in zip(("s1", "s2", "s3"), exps):
                if e == 1:
                    names.append(name)
                elif e > 1:
                    names.append("%s^%d" % (name, e))
            if not names:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(names)
            elif coeff == -1:
                body = "-" + "*".join(names)
            else:
                body = str(coeff) + "*" + "*".join(names)
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return "Scalar(%s)" % self

    def to_json(self) -> dict:
        return {
            "monomials": [
                {"e": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.terms()
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "Scalar":
        terms = {}
        for mono in data["monomials"]:
            e = tuple(int(x) for x in mono["e"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(int(mono["num"]), int(mono["den"]))
        return Scalar(terms)


def _raw(terms: dict) -> Scalar:
    """Build a Scalar from an already-clean dict without revalidation."""
    s = Scalar()
    object.__setattr__(s, "_terms", terms)
    return s


def _try_scalar(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar.rational(value)
    return None


def as_scalar(value) -> Scalar:
    s = _try_scalar(value)
    if s is None:
        raise TypeError("cannot interpret %r as a scalar" % (value,))
    return s


ZERO = Scalar()
ONE = Scalar.rational(1)
MINUS_ONE = Scalar.rational(-1)
S1 = Scalar.generator(1)
S2 = Scalar.generator(2)
S3 = Scalar.generator(3)


def attach_coefficient(coeff: Scalar, body: str, sep: str = "*") -> str:
    """Render coeff*body so the standard grammar can read it back.

    Coefficients of 1 and -1 vanish into the sign, rationals and monic
    monomials print bare, anything else gets parentheses.
    """
    if coeff == ONE:
        return body
    if coeff == MINUS_ONE:
        return "-" + body
    if coeff.is_rational():
        return str(coeff.as_fraction()) + sep + body
    terms = coeff.terms()
    if len(terms) == 1:
        frac = terms[0][1]
        if frac == 1:
            return str(coeff) + sep + body
        if frac == -1:
            return "-" + str(-coeff) + sep + body
    return "(" + str(coeff) + ")" + sep + body


class PsiSpec:
    """Choice of the three type generator values.

    Symbolic mode keeps s1, s2, s3 as indeterminates (never inverted, never
    compared to zero).  Specialized mode pins them to concrete nonzero
    rationals; zero values are rejected because the whole construction
    assumes a nonsingular type.
    """

    __slots__ = ("values",)

    def __init__(self, values=None):
        if values is not None:
            values = tuple(Fraction(v) for v in values)
            if len(values) != 3:
                raise ValueError("a specialized type needs exactly three values")
            if any(v == 0 for v in values):
                raise SingularPsi("type values must all be nonzero, got %s" % (values,))
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("PsiSpec is immutable")

    @staticmethod
    def symbolic() -> "PsiSpec":
        return SYMBOLIC

    @staticmethod
    def of(p1, p2, p3) -> "PsiSpec":
        return PsiSpec((p1, p2, p3))

    def is_symbolic(self) -> bool:
        return self.values is None

    def generator_value(self, j: int) -> Scalar:
        """s_j as a Scalar: the indeterminate in symbolic mode, else the pinned rational."""
        if self.values is None:
            return Scalar.generator(j)
        return Scalar.rational(self.values[j - 1])

    def __eq__(self, other):
        if not isinstance(other, PsiSpec):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(("PsiSpec", self.values))

    def __str__(self):
        if self.values is None:
            return "symbolic"
        return ",".join(str(v) for v in self.values)

    def __repr__(self):
        return "PsiSpec(%s)" % self


SYMBOLIC = PsiSpec()


class ZPoly:
    """Polynomial in z with Scalar coefficients, dense and trailing-zero free.

    The zero polynomial has degree None; that keeps degree comparisons
    honest instead of smuggling in a fake -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    @staticmethod
    def constant(c) -> "ZPoly":
        return ZPoly([as_scalar(c)])

    @staticmethod
    def z() -> "ZPoly":
        return ZPoly([ZERO, ONE])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1 if self._coeffs else None

    def __bool__(self):
        return bool(self._coeffs)

    def coeff(self, r: int) -> Scalar:
        if 0 <= r < len(self._coeffs):
            return self._coeffs[r]
        return ZERO

    def leading(self) -> Scalar:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly.constant(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return ZPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = as_scalar(other)
            return ZPoly([c * s for c in self._coeffs])
        out = [ZERO] * (len(self._coeffs) + len(other._coeffs))
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = ZPoly.constant(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def evaluate(self, point) -> Scalar:
        point = as_scalar(point)
        total = ZERO
        for c in reversed(self._coeffs):
            total = total * point + c
        return total

    def specialize(self, spec: "PsiSpec") -> "ZPoly":
        """Substitute the type values of spec into every coefficient."""
        return ZPoly([c.specialize(spec) for c in self._coeffs])

    def monic(self) -> "ZPoly":
        """Divide by the leading coefficient, which must be a nonzero rational."""
        lead = self.leading().as_fraction()
        return self * Scalar.rational(Fraction(1) / lead)

    def divmod_by(self, other: "ZPoly"):
        """Exact polynomial division for rational-coefficient polynomials."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.leading().as_fraction()
        rem = list(self._coeffs)
        dq = len(rem) - len(other._coeffs)
        if dq < 0:
            return ZPoly(), self
        quot = [ZERO] * (dq + 1)
        for i in range(dq, -1, -1):
            top = rem[i + len(other._coeffs) - 1]
            factor = Scalar.rational(top.as_fraction() / lead)
            quot[i] = factor
            if factor:
                for j, b in enumerate(other._coeffs):
                    rem[i + j] = rem[i + j] - factor * b
        return ZPoly(quot), ZPoly(rem)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for r in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[r]
            if not c:
                continue
            if r == 0:
                zpart = ""
            elif r == 1:
                zpart = "z"
            else:
                zpart = "z^%d" % r
            if c.is_rational():
                f = c.as_fraction()
                if not zpart:
                    body = str(f)
                elif f == 1:
                    body = zpart
                elif f == -1:
                    body = "-" + zpart
                else:
                    body = "%s*%s" % (f, zpart)
            else:
                body = "(%s)" % c
                if zpart:
                    body += "*" + zpart
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return "ZPoly(%s)" % self

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self._coeffs]}

    @staticmethod
    def from_json(data: dict) -> "ZPoly":
        return ZPoly([Scalar.from_json(c) for c in data["coeffs"]])


def poly_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Monic gcd in Q[z]; both arguments need rational coefficients."""
    while b:
        _, r = a.divmod_by(b)
        a, b = b, r
    if not a:
        return a
    return a.monic()
