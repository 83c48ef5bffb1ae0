"""Text input for algebra and module elements.

Grammar (whitespace insensitive):

    lie     := ['-'] lterm (('+'|'-') lterm)*
    lterm   := [coeff '*'] gen
    vec     := ['-'] vterm (('+'|'-') vterm)*
    vterm   := [coeff '*'] factor* 'w'
    factor  := gen ['^' uint]
    gen     := 'd1' '(' int ',' int ')' | 'd2' '(' int ',' int ')' | 'z' | 'h2'
    coeff   := rational | '(' spoly ')'
    spoly   := ['-'] smon (('+'|'-') smon)*
    smon    := rational ['*' svars] | svars
    svars   := svar ('*' svar)*
    svar    := ('s1'|'s2'|'s3') ['^' uint]
    rational:= uint ['/' uint]

Vector factors are applied to w rightmost first, through the module
action, so positive factors in the input are legal and evaluate through
the type homomorphism.  Formatting is handled by the classes' __str__;
this module owns parsing and raises ParseError with the offending offset
and the expected-token set.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ONE, PsiSpec, SYMBOLIC, Scalar
from .liecore import LieElt, d
from .wmod import ModuleVector, act_word, w_vector


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, expected=()):
        super().__init__(message)
        self.pos = pos
        self.expected = tuple(expected)


_PUNCT = "+-*/^(),"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r at offset %d" % (ch, i), i, ("token",))
    tokens.append(("END", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        if tok[0] != "END":
            self.idx += 1
        return tok

    def fail(self, expected):
        kind, _, pos = self.peek()
        raise ParseError(
            "expected %s at offset %d" % (" or ".join(expected), pos),
            pos,
            expected,
        )

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail((kind,))
        return self.advance()

    def at(self, kind) -> bool:
        return self.peek()[0] == kind

    def take(self, kind) -> bool:
        if self.at(kind):
            self.advance()
            return True
        return False

    def parse_int(self) -> int:
        sign = 1
        if self.take("-"):
            sign = -1
        value = self.expect("INT")[1]
        return sign * value

    def parse_uint(self) -> int:
        return self.expect("INT")[1]

    def parse_rational(self) -> Fraction:
        num = self.parse_uint()
        if self.take("/"):
            den = self.parse_uint()
            if den == 0:
                self.fail(("nonzero denominator",))
            return Fraction(num, den)
        return Fraction(num)

    def parse_svar(self) -> Scalar:
        kind, name, pos = self.peek()
        if kind != "NAME" or name not in ("s1", "s2", "s3"):
            self.fail(("s1", "s2", "s3"))
        self.advance()
        base = Scalar.generator(int(name[1]))
        if self.take("^"):
            return base ** self.parse_uint()
        return base

    def parse_smon(self) -> Scalar:
        if self.at("INT"):
            coeff = Scalar.rational(self.parse_rational())
            while self.take("*"):
                coeff = coeff * self.parse_svar()
            return coeff
        mono = self.parse_svar()
        while self.take("*"):
            mono = mono * self.parse_svar()
        return mono

    def parse_spoly(self) -> Scalar:
        negate = self.take("-")
        total = self.parse_smon()
        if negate:
            total = -total
        while True:
            if self.take("+"):
                total = total + self.parse_smon()
            elif self.take("-"):
                total = total - self.parse_smon()
            else:
                return total

    def parse_coeff(self) -> Scalar:
        """A rational, a bare monomial in s1..s3, or a parenthesized scalar
        polynomial, followed by '*'."""
        if self.at("INT"):
            value = Scalar.rational(self.parse_rational())
        elif self.at("("):
            self.advance()
            value = self.parse_spoly()
            self.expect(")")
        else:
            # s-variable product; '*' both chains variables and ends the
            # coefficient, so peek past it before consuming
            value = self.parse_svar()
            while self.at("*") and self.tokens[self.idx + 1][0] == "NAME" \
                    and self.tokens[self.idx + 1][1] in ("s1", "s2", "s3"):
                self.advance()
                value = value * self.parse_svar()
        self.expect("*")
        return value

    def parse_generator(self):
        kind, name, pos = self.peek()
        if kind != "NAME":
            self.fail(("d1", "d2", "z", "h2"))
        if name == "z":
            self.advance()
            return (1, (0, 0))
        if name == "h2":
            self.advance()
            return (2, (0, 0))
        if name in ("d1", "d2"):
            self.advance()
            self.expect("(")
            a = self.parse_int()
            self.expect(",")
            b = self.parse_int()
            self.expect(")")
            return (int(name[1]), (a, b))
        self.fail(("d1", "d2", "z", "h2"))

    def at_generator(self) -> bool:
        kind, name, _ = self.peek()
        return kind == "NAME" and name in ("d1", "d2", "z", "h2")

    def at_svar(self) -> bool:
        kind, name, _ = self.peek()
        return kind == "NAME" and name in ("s1", "s2", "s3")

    def at_coeff(self) -> bool:
        return self.at("INT") or self.at("(") or self.at_svar()

    def parse_lterm(self) -> LieElt:
        coeff = self.parse_coeff() if self.at_coeff() else ONE
        i, alpha = self.parse_generator()
        return d(i, alpha, coeff)

    def parse_lie(self) -> LieElt:
        negate = self.take("-")
        total = self.parse_lterm()
        if negate:
            total = -total
        while True:
            if self.take("+"):
                total = total + self.parse_lterm()
            elif self.take("-"):
                total = total - self.parse_lterm()
            else:
                return total

    def parse_vterm(self, psi: PsiSpec) -> ModuleVector:
        coeff = self.parse_coeff() if self.at_coeff() else ONE
        word = []
        while self.at_generator():
            i, alpha = self.parse_generator()
            power = 1
            if self.take("^"):
                power = self.parse_uint()
            word.extend([(i, alpha)] * power)
        kind, name, _ = self.peek()
        if kind != "NAME" or name != "w":
            self.fail(("w",) if word or coeff != ONE else ("d1", "d2", "z", "h2", "w"))
        self.advance()
        return coeff * act_word(word, w_vector(), psi)

    def parse_vector(self, psi: PsiSpec) -> ModuleVector:
        negate = self.take("-")
        total = self.parse_vterm(psi)
        if negate:
            total = -total
        while True:
            if self.take("+"):
                total = total + self.parse_vterm(psi)
            elif self.take("-"):
                total = total - self.parse_vterm(psi)
            else:
                return total

    def finish(self):
        if not self.at("END"):
            self.fail(("end of input",))


def parse_lie(text: str) -> LieElt:
    p = _Parser(text)
    elt = p.parse_lie()
    p.finish()
    return elt


def parse_vector(text: str, psi: PsiSpec = SYMBOLIC) -> ModuleVector:
    p = _Parser(text)
    vec = p.parse_vector(psi)
    p.finish()
    return vec


def parse_scalar(text: str) -> Scalar:
    p = _Parser(text)
    value = p.parse_spoly()
    p.finish()
    return value


def parse_psi(text: str) -> PsiSpec:
    """Either the word 'symbolic' or three comma-separated nonzero rationals."""
    text = text.strip()
    if text == "symbolic":
        return SYMBOLIC
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("expected 'symbolic' or three comma-separated rationals", 0,
                         ("symbolic", "p1,p2,p3"))
    try:
        values = [Fraction(part.strip()) for part in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("bad rational in type values: %s" % exc, 0, ("rational",)) from None
    return PsiSpec(values)
