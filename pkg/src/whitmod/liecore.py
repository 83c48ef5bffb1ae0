"""The derivation algebra of the Laurent torus in n variables.

Basis elements d_i(alpha) for 1 <= i <= n and alpha in Z^n, with

    [d_i(alpha), d_j(beta)] = beta_i d_j(alpha+beta) - alpha_j d_i(alpha+beta).

Weights are plain int tuples ordered lexicographically, which is exactly
Python's tuple comparison.  A weight is positive when it is lex-greater
than the origin, so (1, -7) counts as positive; the triangular pieces of
the algebra are cut out by that sign.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ONE, PsiSpec, SYMBOLIC, Scalar, ZERO, as_scalar, attach_coefficient


class NotPositive(ValueError):
    """An element expected to lie in the positive part has other weights too."""


class OutOfRange(ValueError):
    """A generator index or weight is outside its legal range."""


Weight = tuple


def weight_cmp(a: Weight, b: Weight) -> int:
    """-1, 0 or 1 as a is lex-smaller, equal or lex-greater than b."""
    if len(a) != len(b):
        raise ValueError("weights of unequal rank: %r vs %r" % (a, b))
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def zero_weight(n: int) -> Weight:
    return (0,) * n

def unit_weight(i: int, n: int) -> Weight:
    """The standard basis weight e_i (1-based index)."""
    if not 1 <= i <= n:
        raise OutOfRange("index %d outside 1..%d" % (i, n))
    return tuple(1 if j == i - 1 else 0 for j in range(n))

def weight_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))

def weight_neg(a: Weight) -> Weight:
    return tuple(-x for x in a)

def is_positive(a: Weight) -> bool:
    return a > zero_weight(len(a))


def triangular_part(a: Weight) -> str:
    """Which triangular piece the weight selects: 'positive', 'zero' or 'negative'."""
    zero = zero_weight(len(a))
    if a > zero:
        return "positive"
    if a < zero:
        return "negative"
    return "zero"


class LieElt:
    """Finite Scalar-linear combination of the basis derivations.

    Terms are keyed by (i, alpha).  The rank n is fixed per element;
    mixing ranks in arithmetic is an error.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 2:
            raise OutOfRange("rank must be at least 2, got %d" % n)
        clean = {}
        if terms:
            for (i, alpha), coeff in terms.items():
                alpha = tuple(int(x) for x in alpha)
                if len(alpha) != n:
                    raise OutOfRange("weight %r has rank != %d" % (alpha, n))
                if not 1 <= i <= n:
                    raise OutOfRange("index %d outside 1..%d" % (i, n))
                c = as_scalar(coeff)
                if c:
                    key = (i, alpha)
                    tot = clean.get(key, ZERO) + c
                    if tot:
                        clean[key] = tot
                    elif key in clean:
                        del clean[key]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)

    def terms(self):
        """(i, alpha, coeff) triples sorted by weight then index."""
        return [
            (i, alpha, self._terms[(i, alpha)])
            for (i, alpha) in sorted(self._terms, key=lambda key: (key[1], key[0]))
        ]

    def __bool__(self):
        return bool(self._terms)

    def weights(self):
        return sorted({alpha for (_, alpha) in self._terms})

    def __add__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("cannot add elements of different rank")
        merged = dict(self._terms)
        for key, c in other._terms.items():
            tot = merged.get(key, ZERO) + c
            if tot:
                merged[key] = tot
            elif key in merged:
                del merged[key]
        return _raw_elt(self.n, merged)

    def __neg__(self):
        return _raw_elt(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        s = as_scalar(other)
        if not s:
            return LieElt(self.n)
        return _raw_elt(self.n, {k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def bracket(self, other: "LieElt") -> "LieElt":
        return bracket(self, other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, alpha, coeff in self.terms():
            parts.append(attach_coefficient(coeff, format_generator(i, alpha)))
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return "LieElt(%s)" % self

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "alpha": list(alpha), "coeff": coeff.to_json()}
                for i, alpha, coeff in self.terms()
            ]
        }

    @staticmethod
    def from_json(data: dict, n: int = 2) -> "LieElt":
        terms = {}
        for t in data["terms"]:
            key = (int(t["i"]), tuple(int(x) for x in t["alpha"]))
            terms[key] = terms.get(key, ZERO) + Scalar.from_json(t["coeff"])
        ranks = {len(alpha) for (_, alpha) in terms} or {n}
        if len(ranks) > 1:
            raise ValueError("mixed weight ranks in element")
        return LieElt(ranks.pop(), terms)


def _raw_elt(n: int, terms: dict) -> LieElt:
    e = LieElt(n)
    object.__setattr__(e, "_terms", terms)
    return e


def format_generator(i: int, alpha: Weight) -> str:
    if all(x == 0 for x in alpha):
        return "z" if i == 1 else ("h2" if i == 2 else "h%d" % i)
    return "d%d(%s)" % (i, ",".join(str(x) for x in alpha))


def d(i: int, alpha, coeff=1) -> LieElt:
    """The basis derivation d_i(alpha), optionally scaled."""
    alpha = tuple(int(x) for x in alpha)
    return LieElt(len(alpha), {(i, alpha): as_scalar(coeff)})


def bracket(x: LieElt, y: LieElt) -> LieElt:
    """Bilinear extension of [d_i(a), d_j(b)] = b_i d_j(a+b) - a_j d_i(a+b)."""
    if x.n != y.n:
        raise ValueError("cannot bracket elements of different rank")
    out = {}
    for i, a, ca in x.terms():
        for j, b, cb in y.terms():
            c = ca * cb
            s = weight_add(a, b)
            for idx, scale in ((j, b[i - 1]), (i, -a[j - 1])):
                if scale:
                    key = (idx, s)
                    tot = out.get(key, ZERO) + c * scale
                    if tot:
                        out[key] = tot
                    elif key in out:
                        del out[key]
    return _raw_elt(x.n, out)


def psi_eval(x: LieElt, psi: PsiSpec = SYMBOLIC) -> Scalar:
    """Value of the type homomorphism on an element of the positive part.

    Determined by its values on weight (0,1) and (0,2) generators: d_1(0,1)
    and d_2(0,1) give the first two generator values, d_2(0,2) the third,
    d_1(0,2) gives 0, and every weight lex-above (0,2) gives 0.  Only rank
    two is supported because the scalar ring has exactly three generators.
    """
    if x.n != 2:
        raise ValueError("the type homomorphism is only defined for rank 2")
    total = ZERO
    for i, alpha, coeff in x.terms():
        if not is_positive(alpha):
            raise NotPositive("weight %r is not positive" % (alpha,))
        total = total + coeff * _generator_psi(i, alpha, psi)
    return total


def _generator_psi(i: int, alpha: Weight, psi: PsiSpec) -> Scalar:
    if alpha == (0, 1):
        return psi.generator_value(1 if i == 1 else 2)
    if alpha == (0, 2) and i == 2:
        return psi.generator_value(3)
    return ZERO


def bracket_decomposition(i: int, alpha, corrected: bool = True):
    """Express a positive-part generator through brackets of lower terms.

    Returns a list of (scalar, x, y) with d_i(alpha) equal to the sum of
    scalar * [x, y], valid whenever alpha is positive and strictly above
    the base weights (0,...,0,1) and, for i == n, (0,...,0,2).  Every x, y
    is a single positive generator of strictly smaller weight.

    With corrected=False the i == n, alpha_n > 2 case uses the same
    two-term combination as i != n; that combination sums to twice
    d_n(alpha), and is kept only so the discrepancy stays observable.
    """
    alpha = tuple(int(x) for x in alpha)
    n = len(alpha)
    if not 1 <= i <= n:
        raise OutOfRange("index %d outside 1..%d" % (i, n))
    if not is_positive(alpha):
        raise OutOfRange("weight %r is not positive" % (alpha,))
    en = unit_weight(n, n)
    base = {(j, en) for j in range(1, n + 1)}
    if (i, alpha) in base or (i == n and alpha == weight_add(en, en)):
        raise OutOfRange("d_%d(%r) is a base generator, nothing to decompose" % (i, alpha))

    a_n = alpha[n - 1]
    prev = tuple(alpha[:-1]) + (a_n - 1,)
    if a_n > 2:
        if i == n and corrected:
            scale = Scalar.rational(1, a_n - 2)
            return [(scale, d(n, en), d(n, prev))]
        out = []
        if alpha[i - 1]:
            out.append((Scalar.rational(alpha[i - 1], a_n - 2), d(n, en), d(n, prev)))
        out.append((Scalar.rational(-1), d(i, en), d(n, prev)))
        return out

    if alpha == weight_add(en, en):
        # d_i(2 e_n) for i != n is a single bracket of base generators
        return [(ONE, d(n, en), d(i, en))]

    # alpha_n <= 2 otherwise: peel off one unit of the last coordinate using
    # the first strictly-positive earlier coordinate as the pivot.  A positive
    # weight that is not a multiple of e_n always has one.
    pivot = None
    for j in range(n - 1):
        if alpha[j] > 0:
            pivot = j + 1
            break
    if pivot is None:
        raise OutOfRange("no positive pivot coordinate in %r" % (alpha,))
    ap = alpha[pivot - 1]
    out = [(Scalar.rational(1, ap), d(pivot, en), d(i, prev))]
    if i == n:
        out.append((Scalar.rational(1, ap * ap), d(pivot, en), d(pivot, prev)))
    return out


def expand_decomposition(parts, n: int) -> LieElt:
    """Sum scalar * [x, y] back into a single element."""
    total = LieElt(n)
    for scale, x, y in parts:
        total = total + scale * bracket(x, y)
    return total
