"""The universal Whittaker module and its basis action.

Basis vectors are x_{lambda,mu,k} z^r w: a product of weight-negative
d_1 factors prescribed by lambda, weight-negative d_2 factors prescribed
by mu, k copies of h2 = d_2(0,0) and r copies of z = d_1(0,0), applied to
the cyclic vector w.  A ModuleVector is a finite Scalar-combination of
those.

act straightens an arbitrary word into this basis.  A word is a tuple of
(i, alpha) factors; the canonical position order is

    d_1-negatives (weights non-increasing), d_2-negatives (same),
    h2 factors, z factors, positive factors,

and any positive factor that reaches the rightmost slot acts on w through
the type homomorphism.  Each rewrite either swaps one adjacent inversion
(adding bracket terms one factor shorter) or consumes a rightmost positive
factor, so the pair (factor count, inversion count) drops lexicographically
at every step; the engine checks that on every push and refuses to
continue if it ever fails.
"""

from __future__ import annotations

import functools
from typing import NamedTuple

from .coeff import ONE, PsiSpec, SYMBOLIC, Scalar, ZERO, ZPoly, as_scalar, attach_coefficient
from .liecore import (
    LieElt,
    Weight,
    _generator_psi,
    d,
    is_positive,
    weight_add,
    weight_neg,
)
from .orders import EMPTY, Partition, Triple, triple_max, triple_prec


class ZeroVector(ValueError):
    """An operation that needs a nonzero vector got the zero vector."""


class NonDescent(RuntimeError):
    """A rewrite failed to shrink its termination measure; engine bug guard."""


class BasisMonomial(NamedTuple):
    lam: Partition
    mu: Partition
    k: int
    r: int

    @property
    def triple(self) -> Triple:
        return Triple(self.lam, self.mu, self.k)

    def __str__(self):
        parts = []
        for entry in self.lam:
            parts.append("d1(%d,%d)" % (-entry[0], -entry[1]))
        for entry in self.mu:
            parts.append("d2(%d,%d)" % (-entry[0], -entry[1]))
        if self.k == 1:
            parts.append("h2")
        elif self.k > 1:
            parts.append("h2^%d" % self.k)
        if self.r == 1:
            parts.append("z")
        elif self.r > 1:
            parts.append("z^%d" % self.r)
        parts.append("w")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "k": self.k,
            "r": self.r,
        }

    @staticmethod
    def from_json(data) -> "BasisMonomial":
        return BasisMonomial(
            Partition.from_json(data["lambda"]),
            Partition.from_json(data["mu"]),
            int(data["k"]),
            int(data["r"]),
        )


MONOMIAL_W = BasisMonomial(EMPTY, EMPTY, 0, 0)


def _monomial_cmp(a: BasisMonomial, b: BasisMonomial) -> int:
    ta, tb = a.triple, b.triple
    if ta != tb:
        return -1 if triple_prec(ta, tb) else 1
    if a.r != b.r:
        return -1 if a.r < b.r else 1
    return 0


_MONOMIAL_KEY = functools.cmp_to_key(_monomial_cmp)


class ModuleVector:
    """Finite Scalar-linear combination of basis monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                c = as_scalar(coeff)
                if c:
                    tot = clean.get(mono, ZERO) + c
                    if tot:
                        clean[mono] = tot
                    elif mono in clean:
                        del clean[mono]
        object.__setattr__(self, "_terms", clean)

    def terms(self):
        """(monomial, coeff) pairs in canonical ascending order."""
        return [(m, self._terms[m]) for m in sorted(self._terms, key=_MONOMIAL_KEY)]

    def coeff(self, mono: BasisMonomial) -> Scalar:
        return self._terms.get(mono, ZERO)

    def support_triples(self):
        """Distinct triples appearing in the vector."""
        return {m.triple for m in self._terms}

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        merged = dict(self._terms)
        for mono, c in other._terms.items():
            tot = merged.get(mono, ZERO) + c
            if tot:
                merged[mono] = tot
            elif mono in merged:
                del merged[mono]
        return _raw_vector(merged)

    def __neg__(self):
        return _raw_vector({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        s = as_scalar(other)
        if not s:
            return ModuleVector()
        return _raw_vector({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def specialize(self, psi: PsiSpec) -> "ModuleVector":
        return ModuleVector({m: c.specialize(psi) for m, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.terms():
            parts.append(attach_coefficient(coeff, str(mono), sep=" * "))
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return "ModuleVector(%s)" % self

    def to_json(self) -> dict:
        return {
            "terms": [
                dict(m.to_json(), coeff=c.to_json()) for m, c in self.terms()
            ]
        }

    @staticmethod
    def from_json(data) -> "ModuleVector":
        terms = {}
        for t in data["terms"]:
            mono = BasisMonomial.from_json(t)
            terms[mono] = terms.get(mono, ZERO) + Scalar.from_json(t["coeff"])
        return ModuleVector(terms)


def _raw_vector(terms: dict) -> ModuleVector:
    v = ModuleVector()
    object.__setattr__(v, "_terms", terms)
    return v


def basis_vector(lam=EMPTY, mu=EMPTY, k: int = 0, r: int = 0, coeff=1) -> ModuleVector:
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if k < 0 or r < 0:
        raise ValueError("k and r must be non-negative")
    return ModuleVector({BasisMonomial(lam, mu, k, r): as_scalar(coeff)})


def w_vector() -> ModuleVector:
    return basis_vector()


# factor classes in canonical position order
_NEG1, _NEG2, _H, _Z, _POS = range(5)

_ZERO2 = (0, 0)


def _factor_class(factor) -> int:
    i, alpha = factor
    if alpha > _ZERO2:
        return _POS
    if alpha == _ZERO2:
        return _Z if i == 1 else _H
    return _NEG1 if i == 1 else _NEG2


def _factor_cmp(f, g) -> int:
    """Canonical position comparison; > 0 on an adjacent pair is an inversion."""
    cf, cg = _factor_class(f), _factor_class(g)
    if cf != cg:
        return -1 if cf < cg else 1
    if cf in (_NEG1, _NEG2):
        # negatives run with non-increasing weights
        if f[1] > g[1]:
            return -1
        if f[1] < g[1]:
            return 1
    return 0


def _inversions(word) -> int:
    count = 0
    for p in range(len(word)):
        for q in range(p + 1, len(word)):
            if _factor_cmp(word[p], word[q]) > 0:
                count += 1
    return count


def _measure(word):
    return (len(word), _inversions(word))


def _factor_bracket(f, g):
    """[d_i(a), d_j(b)] as a list of (int coefficient, factor)."""
    i, a = f
    j, b = g
    s = weight_add(a, b)
    out = {}
    for idx, scale in ((j, b[i - 1]), (i, -a[j - 1])):
        if scale:
            out[(idx, s)] = out.get((idx, s), 0) + scale
    return [(c, fac) for fac, c in out.items() if c]


def _monomial_of_sorted(word) -> BasisMonomial:
    lam, mu, k, r = [], [], 0, 0
    for factor in word:
        cls = _factor_class(factor)
        if cls == _NEG1:
            lam.append(weight_neg(factor[1]))
        elif cls == _NEG2:
            mu.append(weight_neg(factor[1]))
        elif cls == _H:
            k += 1
        elif cls == _Z:
            r += 1
        else:
            raise NonDescent("positive factor survived straightening: %r" % (factor,))
    return BasisMonomial(Partition(lam), Partition(mu), k, r)


def _push(stack, parent_measure, coeff, word):
    if _measure(word) >= parent_measure:
        raise NonDescent("rewrite did not shrink (factors, inversions) at %r" % (word,))
    stack.append((coeff, word))


def straighten_word(word, psi: PsiSpec = SYMBOLIC) -> ModuleVector:
    """Normal-order a word of (i, alpha) factors applied to w."""
    word = tuple((int(i), (int(a[0]), int(a[1]))) for i, a in word)
    out = {}
    stack = [(ONE, word)]
    while stack:
        coeff, wd = stack.pop()
        m0 = _measure(wd)
        pos = None
        for p in range(len(wd) - 1):
            if _factor_cmp(wd[p], wd[p + 1]) > 0:
                pos = p
                break
        if pos is None:
            if wd and _factor_class(wd[-1]) == _POS:
                value = _generator_psi(wd[-1][0], wd[-1][1], psi)
                if value:
                    _push(stack, m0, coeff * value, wd[:-1])
                continue
            mono = _monomial_of_sorted(wd)
            tot = out.get(mono, ZERO) + coeff
            if tot:
                out[mono] = tot
            elif mono in out:
                del out[mono]
            continue
        a, b = wd[pos], wd[pos + 1]
        _push(stack, m0, coeff, wd[:pos] + (b, a) + wd[pos + 2 :])
        for cb, factor in _factor_bracket(a, b):
            _push(stack, m0, coeff * cb, wd[:pos] + (factor,) + wd[pos + 2 :])
    return _raw_vector(out)


def _monomial_word(mono: BasisMonomial):
    word = [(1, weight_neg(e)) for e in mono.lam]
    word += [(2, weight_neg(e)) for e in mono.mu]
    word += [(2, _ZERO2)] * mono.k
    word += [(1, _ZERO2)] * mono.r
    return tuple(word)


@functools.lru_cache(maxsize=None)
def _act_basis(i: int, alpha: Weight, mono: BasisMonomial, psi: PsiSpec) -> ModuleVector:
    return straighten_word(((i, alpha),) + _monomial_word(mono), psi)


def act(x: LieElt, v: ModuleVector, psi: PsiSpec = SYMBOLIC) -> ModuleVector:
    """Action of a Lie element on a module vector, fully straightened."""
    if x.n != 2:
        raise ValueError("the module is defined over the rank-two algebra")
    out = ModuleVector()
    for i, alpha, cx in x.terms():
        for mono, cv in v.terms():
            out = out + (cx * cv) * _act_basis(i, alpha, mono, psi)
    return out


def act_word(word, v: ModuleVector, psi: PsiSpec = SYMBOLIC) -> ModuleVector:
    """Apply a word of (i, alpha) factors, rightmost factor first."""
    for i, alpha in reversed(list(word)):
        v = act(d(i, alpha), v, psi)
    return v


def degree_of(v: ModuleVector):
    """(leading triple, leading z-polynomial) under the triple order."""
    if not v:
        raise ZeroVector("the zero vector has no degree")
    by_triple = {}
    for mono, c in v._terms.items():
        by_triple.setdefault(mono.triple, {})[mono.r] = c
    top = triple_max(by_triple)
    rs = by_triple[top]
    coeffs = [rs.get(r, ZERO) for r in range(max(rs) + 1)]
    return top, ZPoly(coeffs)


def in_filtration(v: ModuleVector, t: Triple) -> bool:
    """Whether every triple of v lies strictly below t; the zero vector always does."""
    return all(triple_prec(s, t) for s in v.support_triples())


class WhittakerCheck(NamedTuple):
    passed: bool
    witness: tuple | None  # (i, alpha, defect vector) when refuted

    def __bool__(self):
        return self.passed


def default_weight_box(v: ModuleVector):
    """Finite family of positive weights large enough to refute v.

    Budgets come from component totals across the support: M1 sums the
    first components of the weight sums, M2 the absolute second
    components.  The box always contains (0,1) and (0,2).
    """
    m1 = sum(m.triple.weight_sum()[0] for m in v._terms) if v else 0
    m2 = sum(abs(m.triple.weight_sum()[1]) for m in v._terms) if v else 0
    return weight_box(m1 + 3, m2 + 3)


def weight_box(max_first: int, max_abs_second: int):
    """All lex-positive weights (a1, a2) with 0 <= a1 <= max_first, |a2| <= max_abs_second."""
    out = []
    for a1 in range(0, max_first + 1):
        lo = 1 if a1 == 0 else -max_abs_second
        for a2 in range(lo, max_abs_second + 1):
            out.append((a1, a2))
    return out


def is_whittaker(v: ModuleVector, psi: PsiSpec = SYMBOLIC, box=None) -> WhittakerCheck:
    """Test whether every positive generator acts on v by its type value.

    Checks the defect act(d_i(alpha), v) - psi(d_i(alpha)) * v over the
    sample box (the derived default is large enough that a pass certifies
    the property; see default_weight_box).  A refutation returns the first
    witness in scan order: alpha ascending lex, then i.
    """
    if box is None:
        box = default_weight_box(v)
    for alpha in sorted(box):
        if not is_positive(alpha):
            raise ValueError("sample box weights must be lex-positive, got %r" % (alpha,))
        for i in (1, 2):
            gen = d(i, alpha)
            defect = act(gen, v, psi) - _generator_psi(i, alpha, psi) * v
            if defect:
                return WhittakerCheck(False, (i, alpha, defect))
    return WhittakerCheck(True, None)
