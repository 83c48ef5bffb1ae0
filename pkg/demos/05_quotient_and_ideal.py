"""Quotients where z acts by a scalar, and Whittaker ideals of submodules.

Setting z = a collapses each z-exponent to the factor a^r.  Reducing a
vector inside that quotient must end at a nonzero multiple of w for
every nonsingular specialized type: that is the simplicity probe.  Back
in the full module, the vectors f(z) w contained in a submodule form an
ideal of C[z]; submodule_generator finds its monic generator relative
to a truncated slice.
"""

from whitmod import (
    PsiSpec,
    Truncation,
    act,
    act_word,
    basis_vector,
    d,
    quotient_act,
    simplicity_probe,
    submodule_generator,
    w_vector,
)

psi = PsiSpec.of(1, 2, 3)
a = 2

print("quotient action at z = %d:" % a)
v = basis_vector([(0, 1)], r=1)
print("  v = %s" % v)
print("  d2(0,-1) . v = %s" % quotient_act(d(2, (0, -1)), v, a, psi))

print()
print("simplicity probes (z = %d, psi = 1,2,3):" % a)
for word, name in [
    ([(2, (0, 0))], "h2 w"),
    ([(1, (0, -1))], "d1(0,-1) w"),
    ([(1, (0, -1)), (2, (0, -2))], "d1(0,-1) d2(0,-2) w"),
]:
    u = act_word(word, w_vector(), psi)
    print("  %-22s -> %s" % (name, simplicity_probe(u, a, psi)))

# Whittaker ideals.  (z - 2) w generates the ideal (z - 2); adding the
# coprime (z - 1) w forces the unit ideal; and a single generator can
# carry a smaller ideal than its own reduction polynomial suggests once
# the span is explored.
trunc = Truncation(cap=(0, 3), entries=[(0, 1), (0, 2)], kmax=2, rmax=6)
zw = basis_vector(r=1)
w = w_vector()

cases = [
    ("(z - 2) w", [zw - 2 * w]),
    ("(z - 1) w and (z - 2) w", [zw - w, zw - 2 * w]),
    ("d1(0,-1) (z - 2) w", [act(d(1, (0, -1)), zw - 2 * w, psi)]),
    ("h2 (z - 2) w - w", [act(d(2, (0, 0)), zw - 2 * w, psi) - w]),
]
print()
print("monic ideal generators in the slice:")
for name, gens in cases:
    g = submodule_generator(gens, trunc, psi)
    print("  <%s>  ->  %s" % (name, g))
