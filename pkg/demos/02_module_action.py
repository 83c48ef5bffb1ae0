"""The universal Whittaker module and its normal forms.

Vectors are Scalar-linear combinations of PBW monomials

    x_lambda y_mu h2^k z^r w

with lambda, mu multisets of lex-positive weights (x entries act through
d1 at the negated weight, y entries through d2).  Positive generators
act on w through the type homomorphism psi: only d1(0,1) -> s1,
d2(0,1) -> s2 and d2(0,2) -> s3 survive.
"""

from whitmod import (
    PsiSpec,
    act,
    act_word,
    basis_vector,
    d,
    degree_of,
    is_whittaker,
    straighten_word,
    w_vector,
)

w = w_vector()

print("positive generators on w (symbolic type):")
for i, alpha in [(1, (0, 1)), (2, (0, 1)), (2, (0, 2)), (1, (0, 2)), (2, (1, -1))]:
    print("  d%d%s w = %s" % (i, alpha, act(d(i, alpha), w)))

# Straightening: words get normal-ordered by swapping adjacent factors
# and paying the bracket each time.
print()
word = [(1, (0, 0)), (1, (-1, 0))]
print("z d1(-1,0) w = %s" % straighten_word(word))
word = [(2, (0, 2)), (1, (0, -2)), (2, (0, 0))]
print("d2(0,2) d1(0,-2) h2 w = %s" % straighten_word(word))

# The same computation through the action API, specialized.
psi = PsiSpec.of(1, 2, 3)
v = act_word([(1, (0, -2)), (2, (0, 0))], w, psi)
print()
print("u = d1(0,-2) h2 w = %s" % v)
print("d2(0,2) u = %s   (psi = 1,2,3)" % act(d(2, (0, 2)), v, psi))

# Degrees: the leading basis triple under the reduction order, plus the
# z-polynomial sitting on it.
v = basis_vector([(0, 1)], r=2) + 3 * basis_vector([(0, 1)]) + basis_vector(r=5)
top, poly = degree_of(v)
print()
print("v = %s" % v)
print("deg v = %s with z-polynomial %s" % (top, poly))

# Whittaker vectors: the whole line C[z] w qualifies, h2 w does not.
print()
for u, name in [(w, "w"), (basis_vector(r=3), "z^3 w"), (basis_vector(k=1), "h2 w")]:
    check = is_whittaker(u)
    if check:
        print("%s is a Whittaker vector" % name)
    else:
        i, alpha, defect = check.witness
        print("%s is refuted by d%d%s with defect %s" % (name, i, alpha, defect))
