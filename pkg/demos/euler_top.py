"""
The Euler top as a bialgebra with a Nijenhuis operator
======================================================

A three dimensional Lie algebra, a cobracket that makes it a Lie bialgebra,
and an operator that is Nijenhuis on the algebra but only almost Nijenhuis
on the dual.  Everything below is exact rational arithmetic.
"""

from nlbialgebra import catalog, classify, classify_operator, deform_delta_tn, deformed_bracket, transpose
from nlbialgebra.exact import fmt_multivector
from nlbialgebra.lie import format_bracket

pb = catalog.euler_top()
b, delta, n = pb.algebra.bracket, pb.cobracket, pb.operator

# The bracket, and the dual bracket obtained by transposing the cobracket
print("bracket:     ", format_bracket(b))
print("dual bracket:", format_bracket(transpose(delta)))

# Deforming by n gives another Lie bracket
print("deformed:    ", format_bracket(deformed_bracket(b, n)))

# n is Nijenhuis, its transpose on the dual is not
print("n on g:      ", classify_operator(b, n).status)
print("tn on g*:    ", classify_operator(transpose(delta), n.T).status)

# Deformed cobrackets, one image per basis vector
for k in (1, 2):
    d = deform_delta_tn(delta, n, k)
    print(f"delta_(tn^{k}):", [fmt_multivector(d.at(i)) for i in range(3)])

# The classification stops one rung short of the top and names the reason
c = classify(b, delta, n)
print("level:", c.level)
print("witness:", c.witness)
