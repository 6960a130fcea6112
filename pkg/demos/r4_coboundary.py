"""
A coboundary bialgebra on R^4 from an r-matrix
==============================================

The cobracket comes from a non-degenerate solution r of the Yang-Baxter
equation.  Composing a compatible Nijenhuis operator with r gives a second
r-matrix, and the pair gives back the operator.
"""

from nlbialgebra import RMatrix, catalog, classify, coboundary_cobracket, compose_nr, n_from_pair, r_bracket
from nlbialgebra.exact import fmt_multivector
from nlbialgebra.lie import format_bracket

pb = catalog.r4_coboundary()
b, n = pb.algebra.bracket, pb.operator
rm = RMatrix(b, pb.r_matrix)

print("bracket:   ", format_bracket(b))
print("r:         ", fmt_multivector(rm.r))
print("Yang-Baxter holds:", rm.cybe_certified, " non-degenerate:", rm.nondegenerate)

# The coboundary cobracket and the bracket it induces on the dual
delta = coboundary_cobracket(rm)
print("delta_r:   ", [fmt_multivector(delta.at(i)) for i in range(4)])
print("r-bracket: ", format_bracket(r_bracket(rm)))

# n r is again an r-matrix
composed = compose_nr(rm, n)
print("n r:       ", fmt_multivector(composed.r_matrix.r), " Yang-Baxter:", composed.cybe)

# Recovering n from the pair (r, n r)
pair = n_from_pair(rm, composed.r_matrix)
print("recovered n equals n:", pair.n == n, " Nijenhuis:", pair.nijenhuis)

print("level:", classify(b, delta, n).level)
