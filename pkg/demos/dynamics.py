"""
Euler-top dynamics from two linear Poisson structures
=====================================================

A Lie algebra defines a linear Poisson bracket on the dual space.  The same
quadratic vector field is Hamiltonian for two such brackets, and their sum
is again Poisson.
"""

from nlbialgebra import catalog, deformed_bracket, euler_top_field, hamiltonian_field, kks, solve_hamiltonian
from nlbialgebra.lie import transpose

pb = catalog.euler_top()
first = kks(transpose(pb.cobracket))
second = kks(deformed_bracket(transpose(pb.cobracket), pb.operator.T))

field = euler_top_field()
print("field:", field)
print("at (1, 2, 3):", field((1, 2, 3)))

for name, p in (("first", first), ("second", second)):
    sol = solve_hamiltonian(p, field)
    print(f"{name}: H = {sol.particular.as_expr()}")
    print(f"{name}: casimirs {[c.as_expr() for c in sol.casimirs]}")
    assert hamiltonian_field(p, sol.particular) == field

print("sum is Poisson:", (first + second).jacobi_holds())
