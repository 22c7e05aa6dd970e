"""
Kernel of U + I on odd elements
===============================

An odd element (r^2+r) g(r^2) is stored by g; U + I sends t^n to C_n.
"""

from char2hecke.gf2poly import to_text
from char2hecke.kernelspaces import kernel_equality_check, km_basis, top_n2_coordinates
from char2hecke.semilinear import r_text, u_apply

basis = km_basis(3)
for e in basis.elements:
    print(f"g = {to_text(e.g):<40} r-degree {e.r_degree}")

# every basis element really is fixed by U
print(all(u_apply(e.to_r()) == e.to_r() for e in basis.elements))

# dimensions grow by one per step
print([km_basis(m).dim for m in range(10)])

# (U+I)^2 kernels on the two lattices coincide
print(all(kernel_equality_check(m) for m in range(20)))

# F-coordinate of the top element, as a polynomial in G^2
for m in range(4):
    print(m, to_text(top_n2_coordinates(m).cF, var="G2"))

print(r_text(basis.elements[1].to_r()))
