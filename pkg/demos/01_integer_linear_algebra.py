"""Exact integer linear algebra: Smith and Hermite forms, kernels, cokernels.

Everything is done over Python integers, so entries never overflow.
Run with:  python demos/01_integer_linear_algebra.py
"""
from shacycl.intlin import FinAbGroup, FinAbMap, IntMatrix, cokernel_structure, fin_ab_kernel, hnf, kernel_basis, snf, solve

# A relation matrix and its Smith normal form U A V = diag(d).
A = [[6, 4], [4, 6]]
s = snf(A)
print("A =", A)
print("invariant factors:", s.d)
print("U A V =", (s.U @ IntMatrix(A) @ s.V).to_array().tolist())

# The cokernel Z^2 / A Z^2 is the finite abelian group with those factors.
G, coords = cokernel_structure(A)
print("coker A =", G, "; class of (1, 0):", coords([1, 0]))

# Column Hermite form: A T = H with T unimodular.
H, T = hnf([[2, 4]])
print("HNF of [2 4]:", H.to_array().tolist(), "with T =", T.to_array().tolist())

# Kernels and exact solves.
print("kernel of [1 2]:", kernel_basis([[1, 2]]))
print("solve 2x = 4:", solve([[2]], [4]), "; solve 2x = 3:", solve([[2]], [3]))

# Homomorphisms of finite abelian groups and their kernels.
f = FinAbMap(FinAbGroup((4,)), FinAbGroup((2,)), IntMatrix([[1]]))
K, gens = fin_ab_kernel(f)
print("kernel of Z/4 -> Z/2 (reduction):", K, "generated by", gens)
