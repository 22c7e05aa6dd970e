"""
q-expansions and Hecke operators
================================

r, F, G as power series in x, with U_2, U_3 and T_p acting on exponents.
"""

from char2hecke.qseries import (
    check_u3_equals_u,
    p3i,
    r_poly_of_series,
    series_const,
    series_of_r_poly,
    tp,
    u2,
    u3,
)
from char2hecke.semilinear import F, G

N = 2000
r = series_const("r", N)
print("r =", r.truncate(40).to_text())
print("F =", series_const("F", 100).to_text())

# the polynomial F in r has the odd-square series
print(series_of_r_poly(F, N) == series_const("F", N))
print(series_of_r_poly(G, N) == series_const("G", N))

# U_2 kills F, U_3 turns G into F
print(u2(series_const("F", N)).is_zero(), u3(series_const("G", N)) == series_const("F", N // 3))

# T_7 kills F + G; precision drops to N // 7
s = tp(series_const("F", N) + series_const("G", N), 7)
print(s.is_zero(), s.precision)

# D keeps the exponents = 1 mod 3 of F
print(p3i(series_const("F", 200), 1).to_text())

# back from series to a polynomial in r
print(r_poly_of_series(series_const("F", 50) + series_const("G", 50), 2))

print(check_u3_equals_u(16, 1024))
