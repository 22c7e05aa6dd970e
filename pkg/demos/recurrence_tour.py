"""
The C_n recurrence
==================

C_{n+4} = C_{n+3} + (t^4+t^3+t^2+t) C_n + t^n (t^2+t), starting 0, 1, t, t^2.
"""

from char2hecke.gf2poly import to_text
from char2hecke.recurrence import c_seq, degree_law_check, express_c4m, new_state

# the first few terms
for n, c in enumerate(c_seq(12)):
    print(f"C_{n:<2} = {to_text(c)}")

# deg C_n is n-1 except at multiples of 4, where it drops
print(degree_law_check(1000))

# each C_4m is a sum of earlier C_k with 4 not dividing k
state = new_state()
for m in range(1, 6):
    rep = express_c4m(m, state)
    print(f"C_{4 * m} =", " + ".join(f"C_{k}" for k in rep.support), " verified:", rep.verified)
