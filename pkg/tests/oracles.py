"""Slow, independent reference implementations used only by the tests.

Nothing here calls the code paths it is used to check: polynomials are
coefficient lists, U goes through the Z/2[G]-module structure instead of
the monomial recursion, kernels are found by exhaustive enumeration.
"""

from itertools import product


def to_list(bits, n=None):
    n = bits.bit_length() if n is None else n
    return [(bits >> k) & 1 for k in range(n)]


def from_list(coeffs):
    out = 0
    for k, c in enumerate(coeffs):
        if c & 1:
            out |= 1 << k
    return out


def naive_mul(a, b):
    la, lb = to_list(a), to_list(b)
    if not la or not lb:
        return 0
    out = [0] * (len(la) + len(lb) - 1)
    for i, x in enumerate(la):
        if x:
            for j, y in enumerate(lb):
                out[i + j] ^= y
    return from_list(out)


def naive_divmod(a, b):
    q = 0
    while a and a.bit_length() >= b.bit_length():
        s = a.bit_length() - b.bit_length()
        q |= 1 << s
        a ^= b << s
    return q, a


F_BITS = 0b11110
G_BITS = 0b11000
U_SEEDS = (0b1, 0b10, 0b100, 0b1110)


def compose(p, x):
    acc = 0
    for k, c in enumerate(to_list(p)):
        if c:
            term = 1
            for _ in range(k):
                term = naive_mul(term, x)
            acc ^= term
    return acc


def u_via_G_module(f):
    """U(f) from f = sum r^i g_i(G): U(f) = sum U(r^i) g_i(F)."""
    parts = [0, 0, 0, 0]
    j = 0
    while f:
        f, rem = naive_divmod(f, G_BITS)
        for i in range(4):
            if (rem >> i) & 1:
                parts[i] |= 1 << j
        j += 1
    acc = 0
    for seed, g in zip(U_SEEDS, parts):
        acc ^= naive_mul(seed, compose(g, F_BITS))
    return acc


def c_via_U(nmax):
    """C_n from (U+I)((r^2+r) r^(2n)) = (r^2+r) C_n(r^2)."""
    out = []
    for n in range(nmax + 1):
        f = 0b110 << (2 * n)
        image = u_via_G_module(f) ^ f
        q, rem = naive_divmod(image, 0b110)
        assert rem == 0
        g = 0
        for k, c in enumerate(to_list(q)):
            if c:
                assert k % 2 == 0
                g |= 1 << (k // 2)
        out.append(g)
    return out


def brute_kernel(columns, ncols):
    """All v < 2^ncols with sum of columns[k] over the bits k of v equal to 0."""
    out = []
    for v in range(1 << ncols):
        acc = 0
        for k in range(ncols):
            if (v >> k) & 1:
                acc ^= columns[k]
        if acc == 0:
            out.append(v)
    return out


def brute_combinations(target, pool):
    """All subsets (as index tuples) of ``pool`` whose XOR is ``target``."""
    hits = []
    for mask in product((0, 1), repeat=len(pool)):
        acc = 0
        for bit, val in zip(mask, pool):
            if bit:
                acc ^= val
        if acc == target:
            hits.append(tuple(i for i, bit in enumerate(mask) if bit))
    return hits


def series_coeffs(exponent_sets, N):
    out = [0] * N
    for e in exponent_sets:
        if e < N:
            out[e] ^= 1
    return out


def decimate_list(coeffs, p):
    return [coeffs[p * n] for n in range(len(coeffs) // p)]


def tp_list(coeffs, p):
    N = len(coeffs) // p
    out = [coeffs[p * n] for n in range(N)]
    for n in range(N):
        if p * n < N:
            out[p * n] ^= coeffs[n]
    return out


def series_mul_list(a, b):
    N = min(len(a), len(b))
    out = [0] * N
    for i in range(N):
        if a[i]:
            for j in range(N - i):
                out[i + j] ^= b[j]
    return out
