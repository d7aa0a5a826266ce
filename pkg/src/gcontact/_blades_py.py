"""Pure-Python blade kernels (bitmask representation).

Blade ``{i1 < ... < ik}`` is stored as the integer with bits ``i1-1, ..., ik-1`` set.
"""


def popcount(m):
    return bin(m).count("1")


def wedge_sign(a, b):
    """Sign of ``blade(a) ^ blade(b)`` relative to ``blade(a | b)``; 0 on overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # generators of a above this generator of b must hop over it
        swaps += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if swaps & 1 else 1


def contract_sign(bit, m):
    """Sign picked up when the interior product by generator ``bit`` hits ``m``."""
    if not (m >> bit) & 1:
        return 0
    return -1 if bin(m & ((1 << bit) - 1)).count("1") & 1 else 1


def reversal_sign(k):
    return -1 if (k * (k - 1) // 2) & 1 else 1


def wedge_terms(amasks, bmasks):
    out = []
    for i, a in enumerate(amasks):
        for j, b in enumerate(bmasks):
            s = wedge_sign(a, b)
            if s:
                out.append((i, j, a | b, s))
    return out
