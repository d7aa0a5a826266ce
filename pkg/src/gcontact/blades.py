"""Blade kernel selection: compiled extension when importable, else pure Python.

Set ``GCONTACT_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GCONTACT_PURE_PYTHON"):
    from ._blades_py import contract_sign, popcount, reversal_sign, wedge_sign, wedge_terms
    BACKEND = "python"
else:
    try:
        from ._blades import contract_sign, popcount, reversal_sign, wedge_sign, wedge_terms
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._blades_py import contract_sign, popcount, reversal_sign, wedge_sign, wedge_terms
        BACKEND = "python"


def mask_of(indices):
    """Bitmask of a strictly ascending 1-based index list."""
    m = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError(f"blade indices must be strictly ascending: {list(indices)}")
        m |= 1 << (i - 1)
        prev = i
    return m


def indices_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


__all__ = [
    "BACKEND", "contract_sign", "indices_of", "mask_of", "popcount",
    "reversal_sign", "wedge_sign", "wedge_terms",
]
