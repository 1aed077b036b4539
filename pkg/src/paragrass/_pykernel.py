"""Pure-Python term-product kernel (reference and fallback).

Term keys are integers ``(mon << 16) | (row << 8) | col`` where ``mon``
packs generator exponents in 8-bit fields: unstarred generator ``g`` in
field ``g`` and starred generator ``g`` in field ``MAX_GEN + g``.
Absent payload indices (ket column, bra row, scalar) are stored as 0.
"""

from __future__ import annotations

MAX_GEN = 3
FIELD_BITS = 8
_FIELDS = 2 * MAX_GEN
_FIELD_MASK = (1 << FIELD_BITS) - 1
HIGH_BITS = sum(0x80 << (FIELD_BITS * f) for f in range(_FIELDS)) << 16
_LOW = 0xFFFF

KERNEL_NAME = "python"


def overflow_offset(n: int) -> int:
    """Per-field bias that sets a field's top bit iff its exponent exceeds n."""
    return sum((127 - n) << (FIELD_BITS * f) for f in range(_FIELDS)) << 16


def degrees(key: int) -> tuple[int, int]:
    mon = key >> 16
    a = 0
    for f in range(MAX_GEN):
        a += (mon >> (FIELD_BITS * f)) & _FIELD_MASK
    b = 0
    for f in range(MAX_GEN, _FIELDS):
        b += (mon >> (FIELD_BITS * f)) & _FIELD_MASK
    return a, b


def product(lkeys, lvals, rkeys, rvals, n: int, contract: bool) -> dict:
    """Accumulate all canonical term products; zero pruning is left to the caller.

    For a left term ``m1 X1`` and right term ``m2 X2`` the product is
    ``s * (m1 m2) (X1' X2)`` where ``X1'`` is ``X1`` parity-conjugated
    ``deg(m2)`` times and ``s = (-1)^(unstarred(m2) * starred(m1))``.
    """
    offset = overflow_offset(n)
    high = HIGH_BITS
    hi_mask = ~_LOW

    right = []
    for key, val in zip(rkeys, rvals):
        a, b = degrees(key)
        right.append((key, (key >> 8) & 0xFF, val, a & 1, (a + b) & 1))

    if contract:
        by_row: dict[int, list] = {}
        for key, row, val, ap, dp in right:
            by_row.setdefault(row, []).append((key - (row << 8), val, ap, dp))
    else:
        flat = [(key, val, ap, dp) for key, row, val, ap, dp in right]

    out: dict[int, object] = {}
    get = out.get
    for key1, v1 in zip(lkeys, lvals):
        _, b = degrees(key1)
        bp = b & 1
        pp = (((key1 >> 8) & 0xFF) + (key1 & 0xFF)) & 1
        if contract:
            col = key1 & 0xFF
            cands = by_row.get(col)
            if not cands:
                continue
            base = key1 - col
        else:
            cands = flat
            base = key1
        for key2, v2, ap, dp in cands:
            if ((base & hi_mask) + (key2 & hi_mask) + offset) & high:
                continue
            k = base + key2
            val = v1 * v2
            if (ap & bp) ^ (pp & dp):
                val = -val
            prev = get(k)
            out[k] = val if prev is None else prev + val
    return out
