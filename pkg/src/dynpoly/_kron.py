"""Dense integer polynomial kernels via Kronecker substitution.

Coefficient lists are ascending (index = exponent) lists of Python ints.
Packing evaluates a polynomial at 2**B as one big integer so that a single
big-integer multiply or divide replaces the schoolbook double loop.
"""

from __future__ import annotations

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int


def _pack(coeffs, bits, lo, hi):
    if hi - lo == 1:
        return _mpz(coeffs[lo])
    mid = (lo + hi) // 2
    return _pack(coeffs, bits, lo, mid) + (_pack(coeffs, bits, mid, hi) << (bits * (mid - lo)))


def pack(coeffs: list[int], bits: int):
    if not coeffs:
        return _mpz(0)
    return _pack(coeffs, bits, 0, len(coeffs))


def unpack(value, bits: int, length: int) -> list[int]:
    """Inverse of ``pack`` for signed coefficients with |c| < 2**(bits-1)."""
    out = []
    mask = (_mpz(1) << bits) - 1
    half = _mpz(1) << (bits - 1)
    full = _mpz(1) << bits
    v = _mpz(value)
    # Chunked extraction keeps the shifts on small operands.
    chunk = 64
    pos = 0
    while pos < length:
        n = min(chunk, length - pos)
        piece = v & ((_mpz(1) << (bits * n)) - 1)
        v >>= bits * n
        for _ in range(n):
            c = piece & mask
            piece >>= bits
            if c >= half:
                c -= full
                piece += 1
            out.append(int(c))
        # Borrow from a negative top coefficient of the chunk carries upward.
        v += piece
        pos += n
    return out


def _maxbits(coeffs):
    return max((abs(int(c)).bit_length() for c in coeffs), default=0)


def mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    n = min(len(a), len(b))
    bits = _maxbits(a) + _maxbits(b) + n.bit_length() + 2
    prod = pack(a, bits) * pack(b, bits)
    return unpack(prod, bits, len(a) + len(b) - 1)


def divexact(num: list[int], den: list[int]) -> list[int] | None:
    """Return q with q*den == num over ZZ[t], or None.

    ``den`` must be primitive (content 1) so that any quotient over QQ is
    integral.  The result is always multiplied back before being returned.
    """
    while num and num[-1] == 0:
        num = num[:-1]
    if not num:
        return []
    dlen = len(den)
    if dlen > len(num):
        return None
    # Lower-degree zeros: strip matching powers of t first.
    shift = 0
    while den[shift] == 0:
        if num[shift] != 0:
            return None
        shift += 1
    num_s, den_s = num[shift:], den[shift:]
    qlen = len(num_s) - len(den_s) + 1
    if qlen <= 0:
        return None
    if sum(1 for c in den_s if c) <= 16 or qlen <= 4:
        q = _schoolbook_div(num_s, den_s)
    else:
        # Mignotte: any integer factor q of num has |q_i| <= 2**deg(q) * ||num||_2.
        norm_bits = (sum(c * c for c in num_s)).bit_length() // 2 + 1
        bits = max(norm_bits + max(qlen, len(den_s)) + 3, _maxbits(den_s) + 3)
        quot, rem = divmod(pack(num_s, bits), pack(den_s, bits))
        if rem != 0:
            return None
        q = unpack(quot, bits, qlen)
    if q is None:
        return None
    if mul(q, den_s) != num_s:
        return None
    return q


def _schoolbook_div(num, den):
    rem = list(num)
    lc = den[-1]
    dn = len(den) - 1
    nz = [(i, c) for i, c in enumerate(den[:-1]) if c]
    q = [0] * (len(num) - dn)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + dn]
        if c == 0:
            continue
        qc, r = divmod(c, lc)
        if r:
            return None
        q[k] = qc
        for i, dc in nz:
            rem[k + i] -= qc * dc
    for i in range(dn):
        if rem[i]:
            return None
    return q
