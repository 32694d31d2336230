"""Dense polynomial kernels over prime fields F_p.

Polynomials are ``int64`` arrays, lowest degree first, with trailing zeros
trimmed (the empty array is the zero polynomial).  Every kernel exists twice:

* a loop version compiled with ``numba.njit`` (the default), and
* a vectorised pure-numpy version.

``COMPOLY_KERNELS=numpy`` selects the numpy path; the numba path is also
skipped automatically when numba cannot be imported.  Both paths compute the
same results bit for bit; ``benchmarks/bench_kernels.py`` compares them.

Intermediate products are reduced mod p eagerly, so any p below
``PRIME_LIMIT`` is safe from int64 overflow.
"""

from __future__ import annotations

import os

import numpy as np

PRIME_LIMIT = 1 << 25

_requested = os.environ.get("COMPOLY_KERNELS", "numba").strip().lower()

try:  # pragma: no cover - exercised through BACKEND
    if _requested == "numpy":
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"

_EMPTY = np.zeros(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# loop kernels (numba targets)


@njit(cache=True)
def _l_trim(a):
    n = a.shape[0]
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n].copy()


@njit(cache=True)
def _l_inv(a, p):
    t, newt, r, newr = 0, 1, p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    return t % p


@njit(cache=True)
def _l_add(a, b, p):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros(n, dtype=np.int64)
    for i in range(a.shape[0]):
        out[i] = a[i]
    for i in range(b.shape[0]):
        out[i] = (out[i] + b[i]) % p
    return _l_trim(out)


@njit(cache=True)
def _l_sub(a, b, p):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros(n, dtype=np.int64)
    for i in range(a.shape[0]):
        out[i] = a[i]
    for i in range(b.shape[0]):
        out[i] = (out[i] - b[i]) % p
    return _l_trim(out)


@njit(cache=True)
def _l_mul(a, b, p):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai != 0:
            for j in range(b.shape[0]):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    return _l_trim(out)


@njit(cache=True)
def _l_divmod(a, b, p):
    nb = b.shape[0]
    r = a % p
    if r.shape[0] < nb:
        return np.zeros(0, dtype=np.int64), _l_trim(r)
    inv = _l_inv(b[nb - 1], p)
    q = np.zeros(r.shape[0] - nb + 1, dtype=np.int64)
    for k in range(q.shape[0] - 1, -1, -1):
        c = r[k + nb - 1] * inv % p
        q[k] = c
        if c != 0:
            for i in range(nb):
                r[k + i] = (r[k + i] - c * b[i]) % p
    return _l_trim(q), _l_trim(r[: nb - 1])


@njit(cache=True)
def _l_rem(a, b, p):
    return _l_divmod(a, b, p)[1]


@njit(cache=True)
def _l_mulmod(a, b, m, p):
    return _l_rem(_l_mul(a, b, p), m, p)


@njit(cache=True)
def _l_powmod(a, e, m, p):
    result = np.ones(1, dtype=np.int64)
    result = _l_rem(result, m, p)
    base = _l_rem(a, m, p)
    while e > 0:
        if e & 1:
            result = _l_mulmod(result, base, m, p)
        e >>= 1
        if e > 0:
            base = _l_mulmod(base, base, m, p)
    return result


@njit(cache=True)
def _l_monic(a, p):
    if a.shape[0] == 0:
        return a
    inv = _l_inv(a[a.shape[0] - 1], p)
    return (a * inv) % p


@njit(cache=True)
def _l_gcd(a, b, p):
    a = _l_trim(a % p)
    b = _l_trim(b % p)
    while b.shape[0] > 0:
        r = _l_rem(a, b, p)
        a = b
        b = r
    return _l_monic(a, p)


@njit(cache=True)
def _l_polymat_det(M, p):
    """Determinant of a square matrix over F_p[x] by fraction-free elimination.

    M has shape (n, n, W); W must exceed the degree of every minor.
    """
    n = M.shape[0]
    W = M.shape[2]
    A = M.copy() % p
    sign = 1
    prev = np.ones(1, dtype=np.int64)
    for k in range(n - 1):
        piv = -1
        for i in range(k, n):
            if _l_trim(A[i, k]).shape[0] > 0:
                piv = i
                break
        if piv == -1:
            return np.zeros(0, dtype=np.int64)
        if piv != k:
            tmp = A[k].copy()
            A[k] = A[piv]
            A[piv] = tmp
            sign = -sign
        akk = _l_trim(A[k, k])
        for i in range(k + 1, n):
            aik = _l_trim(A[i, k])
            for j in range(k + 1, n):
                t = _l_sub(_l_mul(akk, _l_trim(A[i, j]), p), _l_mul(aik, _l_trim(A[k, j]), p), p)
                qq = _l_divmod(t, prev, p)[0]
                A[i, j, :] = 0
                A[i, j, : qq.shape[0]] = qq
            A[i, k, :] = 0
        prev = akk
    res = _l_trim(A[n - 1, n - 1])
    if sign < 0:
        res = (p - res) % p
    return res


# ---------------------------------------------------------------------------
# vectorised numpy kernels


def _n_trim(a):
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return _EMPTY.copy()
    return np.array(a[: nz[-1] + 1], dtype=np.int64)


def _n_add(a, b, p):
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] += a
    out[: b.size] += b
    return _n_trim(out % p)


def _n_sub(a, b, p):
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] += a
    out[: b.size] -= b
    return _n_trim(out % p)


def _n_mul(a, b, p):
    if a.size == 0 or b.size == 0:
        return _EMPTY.copy()
    if p < (1 << 24) and min(a.size, b.size) * p * p < (1 << 62):
        return _n_trim(np.convolve(a, b) % p)
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            out[i : i + b.size] = (out[i : i + b.size] + ai * b) % p
    return _n_trim(out)


def _n_divmod(a, b, p):
    nb = b.size
    r = np.array(a, dtype=np.int64) % p
    if r.size < nb:
        return _EMPTY.copy(), _n_trim(r)
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(r.size - nb + 1, dtype=np.int64)
    for k in range(q.size - 1, -1, -1):
        c = int(r[k + nb - 1]) * inv % p
        q[k] = c
        if c:
            r[k : k + nb] = (r[k : k + nb] - c * b) % p
    return _n_trim(q), _n_trim(r[: nb - 1])


def _n_rem(a, b, p):
    return _n_divmod(a, b, p)[1]


def _n_mulmod(a, b, m, p):
    return _n_rem(_n_mul(a, b, p), m, p)


def _n_powmod(a, e, m, p):
    result = _n_rem(np.ones(1, dtype=np.int64), m, p)
    base = _n_rem(a, m, p)
    while e > 0:
        if e & 1:
            result = _n_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _n_mulmod(base, base, m, p)
    return result


def _n_monic(a, p):
    if a.size == 0:
        return a
    return (a * pow(int(a[-1]), -1, p)) % p


def _n_gcd(a, b, p):
    a = _n_trim(np.asarray(a, dtype=np.int64) % p)
    b = _n_trim(np.asarray(b, dtype=np.int64) % p)
    while b.size:
        a, b = b, _n_rem(a, b, p)
    return _n_monic(a, p)


def _n_polymat_det(M, p):
    n = M.shape[0]
    A = [[_n_trim(M[i, j] % p) for j in range(n)] for i in range(n)]
    sign = 1
    prev = np.ones(1, dtype=np.int64)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if A[i][k].size), None)
        if piv is None:
            return _EMPTY.copy()
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                t = _n_sub(_n_mul(akk, A[i][j], p), _n_mul(aik, A[k][j], p), p)
                A[i][j] = _n_divmod(t, prev, p)[0]
        prev = akk
    res = A[n - 1][n - 1]
    if sign < 0:
        res = (p - res) % p
    return res


# ---------------------------------------------------------------------------
# dispatch

LOOP = dict(
    trim=_l_trim, add=_l_add, sub=_l_sub, mul=_l_mul, divmod=_l_divmod, rem=_l_rem,
    mulmod=_l_mulmod, powmod=_l_powmod, gcd=_l_gcd, polymat_det=_l_polymat_det,
)
NUMPY = dict(
    trim=_n_trim, add=_n_add, sub=_n_sub, mul=_n_mul, divmod=_n_divmod, rem=_n_rem,
    mulmod=_n_mulmod, powmod=_n_powmod, gcd=_n_gcd, polymat_det=_n_polymat_det,
)
_ACTIVE = LOOP if HAVE_NUMBA else NUMPY


def arr(coeffs) -> np.ndarray:
    return np.asarray(list(coeffs), dtype=np.int64)


def trim(a):
    return _ACTIVE["trim"](a)


def add(a, b, p):
    return _ACTIVE["add"](a, b, p)


def sub(a, b, p):
    return _ACTIVE["sub"](a, b, p)


def mul(a, b, p):
    return _ACTIVE["mul"](a, b, p)


def divmod_(a, b, p):
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    return _ACTIVE["divmod"](a, b, p)


def rem(a, b, p):
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    return _ACTIVE["rem"](a, b, p)


def mulmod(a, b, m, p):
    return _ACTIVE["mulmod"](a, b, m, p)


def powmod(a, e: int, m, p):
    if e >= (1 << 62):
        # split huge exponents to stay inside int64
        result = rem(np.ones(1, dtype=np.int64), m, p)
        base = rem(a, m, p)
        while e:
            if e & 1:
                result = mulmod(result, base, m, p)
            e >>= 1
            if e:
                base = mulmod(base, base, m, p)
        return result
    return _ACTIVE["powmod"](a, int(e), m, p)


def gcd(a, b, p):
    return _ACTIVE["gcd"](a, b, p)


def polymat_det(M, p):
    """Determinant of an (n, n, W) int64 array viewed as a matrix over F_p[x]."""
    if M.shape[0] == 0:
        return np.ones(1, dtype=np.int64)
    if M.shape[0] == 1:
        return trim(M[0, 0] % p)
    n, W = M.shape[0], M.shape[2]
    need = n * (W - 1) + 1  # minors have degree at most n * max entry degree
    if W < need:
        M = np.concatenate([M, np.zeros((n, n, need - W), dtype=M.dtype)], axis=2)
    return _ACTIVE["polymat_det"](np.ascontiguousarray(M, dtype=np.int64), p)


def usable(p: int) -> bool:
    return p < PRIME_LIMIT
