"""Compiled inner loops: last-position violation test and depth-first search.

A repetition of length ``L`` and period ``p`` violates the threshold
``num/den`` when ``L*den >= num*p`` (or ``>`` when ``strict``).

``new_violation`` looks only at repetitions that end at position ``n-1`` of
``w`` and start at or after ``lo``:

* ordinary factors ending at ``n-1``;
* squares shorter than ``sq_bound`` ending at ``n-1``;
* circular factors ``v t`` where ``v`` is a suffix of ``w[:n]`` and ``t``
  lies in ``w[lo:n-|v|]``.

The circular part needs ``num >= 2*den``.  For a period ``p`` it splits on
``|v| >= p`` (then ``t`` must continue the last ``p`` symbols periodically)
and ``|v| < p`` (then ``t`` carries a whole period and ``v`` must match the
end of the first period of ``t``; this needs ``|t| >= p``, which an exponent
of at least 2 guarantees).

Result codes: 0 none, 1 ordinary power, 2 short square, 3 circular.
``out`` receives ``period, length, t_start, t_len, v_len`` (for codes 1 and
2, ``t_start`` is the factor start and the other two are zero).
"""

import numpy as np
from numba import njit

NONE, ORDINARY, SQUARE, CIRCULAR = 0, 1, 2, 3


@njit(cache=True, inline="always")
def _viol(length, period, num, den, strict):
    lhs = length * den
    rhs = num * period
    if strict:
        return lhs > rhs
    return lhs >= rhs


@njit(cache=True)
def new_violation(w, n, lo, num, den, strict, circular, sq_bound, out):
    span = n - lo
    for p in range(1, span + 1):
        # longest suffix of w[lo:n] with period p
        r = p
        while n - 1 - r >= lo and w[n - 1 - r] == w[n - 1 - r + p]:
            r += 1
        if _viol(r, p, num, den, strict):
            out[0] = p
            out[1] = r
            out[2] = n - r
            out[3] = 0
            out[4] = 0
            return ORDINARY
        if 2 * p < sq_bound and r >= 2 * p:
            out[0] = p
            out[1] = 2 * p
            out[2] = n - 2 * p
            out[3] = 0
            out[4] = 0
            return SQUARE
    if not circular:
        return NONE
    for p in range(1, span + 1):
        if not _viol(span, p, num, den, strict):
            break
        r = p
        while n - 1 - r >= lo and w[n - 1 - r] == w[n - 1 - r + p]:
            r += 1
        zs = n - p
        # shortest violating length; candidates starting later cannot fit
        lmin = (num * p) // den
        if strict or lmin * den < num * p:
            lmin += 1
        last = n - lmin
        # |v| >= p: t is a prefix of (w[n-p:n])^omega
        for a in range(lo, last + 1):
            m = 0
            cap = n - a
            while m < cap and w[a + m] == w[zs + m % p]:
                m += 1
            value = r + m
            if value > cap:
                value = cap
            if _viol(value, p, num, den, strict):
                if r <= cap - m:
                    vl = r
                    tl = m
                else:
                    vl = cap - m
                    if vl < p:
                        vl = p
                    tl = cap - vl
                out[0] = p
                out[1] = vl + tl
                out[2] = a
                out[3] = tl
                out[4] = vl
                return CIRCULAR
        # |v| < p: t = w[a:a+m] with m >= p, v matches w[a+p-|v|:a+p]
        for a in range(lo, last + 1):
            j = a + p - 1
            b = 0
            while b < p - 1 and w[j - b] == w[n - 1 - b]:
                b += 1
            if b == 0:
                continue
            c = 0
            while a + p + c < n and w[a + c] == w[a + p + c]:
                c += 1
            mmax = p + c
            cap = n - a
            value = b + mmax
            if value > cap:
                value = cap
            if _viol(value, p, num, den, strict):
                if b <= cap - mmax:
                    vl = b
                    tl = mmax
                else:
                    vl = cap - mmax
                    if vl < 1:
                        vl = 1
                    tl = cap - vl
                out[0] = p
                out[1] = vl + tl
                out[2] = a
                out[3] = tl
                out[4] = vl
                return CIRCULAR
    return NONE


@njit(cache=True)
def windowed_scan(w, window, num, den, strict, circular, out):
    """First position whose trailing window holds a violation, or -1.

    Every factor (and every circular factor ``v t`` with ``t u v`` a factor)
    of length at most ``window`` is examined exactly once, at the end
    position of ``v``.
    """
    for n in range(1, w.shape[0] + 1):
        lo = n - window
        if lo < 0:
            lo = 0
        code = new_violation(w, n, lo, num, den, strict, circular, 0, out)
        if code != NONE:
            out[5] = code
            return n
    return -1


@njit(cache=True)
def dfs(seed, k, num, den, strict, circular, sq_bound, max_len, canonical, best_w):
    """Exhaustive lexicographic extension of ``seed`` (assumed valid).

    Returns ``(best_length, nodes, capped)``; ``best_w[:best_length]`` holds
    the lexicographically least longest word.  ``nodes`` counts valid words
    strictly longer than the seed.  With ``canonical`` a new letter may only
    be the smallest unused one.
    """
    n0 = seed.shape[0]
    w = np.zeros(max_len + 1, dtype=np.int8)
    nxt = np.zeros(max_len + 1, dtype=np.int64)
    lim = np.zeros(max_len + 1, dtype=np.int64)
    out = np.zeros(6, dtype=np.int64)
    top = -1
    for i in range(n0):
        w[i] = seed[i]
        best_w[i] = seed[i]
        if seed[i] > top:
            top = seed[i]
    best = n0
    nodes = 0
    capped = False
    if n0 >= max_len:
        return best, nodes, n0 > 0
    pos = n0
    nxt[pos] = 0
    lim[pos] = min(k, top + 2) if canonical else k
    while pos >= n0:
        if nxt[pos] >= lim[pos]:
            pos -= 1
            if pos >= n0:
                nxt[pos] += 1
            continue
        w[pos] = nxt[pos]
        code = new_violation(w, pos + 1, 0, num, den, strict, circular, sq_bound, out)
        if code != NONE:
            nxt[pos] += 1
            continue
        nodes += 1
        if pos + 1 > best:
            best = pos + 1
            for i in range(best):
                best_w[i] = w[i]
        if pos + 1 >= max_len:
            capped = True
            nxt[pos] += 1
            continue
        if canonical:
            used = lim[pos]
            if w[pos] + 1 == used and used < k:
                used += 1
            lim[pos + 1] = used
        else:
            lim[pos + 1] = k
        pos += 1
        nxt[pos] = 0
    return best, nodes, capped


@njit(cache=True)
def _z_array(s):
    n = s.shape[0]
    z = np.zeros(n, dtype=np.int64)
    left = 0
    right = 0
    for i in range(1, n):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < n and s[z[i]] == s[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left = i
            right = i + z[i]
    return z


@njit(cache=True)
def _get(z, i):
    if 0 <= i < z.shape[0]:
        return z[i]
    return 0


@njit(cache=True)
def find_square(w):
    """``(start, period)`` of some square factor of ``w``, or ``(-1, 0)``.

    Divide and conquer on the midpoint of each segment: squares crossing it
    are found from four Z-arrays in linear time, O(n log n) overall.
    """
    stack_lo = np.zeros(128, dtype=np.int64)
    stack_hi = np.zeros(128, dtype=np.int64)
    stack_lo[0] = 0
    stack_hi[0] = w.shape[0]
    top = 1
    while top > 0:
        top -= 1
        lo = stack_lo[top]
        hi = stack_hi[top]
        n = hi - lo
        if n < 2:
            continue
        nu = n // 2
        nv = n - nu
        u = w[lo:lo + nu]
        v = w[lo + nu:hi]
        ur = u[::-1].copy()
        vr = v[::-1].copy()
        sep = np.full(1, -1, dtype=w.dtype)
        z1 = _z_array(ur)
        z2 = _z_array(np.concatenate((v, sep, u)))
        z3 = _z_array(np.concatenate((ur, sep, vr)))
        z4 = _z_array(v)
        for cntr in range(n):
            if cntr < nu:
                half = nu - cntr
                k1 = _get(z1, nu - cntr)
                k2 = _get(z2, nv + 1 + cntr)
                left = True
            else:
                half = cntr - nu + 1
                k1 = _get(z3, nu + 1 + nv - 1 - (cntr - nu))
                k2 = _get(z4, cntr - nu + 1)
                left = False
            if k1 + k2 < half:
                continue
            a = max(1, half - k2)
            b = min(half, k1)
            for l1 in range(a, b + 1):
                if left and l1 == half:
                    break
                if left:
                    pos = cntr - l1
                else:
                    pos = cntr - half - l1 + 1
                return lo + pos, half
        stack_lo[top] = lo
        stack_hi[top] = lo + nu
        stack_lo[top + 1] = lo + nu
        stack_hi[top + 1] = hi
        top += 2
    return -1, 0
