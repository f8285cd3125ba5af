# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled matching-census kernel.

Exhaustive enumeration of fixed-point-free involutions on 3p half-edges with
face/connectivity classification at each leaf.  Mirrors ``_wickpure``
branch-for-branch; only the arithmetic is C.
"""


cdef inline int _sigma(int h) noexcept nogil:
    return h - h % 3 + (h % 3 + 1) % 3


cdef void _leaf(int* match, int n, long long* out) noexcept nogil:
    cdef int visited = 0, faces = 0, h0, c, p, h, j, ra, rb, i, comps
    cdef int parent[6]
    for h0 in range(n):
        if visited >> h0 & 1:
            continue
        faces += 1
        c = h0
        while not (visited >> c & 1):
            visited |= 1 << c
            c = _sigma(match[c])
    p = n / 3
    for i in range(p):
        parent[i] = i
    comps = p
    for h in range(n):
        j = match[h]
        if j > h:
            ra = h / 3
            while parent[ra] != ra:
                ra = parent[ra]
            rb = j / 3
            while parent[rb] != rb:
                rb = parent[rb]
            if ra != rb:
                parent[ra] = rb
                comps -= 1
    out[0] += 1
    if comps == 1:
        out[2 + ((p / 2 + 2 - faces) >> 1)] += 1
    else:
        out[1] += 1


cdef void _recurse(int* match, int n, long long* out) noexcept nogil:
    cdef int h = 0, t
    while h < n and match[h] >= 0:
        h += 1
    if h == n:
        _leaf(match, n, out)
        return
    for t in range(h + 1, n):
        if match[t] < 0:
            match[h] = t
            match[t] = h
            _recurse(match, n, out)
            match[h] = -1
            match[t] = -1


def count_branch(int p, int first_partner):
    """Totals over all matchings that pair half-edge 0 with ``first_partner``.

    Returns (total, disconnected, genus_counts) exactly as the pure engine.
    """
    cdef int n = 3 * p
    cdef int match[18]
    cdef long long out[10]
    cdef int i
    if p < 2 or p > 6 or p % 2:
        raise ValueError("p must be 2, 4, or 6")
    if first_partner < 1 or first_partner >= n:
        raise ValueError("first partner out of range")
    for i in range(n):
        match[i] = -1
    for i in range(10):
        out[i] = 0
    match[0] = first_partner
    match[first_partner] = 0
    with nogil:
        _recurse(&match[0], n, &out[0])
    maxg = (p // 2 + 1) // 2
    return out[0], out[1], tuple(out[2 + g] for g in range(maxg + 1))
