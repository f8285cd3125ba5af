"""Pure-Python matching-census engine.

Same contract as the compiled kernel ``_wickcore``: exhaustively enumerate
fixed-point-free involutions on the 3p half-edges of p trivalent vertices,
classify each matching by face count (cycles of rotation-after-matching) and
vertex connectivity, and tally by genus.  Kept branch-for-branch identical to
the kernel so the two engines can be cross-checked on the same inputs.
"""

from __future__ import annotations


def sigma(h: int) -> int:
    """Counterclockwise rotation to the next half-edge on the same vertex."""
    return h - h % 3 + (h % 3 + 1) % 3


def analyze(match, n: int) -> tuple[int, int]:
    """(faces, vertex components) of a complete matching on n half-edges."""
    visited = 0
    faces = 0
    for h0 in range(n):
        if visited >> h0 & 1:
            continue
        faces += 1
        c = h0
        while not visited >> c & 1:
            visited |= 1 << c
            c = sigma(match[c])
    p = n // 3
    parent = list(range(p))
    comps = p
    for h in range(n):
        j = match[h]
        if j > h:
            ra = h // 3
            while parent[ra] != ra:
                ra = parent[ra]
            rb = j // 3
            while parent[rb] != rb:
                rb = parent[rb]
            if ra != rb:
                parent[ra] = rb
                comps -= 1
    return faces, comps


def _recurse(match: list, n: int, out: list) -> None:
    h = 0
    while h < n and match[h] >= 0:
        h += 1
    if h == n:
        faces, comps = analyze(match, n)
        out[0] += 1
        if comps == 1:
            out[2 + ((n // 6 + 2 - faces) >> 1)] += 1
        else:
            out[1] += 1
        return
    for t in range(h + 1, n):
        if match[t] < 0:
            match[h] = t
            match[t] = h
            _recurse(match, n, out)
            match[h] = -1
            match[t] = -1


def count_branch(p: int, first_partner: int):
    """Totals over all matchings that pair half-edge 0 with ``first_partner``.

    Returns (total, disconnected, genus_counts) with genus_counts running
    from genus 0 to the maximal genus a connected p-vertex map can reach.
    """
    if p < 2 or p > 6 or p % 2:
        raise ValueError("p must be 2, 4, or 6")
    n = 3 * p
    if not 1 <= first_partner < n:
        raise ValueError("first partner out of range")
    match = [-1] * n
    match[0] = first_partner
    match[first_partner] = 0
    out = [0] * 10
    _recurse(match, n, out)
    maxg = (p // 2 + 1) // 2
    return out[0], out[1], tuple(out[2 + g] for g in range(maxg + 1))
