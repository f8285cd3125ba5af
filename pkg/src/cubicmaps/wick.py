"""Brute-force census of vertex matchings, the combinatorial oracle.

Every matching of the 3p half-edges of p trivalent vertices is enumerated,
its faces counted through the rotation system, and the result tallied by
genus and connectivity.  Totals are exact integers; nothing is sampled.

The inner loop runs in the compiled kernel ``_wickcore`` when the extension
built, with ``_wickpure`` as the drop-in fallback (identical output,
enumeration order, and branch structure).
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass

from . import _wickpure
from .numbers import double_factorial

try:
    from . import _wickcore
except ImportError:  # extension not built; fall back silently
    _wickcore = None

DEFAULT_ENGINE = "compiled" if _wickcore is not None else "pure"

MAX_VERTICES = 6  # (3p-1)!! leaves; p = 8 would be ~3.2e10, past the design budget


def available_engines() -> tuple[str, ...]:
    return ("compiled", "pure") if _wickcore is not None else ("pure",)


@dataclass(frozen=True)
class PairingTopology:
    """Classification of one explicit matching."""

    vertices: int
    faces: int
    components: int
    genus: int | None  # None when the map is disconnected

    @property
    def connected(self) -> bool:
        return self.components == 1


@dataclass(frozen=True)
class PairingCensus:
    vertices: int
    total: int
    connected: dict[int, int]  # genus -> count
    disconnected: int
    engine: str
    workers: int
    elapsed_ms: int


def genus_of_pairing(pairs) -> PairingTopology:
    """Classify an explicit matching given as (i, j) half-edge pairs.

    Half-edge h sits on vertex h // 3.  The matching must be a fixed-point-free
    involution covering 0..3p-1 for an even vertex count p.
    """
    pairs = [(int(i), int(j)) for i, j in pairs]
    n = 2 * len(pairs)
    if n % 3:
        raise ValueError(f"{n} half-edges do not form trivalent vertices")
    p = n // 3
    if p % 2:
        raise ValueError(f"odd vertex count {p} admits no odd-moment pairing")
    match = [-1] * n
    for i, j in pairs:
        if i == j:
            raise ValueError(f"half-edge {i} paired with itself")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"half-edge pair ({i}, {j}) out of range for n={n}")
        if match[i] >= 0 or match[j] >= 0:
            raise ValueError(f"half-edge reused in pair ({i}, {j})")
        match[i] = j
        match[j] = i
    faces, comps = _wickpure.analyze(match, n)
    genus = None
    if comps == 1:
        twice = p // 2 + 2 - faces
        if twice % 2 or twice < 0:
            raise ArithmeticError("Euler count is not an even nonnegative integer")
        genus = twice // 2
    return PairingTopology(vertices=p, faces=faces, components=comps, genus=genus)


def _engine_module(engine: str):
    if engine == "auto":
        engine = DEFAULT_ENGINE
    if engine == "compiled":
        if _wickcore is None:
            raise RuntimeError("compiled kernel not built; use engine='pure'")
        return _wickcore, "compiled"
    if engine == "pure":
        return _wickpure, "pure"
    raise ValueError(f"unknown engine {engine!r}")


def census(p: int, workers: int = 1, engine: str = "auto") -> PairingCensus:
    """Full exact census over all (3p-1)!! matchings of p trivalent vertices.

    ``workers`` > 1 splits on the partner of half-edge 0 (3p-1 equal-size
    branches) across processes; the merge order is fixed, so results are
    byte-identical regardless of worker count.
    """
    if p % 2 or not 2 <= p <= MAX_VERTICES:
        raise ValueError(f"p must be even with 2 <= p <= {MAX_VERTICES}")
    mod, engine_name = _engine_module(engine)
    start = time.perf_counter()
    branches = list(range(1, 3 * p))
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.starmap(mod.count_branch, [(p, t) for t in branches], chunksize=1)
    else:
        parts = [mod.count_branch(p, t) for t in branches]
    total = sum(part[0] for part in parts)
    disconnected = sum(part[1] for part in parts)
    maxg = (p // 2 + 1) // 2
    tallies = [sum(part[2][g] for part in parts) for g in range(maxg + 1)]
    elapsed_ms = int(round(1000 * (time.perf_counter() - start)))
    if total != double_factorial(3 * p - 1):
        raise ArithmeticError(f"census total {total} != (3p-1)!!")
    table_max = min(p // 2, 2)
    connected = {g: (tallies[g] if g < len(tallies) else 0) for g in range(table_max + 1)}
    return PairingCensus(
        vertices=p,
        total=total,
        connected=connected,
        disconnected=disconnected,
        engine=engine_name,
        workers=workers,
        elapsed_ms=elapsed_ms,
    )
