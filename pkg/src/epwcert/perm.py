"""Permutations of {0..n-1} as image tuples: p[k] is the image of k."""
from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

Perm = tuple


def from_cycles(cycles: str | Iterable[Sequence[int]], n: int = 6) -> Perm:
    """Parse ``"(03)(14)(25)"`` or a list of cycles."""
    if isinstance(cycles, str):
        parsed = []
        for chunk in cycles.replace(" ", "").split(")"):
            chunk = chunk.lstrip("(")
            if chunk:
                parsed.append([int(ch) for ch in chunk])
        cycles = parsed
    image = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            image[a] = b
    if sorted(image) != list(range(n)):
        raise ValueError(f"cycles do not define a permutation: {cycles}")
    return tuple(image)


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[k]] for k in range(len(q)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for k, v in enumerate(p):
        inv[v] = k
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(n))


def closure(generators: Sequence[Perm]) -> set[Perm]:
    n = len(generators[0])
    group = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(s, g)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def symmetric_group(n: int) -> list[Perm]:
    return list(permutations(range(n)))


def sign(p: Perm) -> int:
    seen = [False] * len(p)
    s = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = p[k]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def cycle_string(p: Perm) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        k = p[start]
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = p[k]
        parts.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def orbits(points: Iterable, group: Iterable[Perm], act) -> list[list]:
    """Orbits of ``act(g, x)`` over the group, each sorted by first discovery."""
    group = list(group)
    remaining = list(points)
    seen = set()
    out = []
    for x in remaining:
        if x in seen:
            continue
        orbit = {act(g, x) for g in group}
        seen |= orbit
        out.append(sorted(orbit, key=repr))
    return out
