"""Random diagram pairs related by one Reidemeister patch, built from braid
closures: RI is a stabilization, RII inserts g g^-1, RIII swaps
s_i s_(i+1) s_i for s_(i+1) s_i s_(i+1) (same signs).  Framings are random."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Tuple

from .diagrams import CANONICAL, REVERSED, TangleDiagram, braid_tangle


@dataclass
class PatchPair:
    kind: str
    n: int
    word: List[int]
    n2: int
    word2: List[int]
    seed: int

    def diagrams(self) -> Tuple[TangleDiagram, TangleDiagram]:
        rng = random.Random(self.seed)
        f1 = [rng.choice((CANONICAL, REVERSED)) for _ in self.word]
        f2 = [rng.choice((CANONICAL, REVERSED)) for _ in self.word2]
        a = braid_tangle(self.n, self.word, close=True, name=f"{self.kind}-a", framings=f1)
        b = braid_tangle(self.n2, self.word2, close=True, name=f"{self.kind}-b", framings=f2)
        return a, b


def _word(rng: random.Random, n: int, length: int) -> List[int]:
    return [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]


def random_pair(rng: random.Random, kind: str, max_len: int = 4) -> PatchPair:
    n = 3
    w = _word(rng, n, rng.randint(1, max_len))
    pos = rng.randint(0, len(w))
    if kind == "RI":
        return PatchPair(kind, n, w, n + 1, w + [rng.choice((1, -1)) * n], rng.randrange(1 << 30))
    if kind == "RII":
        g = rng.choice((1, -1)) * rng.randint(1, n - 1)
        return PatchPair(kind, n, w, n, w[:pos] + [g, -g] + w[pos:], rng.randrange(1 << 30))
    if kind == "RIII":
        e = rng.choice((1, -1))
        a = w[:pos] + [e, 2 * e, e] + w[pos:]
        b = w[:pos] + [2 * e, e, 2 * e] + w[pos:]
        return PatchPair(kind, n, a, n, b, rng.randrange(1 << 30))
    raise ValueError(kind)


def random_pairs(count: int = 20, seed: int = 2024) -> List[PatchPair]:
    rng = random.Random(seed)
    kinds = ["RI", "RII", "RIII"]
    return [random_pair(rng, kinds[k % 3]) for k in range(count)]
