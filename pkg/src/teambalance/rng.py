"""Seeded 64-bit linear congruential generator.

All randomness in the toolkit flows through this generator so that runs
are reproducible bit-for-bit from the seed alone, including across
reimplementations in other languages. The update is

    state <- (state * 6364136223846793005 + 1442695040888963407) mod 2^64

and ``next_u64`` returns the updated state. Derived helpers (bounded ints,
shuffles, sampling) are defined in terms of ``next_u64`` only.
"""

from __future__ import annotations

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Rng64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def next_below(self, bound: int) -> int:
        """Integer in [0, bound). Plain modulo: bias is irrelevant here,
        cross-implementation determinism is not."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def next_unit(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, iterating from the last position down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct ints from [0, population), by partial Fisher-Yates."""
        if k > population:
            raise ValueError("sample larger than population")
        pool = list(range(population))
        for i in range(k):
            j = i + self.next_below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def weighted_sample(self, weights: list[float], k: int) -> list[int]:
        """k distinct indices drawn without replacement, proportional to weights."""
        if k > len(weights):
            raise ValueError("sample larger than population")
        remaining = list(range(len(weights)))
        live = [float(w) for w in weights]
        picked = []
        for _ in range(k):
            total = sum(live[i] for i in remaining)
            u = self.next_unit() * total
            acc = 0.0
            chosen = len(remaining) - 1
            for pos, i in enumerate(remaining):
                acc += live[i]
                if u < acc:
                    chosen = pos
                    break
            picked.append(remaining.pop(chosen))
        return picked
