"""Pure-Python lazy greedy engine.

This is the fallback for the compiled kernel in ``_kernels.pyx``; both
implement the same contract and must produce identical addition sequences
(see tests/test_backends.py). Marginal gains are compared exactly: every
gain count/|J_j| is scaled by lcm(task sizes)/|J_j| to a common integer
priority, and ties break on the smallest (expert, task) pair, which the
heap tuples encode directly.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

from .bitset import pack_masks, words_needed


class PyGreedyEngine:
    """Capacity-constrained lazy greedy over expert-task pairs.

    Lifecycle: construct, then alternate ``grant(k)`` / ``run_phase()``.
    A phase adds pairs in non-increasing true-gain order until no positive
    gain remains or every expert is out of capacity. Queue entries carry a
    per-task version stamp; an entry whose stamp is current needs no
    re-evaluation because gains for a task change only when the task's
    covered set grows.
    """

    backend = "python"

    def __init__(self, expert_masks: list[int], task_masks: list[int], task_sizes: list[int], num_skills: int):
        self.n = len(expert_masks)
        self.m = len(task_masks)
        self.expert_masks = expert_masks
        self.task_masks = task_masks
        self.task_sizes = task_sizes
        self.scale = math.lcm(*set(task_sizes))
        self.weights = [self.scale // s for s in task_sizes]
        self.cover_masks = [0] * self.m
        self.cover_counts = [0] * self.m
        self.loads = [0] * self.n
        self.remaining = [0] * self.n
        self.capacity_left = 0  # number of experts with remaining uses
        self.versions = [0] * self.m
        self.scaled_coverage = 0
        self.parked: list[tuple[int, int, int, int]] = []
        self.heap = self._initial_heap(num_skills)

    def _initial_heap(self, num_skills):
        expert_words = pack_masks(self.expert_masks, num_skills)
        task_words = pack_masks(self.task_masks, num_skills)
        heap = []
        for i in range(self.n):
            counts = np.bitwise_count(expert_words[i] & task_words).sum(axis=1)
            for j in np.flatnonzero(counts):
                heap.append((-int(counts[j]) * self.weights[j], i, int(j), 0))
        heapq.heapify(heap)
        return heap

    def grant(self, extra: int) -> None:
        """Give every expert `extra` more uses and revive parked queue entries."""
        for i in range(self.n):
            if self.remaining[i] == 0:
                self.capacity_left += 1
            self.remaining[i] += extra
        if self.parked:
            for entry in self.parked:
                heapq.heappush(self.heap, entry)
            self.parked.clear()

    def run_phase(self) -> list[tuple[int, int, int]]:
        """Greedy additions until gains are exhausted or capacity runs out.

        Returns the accepted (expert, task, gained_count) triples in order.
        """
        additions = []
        heap = self.heap
        while heap and self.capacity_left > 0:
            entry = heapq.heappop(heap)
            neg_prio, i, j, stamp = entry
            if self.remaining[i] == 0:
                self.parked.append(entry)
                continue
            if stamp == self.versions[j]:
                gained = (-neg_prio) // self.weights[j]
                self._accept(i, j, gained)
                additions.append((i, j, gained))
            else:
                add_mask = self.expert_masks[i] & self.task_masks[j] & ~self.cover_masks[j]
                count = add_mask.bit_count()
                if count > 0:
                    heapq.heappush(heap, (-count * self.weights[j], i, j, self.versions[j]))
        return additions

    def _accept(self, i, j, gained):
        self.loads[i] += 1
        self.remaining[i] -= 1
        if self.remaining[i] == 0:
            self.capacity_left -= 1
        self.cover_masks[j] |= self.expert_masks[i] & self.task_masks[j]
        self.cover_counts[j] += gained
        self.scaled_coverage += gained * self.weights[j]
        self.versions[j] += 1
