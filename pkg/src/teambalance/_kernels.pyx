# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled lazy greedy engine.

C mirror of ``_pykernels.PyGreedyEngine``: same queue discipline, same
exact integer priorities, same (expert, task) tie-breaking, so both
backends emit identical addition sequences. Skill sets arrive packed as
uint64 words; priorities are gain_count * (scale / task_size) and the
caller guarantees scale fits comfortably in int64.
"""

from libc.stdlib cimport calloc, free
from libc.stdint cimport uint64_t, int64_t, int32_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)


cdef inline bint _before(int64_t pa, int32_t ia, int32_t ja,
                         int64_t pb, int32_t ib, int32_t jb) noexcept:
    # pops first: larger priority, then smaller (expert, task)
    if pa != pb:
        return pa > pb
    if ia != ib:
        return ia < ib
    return ja < jb


cdef class ExtGreedyEngine:

    cdef int n, m, W
    cdef readonly int64_t scale
    cdef readonly int64_t scaled_coverage
    cdef uint64_t* expert_words
    cdef uint64_t* task_words
    cdef uint64_t* cover_words
    cdef int64_t* weights
    cdef int32_t* counts
    cdef int32_t* load
    cdef int32_t* remaining
    cdef int32_t* versions
    cdef int capacity_left
    cdef int64_t* h_prio
    cdef int32_t* h_i
    cdef int32_t* h_j
    cdef int32_t* h_stamp
    cdef int heap_size
    cdef int64_t* p_prio
    cdef int32_t* p_i
    cdef int32_t* p_j
    cdef int32_t* p_stamp
    cdef int parked_size

    backend = "ext"

    def __cinit__(self, uint64_t[:, ::1] expert_words, uint64_t[:, ::1] task_words,
                  object task_sizes, int64_t scale):
        cdef int i, j, w, total
        cdef int64_t cnt
        self.n = expert_words.shape[0]
        self.m = task_words.shape[0]
        self.W = expert_words.shape[1]
        if task_words.shape[1] != self.W:
            raise ValueError("expert and task words disagree on width")
        self.scale = scale
        self.scaled_coverage = 0
        self.capacity_left = 0
        self.expert_words = <uint64_t*> calloc(self.n * self.W, sizeof(uint64_t))
        self.task_words = <uint64_t*> calloc(self.m * self.W, sizeof(uint64_t))
        self.cover_words = <uint64_t*> calloc(self.m * self.W, sizeof(uint64_t))
        self.weights = <int64_t*> calloc(self.m, sizeof(int64_t))
        self.counts = <int32_t*> calloc(self.m, sizeof(int32_t))
        self.load = <int32_t*> calloc(self.n, sizeof(int32_t))
        self.remaining = <int32_t*> calloc(self.n, sizeof(int32_t))
        self.versions = <int32_t*> calloc(self.m, sizeof(int32_t))
        for i in range(self.n):
            for w in range(self.W):
                self.expert_words[i * self.W + w] = expert_words[i, w]
        for j in range(self.m):
            for w in range(self.W):
                self.task_words[j * self.W + w] = task_words[j, w]
            self.weights[j] = scale // <int64_t> task_sizes[j]

        # two passes: count pairs with positive static gain, then fill + heapify
        total = 0
        for i in range(self.n):
            for j in range(self.m):
                if self._static_count(i, j) > 0:
                    total += 1
        self.h_prio = <int64_t*> calloc(max(total, 1), sizeof(int64_t))
        self.h_i = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.h_j = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.h_stamp = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.p_prio = <int64_t*> calloc(max(total, 1), sizeof(int64_t))
        self.p_i = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.p_j = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.p_stamp = <int32_t*> calloc(max(total, 1), sizeof(int32_t))
        self.parked_size = 0
        self.heap_size = 0
        for i in range(self.n):
            for j in range(self.m):
                cnt = self._static_count(i, j)
                if cnt > 0:
                    self.h_prio[self.heap_size] = cnt * self.weights[j]
                    self.h_i[self.heap_size] = i
                    self.h_j[self.heap_size] = j
                    self.h_stamp[self.heap_size] = 0
                    self.heap_size += 1
        for i in range(self.heap_size // 2 - 1, -1, -1):
            self._sift_down(i)

    def __dealloc__(self):
        free(self.expert_words)
        free(self.task_words)
        free(self.cover_words)
        free(self.weights)
        free(self.counts)
        free(self.load)
        free(self.remaining)
        free(self.versions)
        free(self.h_prio)
        free(self.h_i)
        free(self.h_j)
        free(self.h_stamp)
        free(self.p_prio)
        free(self.p_i)
        free(self.p_j)
        free(self.p_stamp)

    cdef inline int64_t _static_count(self, int i, int j) noexcept:
        cdef int w
        cdef int64_t c = 0
        for w in range(self.W):
            c += __builtin_popcountll(self.expert_words[i * self.W + w]
                                      & self.task_words[j * self.W + w])
        return c

    cdef inline int64_t _gain_count(self, int i, int j) noexcept:
        cdef int w
        cdef int64_t c = 0
        for w in range(self.W):
            c += __builtin_popcountll(self.expert_words[i * self.W + w]
                                      & self.task_words[j * self.W + w]
                                      & ~self.cover_words[j * self.W + w])
        return c

    cdef inline bint _less(self, int a, int b) noexcept:
        return _before(self.h_prio[a], self.h_i[a], self.h_j[a],
                       self.h_prio[b], self.h_i[b], self.h_j[b])

    cdef inline void _swap(self, int a, int b) noexcept:
        self.h_prio[a], self.h_prio[b] = self.h_prio[b], self.h_prio[a]
        self.h_i[a], self.h_i[b] = self.h_i[b], self.h_i[a]
        self.h_j[a], self.h_j[b] = self.h_j[b], self.h_j[a]
        self.h_stamp[a], self.h_stamp[b] = self.h_stamp[b], self.h_stamp[a]

    cdef void _sift_down(self, int pos) noexcept:
        cdef int child
        while True:
            child = 2 * pos + 1
            if child >= self.heap_size:
                return
            if child + 1 < self.heap_size and self._less(child + 1, child):
                child += 1
            if self._less(child, pos):
                self._swap(child, pos)
                pos = child
            else:
                return

    cdef void _sift_up(self, int pos) noexcept:
        cdef int parent
        while pos > 0:
            parent = (pos - 1) >> 1
            if self._less(pos, parent):
                self._swap(pos, parent)
                pos = parent
            else:
                return

    cdef void _push(self, int64_t prio, int32_t i, int32_t j, int32_t stamp) noexcept:
        cdef int pos = self.heap_size
        self.h_prio[pos] = prio
        self.h_i[pos] = i
        self.h_j[pos] = j
        self.h_stamp[pos] = stamp
        self.heap_size += 1
        self._sift_up(pos)

    cdef void _pop_top(self) noexcept:
        self.heap_size -= 1
        if self.heap_size > 0:
            self._swap(0, self.heap_size)
            self._sift_down(0)

    def grant(self, int extra):
        cdef int i, k
        for i in range(self.n):
            if self.remaining[i] == 0:
                self.capacity_left += 1
            self.remaining[i] += extra
        for k in range(self.parked_size):
            self._push(self.p_prio[k], self.p_i[k], self.p_j[k], self.p_stamp[k])
        self.parked_size = 0

    def run_phase(self):
        cdef list additions = []
        cdef int64_t prio, count
        cdef int32_t i, j, stamp
        cdef int w
        while self.heap_size > 0 and self.capacity_left > 0:
            prio = self.h_prio[0]
            i = self.h_i[0]
            j = self.h_j[0]
            stamp = self.h_stamp[0]
            self._pop_top()
            if self.remaining[i] == 0:
                self.p_prio[self.parked_size] = prio
                self.p_i[self.parked_size] = i
                self.p_j[self.parked_size] = j
                self.p_stamp[self.parked_size] = stamp
                self.parked_size += 1
                continue
            if stamp == self.versions[j]:
                count = prio // self.weights[j]
                self.load[i] += 1
                self.remaining[i] -= 1
                if self.remaining[i] == 0:
                    self.capacity_left -= 1
                for w in range(self.W):
                    self.cover_words[j * self.W + w] |= (
                        self.expert_words[i * self.W + w] & self.task_words[j * self.W + w])
                self.counts[j] += <int32_t> count
                self.scaled_coverage += prio
                self.versions[j] += 1
                additions.append((int(i), int(j), int(count)))
            else:
                count = self._gain_count(i, j)
                if count > 0:
                    self._push(count * self.weights[j], i, j, self.versions[j])
        return additions

    @property
    def loads(self):
        return [self.load[i] for i in range(self.n)]

    @property
    def cover_counts(self):
        return [self.counts[j] for j in range(self.m)]
