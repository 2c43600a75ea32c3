"""Greedy-engine backend selection.

The compiled kernel is preferred when it imported cleanly and the
instance fits its int64 priority arithmetic; otherwise the pure-Python
engine is used. ``TEAMBALANCE_BACKEND=python|ext`` (or the ``backend=``
argument threaded through the solvers) forces a choice.
"""

from __future__ import annotations

import math
import os

from ._pykernels import PyGreedyEngine
from .bitset import pack_masks

try:
    from ._kernels import ExtGreedyEngine
except ImportError:
    ExtGreedyEngine = None

# priorities are count * (scale / size) <= scale; leave headroom below 2^63
_MAX_EXT_SCALE = 1 << 61


def extension_available() -> bool:
    return ExtGreedyEngine is not None


def make_engine(expert_masks, task_masks, task_sizes, num_skills, backend=None):
    choice = backend or os.environ.get("TEAMBALANCE_BACKEND") or "auto"
    scale = math.lcm(*set(task_sizes))
    if choice == "python":
        return PyGreedyEngine(expert_masks, task_masks, task_sizes, num_skills)
    if choice == "ext":
        if ExtGreedyEngine is None:
            raise RuntimeError("compiled kernel is not available; rebuild or use backend='python'")
        if scale > _MAX_EXT_SCALE:
            raise RuntimeError("task sizes produce priorities too large for the compiled kernel")
        return _make_ext(expert_masks, task_masks, task_sizes, num_skills, scale)
    if choice != "auto":
        raise ValueError(f"unknown backend {choice!r}")
    if ExtGreedyEngine is not None and scale <= _MAX_EXT_SCALE:
        return _make_ext(expert_masks, task_masks, task_sizes, num_skills, scale)
    return PyGreedyEngine(expert_masks, task_masks, task_sizes, num_skills)


def _make_ext(expert_masks, task_masks, task_sizes, num_skills, scale):
    expert_words = pack_masks(expert_masks, num_skills)
    task_words = pack_masks(task_masks, num_skills)
    return ExtGreedyEngine(expert_words, task_words, list(task_sizes), scale)
