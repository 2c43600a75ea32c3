import pytest
from conftest import random_instance

from teambalance._backend import extension_available, make_engine
from teambalance.greedy import greedy_cover
from teambalance.io import generate_instance
from teambalance.threshold import threshold_greedy

needs_ext = pytest.mark.skipif(
    not extension_available(), reason="compiled kernel not built"
)


def run_chain(instance, backend, caps):
    engine = make_engine(
        instance.expert_masks,
        instance.task_masks,
        instance.task_sizes,
        len(instance.skill_names),
        backend=backend,
    )
    phases = []
    for _ in range(caps):
        engine.grant(1)
        phases.append(engine.run_phase())
    return phases, engine.scaled_coverage, engine.scale


@needs_ext
def test_engines_emit_identical_addition_sequences():
    for seed in range(40):
        inst = random_instance(seed, max_n=8, max_m=7, max_skills=9)
        py = run_chain(inst, "python", inst.m)
        ext = run_chain(inst, "ext", inst.m)
        assert py == ext, seed


@needs_ext
def test_engines_identical_on_generated_instance():
    inst = generate_instance(60, 80, 16, 2.4, 2.0, seed=3)
    py = run_chain(inst, "python", 6)
    ext = run_chain(inst, "ext", 6)
    assert py == ext


@needs_ext
def test_solver_results_backend_independent():
    for seed in range(10):
        inst = random_instance(seed, max_n=7, max_m=6)
        for lam in (0.5, 2):
            a_py, t_py = threshold_greedy(inst, lam, backend="python")
            a_ext, t_ext = threshold_greedy(inst, lam, backend="ext")
            assert a_py.pairs == a_ext.pairs
            assert t_py.best_tau == t_ext.best_tau
            assert t_py.best_objective == t_ext.best_objective


@needs_ext
def test_fresh_cover_backend_independent():
    for seed in range(10):
        inst = random_instance(seed, max_n=7, max_m=6)
        for tau in (1, 2):
            py = greedy_cover(inst, tau, warm_start=False, backend="python")
            ext = greedy_cover(inst, tau, warm_start=False, backend="ext")
            assert py.pairs == ext.pairs


def test_python_backend_forced(monkeypatch):
    inst = random_instance(1)
    engine = make_engine(
        inst.expert_masks,
        inst.task_masks,
        inst.task_sizes,
        len(inst.skill_names),
        backend="python",
    )
    assert engine.backend == "python"
    monkeypatch.setenv("TEAMBALANCE_BACKEND", "python")
    auto = make_engine(
        inst.expert_masks,
        inst.task_masks,
        inst.task_sizes,
        len(inst.skill_names),
    )
    assert auto.backend == "python"


def test_unknown_backend_rejected():
    inst = random_instance(2)
    with pytest.raises(ValueError):
        make_engine(
            inst.expert_masks,
            inst.task_masks,
            inst.task_sizes,
            len(inst.skill_names),
            backend="fortran",
        )


def test_huge_scale_falls_back_to_python():
    # coprime task sizes blow up the lcm beyond the int64 guard
    sizes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]
    masks = [(1 << s) - 1 for s in sizes]
    engine = make_engine([masks[0]] * 4, masks, sizes, 64)
    expected = "python" if not extension_available() else None
    if expected is None:
        import math

        scale = math.lcm(*sizes)
        expected = "python" if scale > (1 << 61) else "ext"
    assert engine.backend == expected
