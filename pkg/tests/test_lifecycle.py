import numpy as np
import pytest

from conftest import make_lab
from sciswarm.core import SwarmRegistry
from sciswarm.errors import ExtinctionEvent
from sciswarm.lifecycle import LifecycleParams, assign_explorers, prune_and_spawn, selection_sets, update_budgets
from sciswarm.rng import substream

PARAMS = LifecycleParams(spawn_scale=0.1)


def labs_with(budgets):
    return {i: make_lab(i, budget=b) for i, b in enumerate(budgets)}


def test_budget_update_hand_example():
    labs = labs_with([3, 3, 3, 3])
    assert update_budgets(labs, [0, 1, 2, 3], PARAMS) == ([0], [3])
    assert [labs[i].budget for i in range(4)] == [4, 3, 3, 2]


def test_small_population_has_no_selection():
    labs = labs_with([3, 3, 3])
    update_budgets(labs, [0, 1, 2], PARAMS)
    assert [labs[i].budget for i in range(3)] == [3, 3, 3]


def test_budget_saturates():
    labs = labs_with([6, 3, 3, 0])
    update_budgets(labs, [0, 1, 2, 3], PARAMS)
    assert labs[0].budget == 6 and labs[3].budget == 0


def test_selection_sets():
    assert selection_sets(list(range(8)), 0.25) == ([0, 1], [6, 7])
    assert selection_sets([4, 5], 0.5) == ([4], [5])


def registry_with(budgets, cap=10):
    reg = SwarmRegistry(2, (-1.0, 1.0), cap)
    for b in budgets:
        reg.register_lab((0.0, 0.0), b)
    return reg


def test_prune():
    reg = registry_with([0, 3])
    report = prune_and_spawn(reg, PARAMS, substream(0, "lifecycle"), 4)
    assert report.pruned == [0] and reg.population == 1
    assert reg.records[0].died == 4


def test_spawn():
    reg = registry_with([6, 3, 3, 3, 3])
    report = prune_and_spawn(reg, PARAMS, substream(0, "lifecycle"), 1)
    assert reg.population == 6
    parent, child, _ = report.spawned[0]
    assert parent == 0 and child == 5
    assert reg.labs[0].budget == 3
    assert reg.labs[5].trust == 0.0 and reg.labs[5].parent == 0 and reg.labs[5].born == 1
    assert np.all(np.abs(reg.labs[5].position) <= 1.0)


def test_spawn_order_under_cap():
    reg = registry_with([3, 6, 6], cap=4)
    report = prune_and_spawn(reg, PARAMS, substream(0, "lifecycle"), 1)
    assert [p for p, _, _ in report.spawned] == [1]
    assert reg.labs[2].budget == 6


def test_extinction_keeps_report():
    reg = registry_with([0, 0])
    with pytest.raises(ExtinctionEvent) as info:
        prune_and_spawn(reg, PARAMS, substream(0, "lifecycle"), 7)
    assert info.value.report.pruned == [0, 1]


def test_explorer_rotation():
    ids = list(range(20))
    assert assign_explorers(ids, 0.1, 0) == [0, 1]
    assert assign_explorers(ids, 0.1, 3) == [17, 18]
    assert assign_explorers(ids[:9], 0.1, 0) == []
    seen = set()
    for t in range(20):
        seen.update(assign_explorers(ids, 0.1, t))
    assert seen == set(ids)


def test_explorer_flags_follow_roster():
    reg = registry_with([3] * 20, cap=30)
    report = prune_and_spawn(reg, PARAMS, substream(0, "lifecycle"), 0)
    assert [i for i, lab in reg.labs.items() if lab.explorer] == report.explorers == [0, 1]


def test_params_validation():
    assert LifecycleParams(initial_population=70).problems()
    assert LifecycleParams(initial_budget=7).problems()
    assert LifecycleParams().resolved(10.0).spawn_scale == 0.5
