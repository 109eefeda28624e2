from fractions import Fraction as F

import pytest

from pandora_search import (
    Box,
    CallbackPolicy,
    CommittingPolicy,
    DiscreteDist,
    Halt,
    IllegalActionError,
    Inspect,
    Instance,
    PathLimitError,
    SelectOpen,
    WeitzmanPolicy,
    evaluate_exact,
    evaluate_nonexposed_closed_form,
    iter_traces,
    random_instance,
    tight_example,
)
from conftest import random_batch


def d(*pairs):
    return DiscreteDist(pairs)


class TestEvaluateExact:
    def test_weitzman_on_tight_example(self):
        inst = tight_example(10)
        res = evaluate_exact(inst, WeitzmanPolicy(inst))
        assert res.utility == 1
        # opens the long shot first; on a hit it stops without touching the coin
        assert res.inspect_probs == (F(9, 10), 1)
        assert res.utility == sum(res.selected_value) - sum(res.inspection_cost)

    def test_committing_long_shot_reserved(self):
        inst = tight_example(10)
        res = evaluate_exact(inst, CommittingPolicy(inst, {1}))
        assert res.utility == 1
        # inspects the coin, never the long shot
        assert res.inspect_probs == (1, 0)
        assert res.select_probs[1] == F(1, 2)

    def test_halt_policy_is_zero(self):
        inst = random_instance(3, 3, 9, seed=2)
        res = evaluate_exact(inst, CallbackPolicy(lambda s: Halt()))
        assert res.utility == 0
        assert res.path_count == 1

    def test_probability_bookkeeping(self):
        for inst in random_batch(12, 3, 3, seed0=40):
            res = evaluate_exact(inst, WeitzmanPolicy(inst))
            assert sum(res.select_probs) <= 1
            for p in res.inspect_probs + res.select_probs:
                assert 0 <= p <= 1

    def test_path_limit_guard(self):
        inst = random_instance(3, 3, 9, seed=3)
        with pytest.raises(PathLimitError):
            evaluate_exact(inst, WeitzmanPolicy(inst), limit=1)

    def test_illegal_callback_fails_fast(self):
        inst = tight_example(10)
        # selecting open a box that was never inspected
        with pytest.raises(IllegalActionError):
            evaluate_exact(inst, CallbackPolicy(lambda s: SelectOpen(0)))
        # inspecting the same box twice
        with pytest.raises(IllegalActionError):
            evaluate_exact(inst, CallbackPolicy(lambda s: Inspect(0)))


class TestClosedForm:
    def test_tight_example_values(self):
        inst = tight_example(10)
        assert evaluate_nonexposed_closed_form(inst, frozenset()) == 1
        assert evaluate_nonexposed_closed_form(inst, {0}) == 1
        assert evaluate_nonexposed_closed_form(inst, {1}) == 1

    def test_single_box(self):
        inst = Instance([Box(d((5, 1)), 1)])
        assert evaluate_nonexposed_closed_form(inst, frozenset()) == 4

    def test_matches_path_enumeration_for_every_set(self):
        for inst in random_batch(40, 3, 3, seed0=100):
            subsets = range(1 << inst.n)
            for mask in subsets:
                s = frozenset(i for i in range(inst.n) if mask >> i & 1)
                cf = evaluate_nonexposed_closed_form(inst, s)
                ex = evaluate_exact(inst, CommittingPolicy(inst, s)).utility
                assert cf == ex, (inst, s)

    def test_negative_sigma_instance(self):
        # cost above the mean: kappa is a negative point mass, no clamping
        inst = Instance([Box(d((0, F(1, 2)), (2, F(1, 2))), 3)])
        assert evaluate_nonexposed_closed_form(inst, frozenset()) == -2
        assert evaluate_exact(inst, WeitzmanPolicy(inst)).utility == -2


class TestTraces:
    def test_trace_probabilities_sum_to_one(self):
        inst = random_instance(3, 3, 7, seed=9)
        traces = list(iter_traces(inst, WeitzmanPolicy(inst)))
        assert sum(t.probability for t in traces) == 1

    def test_indicator_helpers(self):
        inst = tight_example(10)
        traces = list(iter_traces(inst, CommittingPolicy(inst, {1})))
        for t in traces:
            assert t.inspected(2) == (1, 0)
            assert sum(t.selected(2)) == 1

    def test_permuting_box_labels_preserves_value(self):
        inst = random_instance(3, 3, 9, seed=15)
        perm = [2, 0, 1]
        permuted = Instance([inst.boxes[p] for p in perm])
        assert (
            evaluate_exact(inst, WeitzmanPolicy(inst)).utility
            == evaluate_exact(permuted, WeitzmanPolicy(permuted)).utility
        )
