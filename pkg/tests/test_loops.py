import itertools
import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_qseries import (
    Mutate,
    MutationLoop,
    NotALoopError,
    PentagonError,
    Quiver,
    Relabel,
    apply_steps,
    normalize,
    pentagon_contract,
    pentagon_expand,
    validate_loop,
)
from partition_qseries.loops import loop_from_json, loop_steps, pentagon_positions

LOOPS = Path(__file__).resolve().parent.parent / "loops"
A2 = Quiver.from_arrows(2, [(1, 2)])
A3 = Quiver.from_arrows(3, [(1, 2), (3, 2)])
D5 = Quiver.from_arrows(5, [(1, 2), (3, 2), (3, 4), (3, 5)])
FOUR = Quiver.from_arrows(4, [(1, 2), (3, 2), (3, 4)])


def two_vertex_quivers():
    return [Quiver(((0, b), (-b, 0))) for b in range(-3, 4)]


def test_apply_steps():
    assert apply_steps(A2, [Mutate(1), Mutate(2)]) == A2
    assert apply_steps(A2, []) == A2
    assert apply_steps(A2, [Mutate(2), Mutate(1), Mutate(2), Relabel((2, 1))]) == A2


def test_normalize_moves_relabel_right():
    steps = [Mutate(2), Relabel((2, 1)), Mutate(1)]
    m, phi = normalize(steps, 2)
    assert (m, phi) == ((2, 2), (2, 1))
    for q in two_vertex_quivers():
        assert apply_steps(q, steps) == apply_steps(q, loop_steps(m, phi))


def test_normalize_cancelling_relabels():
    assert normalize([Relabel((2, 3, 1)), Relabel((3, 1, 2))], 3) == ((), (1, 2, 3))


def test_normalize_generalized_sequence():
    phi = (4, 1, 2, 3)
    steps = loop_steps([4, 2, 1, 2]) + [Relabel((2, 1, 3, 4))] + loop_steps([3, 2, 4, 1], phi)
    m, phi2 = normalize(steps, 4)
    assert m == (4, 2, 1, 2, 3, 1, 4, 2)
    assert phi2 == (1, 4, 2, 3)


@st.composite
def step_lists(draw, n=3):
    steps = []
    for _ in range(draw(st.integers(0, 8))):
        if draw(st.booleans()):
            steps.append(Mutate(draw(st.integers(1, n))))
        else:
            steps.append(Relabel(tuple(draw(st.permutations(range(1, n + 1))))))
    return steps


@given(step_lists(), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_normal_form_has_same_action(steps, entries):
    x, y, z = entries
    q = Quiver(((0, x, y), (-x, 0, z), (-y, -z, 0)))
    m, phi = normalize(steps, 3)
    assert apply_steps(q, steps) == apply_steps(q, loop_steps(m, phi))


def test_validate_loop():
    assert validate_loop(A3, loop_steps([2, 1, 3])).mutations == (2, 1, 3)
    assert validate_loop(D5, loop_steps([2, 4, 5, 1, 3])).phi == (1, 2, 3, 4, 5)
    with pytest.raises(NotALoopError) as info:
        validate_loop(A2, [Mutate(1)])
    assert info.value.final.b == ((0, -1), (1, 0))


def test_bad_steps_rejected():
    with pytest.raises(ValueError):
        validate_loop(A2, [Mutate(3)])
    with pytest.raises(ValueError):
        validate_loop(A2, [Relabel((1, 2, 3))])


def test_pentagon_expand_a2():
    loop = MutationLoop.from_normal_form(A2, [1, 2])
    moved = pentagon_expand(loop, 0)
    assert list(moved.steps[:4]) == [Mutate(2), Mutate(1), Mutate(2), Relabel((2, 1))]
    assert (moved.mutations, moved.phi) == ((2, 1, 2), (2, 1))


def test_pentagon_expand_four_vertex():
    loop = MutationLoop.from_normal_form(FOUR, [4, 1, 2, 3, 2, 4, 1], (4, 1, 2, 3))
    assert pentagon_positions(loop) == [1, 5]
    moved = pentagon_expand(loop, 1)
    assert moved.mutations == (4, 2, 1, 2, 3, 1, 4, 2)
    assert moved.phi == (1, 4, 2, 3)


def test_pentagon_contract_inverts_expand():
    loop = MutationLoop.from_normal_form(FOUR, [4, 1, 2, 3, 2, 4, 1], (4, 1, 2, 3))
    for pos in pentagon_positions(loop):
        back = pentagon_contract(pentagon_expand(loop, pos), pos)
        assert (back.mutations, back.phi) == (loop.mutations, loop.phi)


def test_pentagon_contract_pattern_errors():
    loop = MutationLoop.from_normal_form(A3, [2, 1, 3])
    with pytest.raises(PentagonError):
        pentagon_contract(loop, 0)
    with pytest.raises(PentagonError):
        pentagon_contract(loop, 5)


def test_pentagon_needs_single_arrow():
    double = Quiver(((0, 2), (-2, 0)))
    loop = MutationLoop.from_normal_form(double, [1, 2])
    with pytest.raises(PentagonError):
        pentagon_expand(loop, 0)
    # arrow 2 -> 1 has the wrong orientation for the pair (1, 2)
    rev = MutationLoop.from_normal_form(A2.opposite(), [2, 1])
    assert pentagon_positions(rev) == [0]
    with pytest.raises(PentagonError):
        pentagon_expand(MutationLoop.from_normal_form(A2.opposite(), [1, 2]), 0)
    with pytest.raises(PentagonError):
        pentagon_expand(MutationLoop.from_normal_form(A2, [1, 2]), 1)


def test_all_expansions_are_loops():
    for q in (A3, D5, FOUR):
        for perm in itertools.permutations(range(1, q.n + 1)):
            try:
                loop = MutationLoop.from_normal_form(q, perm)
            except NotALoopError:
                continue
            for pos in pentagon_positions(loop):
                assert pentagon_expand(loop, pos).length == loop.length + 1


def test_json_round_trip():
    loop = MutationLoop.from_normal_form(FOUR, [4, 1, 2, 3, 2, 4, 1], (4, 1, 2, 3))
    again = loop_from_json(json.loads(json.dumps(loop.to_json())))
    assert again == loop


@pytest.mark.parametrize("name", ["a2", "a2_pentagon", "a3", "d5", "four_vertex"])
def test_sample_files_are_loops(name):
    with open(LOOPS / f"{name}.json") as fh:
        assert loop_from_json(json.load(fh)).length > 0


def test_sample_non_loop():
    with open(LOOPS / "not_a_loop.json") as fh:
        data = json.load(fh)
    with pytest.raises(NotALoopError):
        loop_from_json(data)
