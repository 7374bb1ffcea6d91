import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import quiver_corpus
from oracles import arrows_to_matrix, mutate_arrows
from partition_qseries import Quiver, QuiverError, sign_classes, square_product, tensor_product
from partition_qseries.closed_forms import alternating_dynkin
from partition_qseries.quiver import NotAlternatingError, compose, invert

A2 = Quiver.from_arrows(2, [(1, 2)])
D5 = Quiver.from_arrows(5, [(1, 2), (3, 2), (3, 4), (3, 5)])


@st.composite
def quivers(draw, max_n=5, bound=3):
    n = draw(st.integers(1, max_n))
    b = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        b[i][j] = draw(st.integers(-bound, bound))
        b[j][i] = -b[i][j]
    return Quiver(tuple(map(tuple, b)))


def test_matrix_counts_arrows():
    q = Quiver.from_arrows(3, [(1, 2), (1, 2), (3, 2)])
    assert q.b == ((0, 2, 0), (-2, 0, -1), (0, 1, 0))
    assert q.entry(1, 2) == 2
    assert sorted(q.arrows()) == [(1, 2), (1, 2), (3, 2)]


@pytest.mark.parametrize(
    "b",
    [((0, 1), (1, 0)), ((1, 0), (0, 0)), ((0, 1, 0), (-1, 0)), ((0, 1), (-1, 0), (0, 0))],
)
def test_rejects_bad_matrices(b):
    with pytest.raises(QuiverError):
        Quiver(b)


def test_rejects_loops_and_two_cycles():
    with pytest.raises(QuiverError):
        Quiver.from_arrows(2, [(1, 1)])
    with pytest.raises(QuiverError):
        Quiver.from_arrows(2, [(1, 2), (2, 1)])


def test_mutate_a2_at_source():
    assert A2.mutate(1).b == ((0, -1), (1, 0))


def test_mutate_d5_at_2():
    assert sorted(D5.mutate(2).arrows()) == [(2, 1), (2, 3), (3, 4), (3, 5)]


def test_mutate_bad_vertex():
    with pytest.raises(QuiverError):
        A2.mutate(3)


def test_mutation_composes_paths():
    q = Quiver.from_arrows(3, [(1, 2), (2, 3)])
    assert sorted(q.mutate(2).arrows()) == [(1, 3), (2, 1), (3, 2)]


@pytest.mark.parametrize("q", quiver_corpus(), ids=str)
def test_mutation_matches_arrow_rules(q):
    for k in range(1, q.n + 1):
        assert q.mutate(k).b == arrows_to_matrix(q.n, mutate_arrows(q.n, q.arrows(), k))


def test_involution_exhaustive_rank3():
    for x, y, z in itertools.product(range(-2, 3), repeat=3):
        q = Quiver(((0, x, y), (-x, 0, z), (-y, -z, 0)))
        for k in (1, 2, 3):
            assert q.mutate(k).mutate(k) == q


@given(quivers(), st.data())
def test_mutation_involution_and_skew(q, data):
    k = data.draw(st.integers(1, q.n))
    m = q.mutate(k)
    assert all(m.b[i][j] == -m.b[j][i] for i in range(q.n) for j in range(q.n))
    assert m.mutate(k) == q


@given(quivers(), st.data())
def test_relabel_is_group_action(q, data):
    n = q.n
    s = tuple(data.draw(st.permutations(range(1, n + 1))))
    t = tuple(data.draw(st.permutations(range(1, n + 1))))
    assert q.relabel(s).relabel(t) == q.relabel(compose(t, s))
    assert q.relabel(s).relabel(invert(s)) == q
    k = data.draw(st.integers(1, n))
    assert q.mutate(k).relabel(s) == q.relabel(s).mutate(s[k - 1])


def test_relabel_examples():
    assert A2.relabel((2, 1)).arrows() == [(2, 1)]
    assert A2.relabel((1, 2)) == A2
    with pytest.raises(QuiverError):
        A2.relabel((1, 1))


def test_opposite():
    assert A2.opposite().arrows() == [(2, 1)]
    assert sorted(D5.opposite().arrows()) == [(2, 1), (2, 3), (4, 3), (5, 3)]


def test_signs():
    assert A2.signs() == (1, -1)
    assert D5.signs() == (1, -1, 1, -1, -1)
    assert Quiver.zero(1).signs() == (1,)
    with pytest.raises(NotAlternatingError):
        Quiver.from_arrows(3, [(1, 2), (2, 3), (3, 1)]).signs()
    assert not Quiver.from_arrows(3, [(1, 2), (2, 3)]).is_alternating()


def test_mutating_sources_of_alternating_quiver_gives_opposite():
    for q in (A2, D5, alternating_dynkin("E6")[0]):
        m = q
        for v in q.sinks():
            m = m.mutate(v)
        assert m == q.opposite()


def test_oriented_cycles():
    assert Quiver.from_arrows(3, [(1, 2), (2, 3), (3, 1)]).has_oriented_cycle()
    assert not D5.has_oriented_cycle()


def test_tensor_with_a1():
    assert tensor_product(A2, Quiver.zero(1)) == A2


def test_tensor_a3_a2_arrow_counts():
    a3 = alternating_dynkin("A3")[0]
    t = tensor_product(a3, A2)
    # arrows only between vertices sharing one coordinate, copied from the other factor
    expected = []
    for i in range(1, 4):
        expected.append(((i - 1) * 2 + 1, (i - 1) * 2 + 2))
    for i, j in a3.arrows():
        for ip in (1, 2):
            expected.append(((i - 1) * 2 + ip, (j - 1) * 2 + ip))
    assert t == Quiver.from_arrows(6, expected)


def test_tensor_opposite():
    a3 = alternating_dynkin("A3")[0]
    assert tensor_product(a3, A2).opposite() == tensor_product(a3.opposite(), A2.opposite())


def test_tensor_rejects_cycles():
    with pytest.raises(QuiverError):
        tensor_product(Quiver.from_arrows(3, [(1, 2), (2, 3), (3, 1)]), A2)


def test_square_a3_a2():
    sq = square_product(alternating_dynkin("A3")[0], A2)
    assert sq == Quiver.from_arrows(6, [(1, 3), (5, 3), (3, 4), (2, 1), (4, 2), (4, 6), (6, 5)])


def test_square_opposite():
    a3 = alternating_dynkin("A3")[0]
    assert square_product(a3, A2).opposite() == square_product(a3.opposite(), A2)
    assert square_product(a3.opposite(), A2) == square_product(a3, A2.opposite())


def test_square_faces_are_oriented_cycles():
    sq = square_product(A2, A2)
    # the single face 1,2,4,3 of A2 x A2
    cycle = [1, 2, 4, 3]
    steps = [sq.entry(cycle[i], cycle[(i + 1) % 4]) for i in range(4)]
    assert steps in ([1] * 4, [-1] * 4)
    assert sq.has_oriented_cycle()


def test_square_rejects_non_alternating():
    with pytest.raises(NotAlternatingError):
        square_product(Quiver.from_arrows(3, [(1, 2), (2, 3)]), A2)


def test_sign_classes_a3_a2():
    assert sign_classes(alternating_dynkin("A3")[0], A2) == ([1, 4, 5], [2, 3, 6])


def test_json_round_trip():
    q = Quiver.from_arrows(4, [(1, 2), (3, 2), (3, 4), (3, 4)])
    assert Quiver.from_json(q.to_json()) == q
    assert Quiver.from_json({"n": 2, "b": [[0, 1], [-1, 0]]}) == A2
