import pytest

from src.core.exactmath import InputError
from src.core.orders import all_orders
from src.fusion.sgraph import build_sgraph, zset
from src.tableau.profile import HeightProfile, evaluate_rows, validate_profile
from src.tableau.reconstruct import (
    EMPTY, Incomplete, Move, MoveLog, NotRepresentable, Parity, check_log_range, check_vanishing_coordinate,
    deconstruct, intermediates, quasi_extremal_neighbor, rebuild_heights, replay, strongly_extremal_column
)
from tests.conftest import fv

ODD, EVEN = Parity.ODD, Parity.EVEN


def log_of(*moves):
    return MoveLog(tuple(Move(k, j, parity) for k, j, parity in moves))


def test_strongly_extremal_column():
    assert strongly_extremal_column(fv({}, {2: 1}, {3: 1})) == 1
    assert strongly_extremal_column(fv({1: 1}, {2: 1})) == 0
    assert strongly_extremal_column(fv({}, {})) is EMPTY


def test_ambiguous_extremal_column():
    found = strongly_extremal_column(fv({1: 1}, {1: 1, 2: 1}))
    assert isinstance(found, NotRepresentable)
    assert found.reason == "ambiguous_extremal"
    assert found.matches == (0, 1)


def test_quasi_extremal_neighbor():
    assert quasi_extremal_neighbor(fv({}, {2: 1}, {3: 1}), 1) == ((2, ODD), (0, EVEN))


def test_deconstruct_order_132_vertex():
    f = fv({1: 1}, {1: 1, 2: 1, 3: -1}, {1: 1})
    log = deconstruct(f)
    assert log == log_of((0, 3, ODD), (3, 1, EVEN), (1, 2, ODD), (2, 3, ODD))
    assert replay(log, 3) == f
    chain = intermediates(f, log)
    assert chain[0] == f
    assert chain[-1].is_zero
    assert len(chain) == 5


def test_deconstruct_small_examples():
    assert deconstruct(fv({1: 1, 2: -1}, {})) == log_of((2, 0, EVEN), (0, 1, ODD), (1, 2, ODD))
    assert deconstruct(fv({1: 1}, {1: 1})) == log_of((0, 2, ODD))
    assert deconstruct(fv({}, {})) == MoveLog(())


def test_deconstruct_not_representable():
    result = deconstruct(fv({1: 1}, {1: 1, 2: 1}))
    assert isinstance(result, NotRepresentable)
    assert result.reason == "ambiguous_extremal"
    assert result.step == 1


def test_step_bound():
    result = deconstruct(fv({1: 1}, {1: 1, 2: 1, 3: -1}, {1: 1}), max_steps=1)
    assert isinstance(result, NotRepresentable)
    assert result.reason == "bound_exhausted"
    assert result.step == 2
    assert deconstruct(fv({1: 1}, {1: 1}), max_steps=1) == log_of((0, 2, ODD))


def test_vanishing_coordinate():
    assert check_vanishing_coordinate(fv({}, {2: 1}, {3: 1}))
    assert check_vanishing_coordinate(fv({1: 1}, {2: 1}))
    assert not check_vanishing_coordinate(fv({1: 1}, {1: 1, 2: 1}))
    assert not check_vanishing_coordinate(fv({1: 1}, {2: 1}), k=1)


def test_move_log_serialises():
    assert log_of((0, 2, ODD)).to_list() == [{"k": 0, "j": 2, "parity": "odd"}]
    assert len(log_of((0, 2, ODD), (1, 0, EVEN))) == 2


@pytest.mark.parametrize("f, heights", [
    (fv({1: 1}, {1: 1}), (1, 0, 1)),
    (fv({}, {2: 1}), (0, 1, 1)),
    (fv({1: 1}, {2: 1}), (1, 1, 1)),
    (fv({1: 1}), (1, 1)),
])
def test_rebuild_known_profiles(f, heights):
    assert rebuild_heights(deconstruct(f), f) == HeightProfile(heights)


@pytest.mark.parametrize("n", [1, 2])
def test_every_small_function_round_trips(n):
    for order in all_orders(n):
        for f in zset(build_sgraph(order)):
            log = deconstruct(f)
            assert isinstance(log, MoveLog), (str(order), str(f))
            assert replay(log, n) == f
            h = rebuild_heights(log, f)
            assert isinstance(h, HeightProfile), (str(order), str(f), h)
            assert validate_profile(h) == []
            assert evaluate_rows(h) == f


def test_rebuild_rejects_a_log_that_does_not_replay():
    result = rebuild_heights(MoveLog(()), fv({1: 1}, {1: 1}))
    assert isinstance(result, Incomplete)
    assert result.reason == "log_does_not_replay"
    assert result.partial == HeightProfile.zero(2)


def test_rebuild_budget():
    f = fv({1: 1}, {2: 1})
    result = rebuild_heights(deconstruct(f), f, budget=0)
    assert isinstance(result, Incomplete)
    assert result.reason == "budget_exhausted"


def test_log_range():
    check_log_range(MoveLog((Move(0, 2, ODD), Move(2, 0, EVEN))), 2)
    for move in (Move(0, 3, ODD), Move(1, 1, ODD), Move(0, 1, EVEN), Move(3, 0, EVEN), Move(-1, 1, ODD)):
        with pytest.raises(InputError):
            check_log_range(MoveLog((move,)), 2)
