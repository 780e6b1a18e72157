import pytest
from oracles import realization

from subsq.oracle import SearchConfig, Verdict, amalgamated_feasible, block_prefill, search_realization
from subsq.core import Partition


@pytest.mark.parametrize(
    "h,verdict",
    [((1, 1, 1), Verdict.FOUND), ((2, 1, 1), Verdict.NOT_EXISTS), ((1, 1), Verdict.NOT_EXISTS),
     ((4, 1, 1, 1, 1), Verdict.NOT_EXISTS), ((5,), Verdict.FOUND), ((2, 1, 1, 1), Verdict.FOUND),
     ((3, 3, 2, 2), Verdict.NOT_EXISTS)],
)
def test_examples(h, verdict):
    res = search_realization(h)
    assert res.verdict is verdict
    if verdict is Verdict.FOUND:
        assert realization(res.realization.square.grid, h)
    else:
        assert res.realization is None


def test_found_order3_has_distinct_diagonal():
    sq = search_realization((1, 1, 1)).realization.square
    assert [sq.grid[i][i] for i in range(3)] == [1, 2, 3]


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(node_limit=0)
    with pytest.raises(ValueError):
        SearchConfig(time_limit=-1.0)


def test_node_limit_gives_unknown():
    res = search_realization((3, 3, 3, 2, 2), SearchConfig(node_limit=5))
    assert res.verdict is Verdict.UNKNOWN and res.realization is None


def test_amalgamated_feasibility():
    assert amalgamated_feasible((1, 1, 1))[0]
    assert not amalgamated_feasible((1, 1))[0]
    assert not amalgamated_feasible((4, 4, 2, 1, 1))[0]
    assert amalgamated_feasible((3, 2, 1, 1, 1))[0]


def test_prefill():
    cells = block_prefill(Partition((2, 1)))
    assert cells == [1, 2, 0, 2, 1, 0, 0, 0, 3]


def test_pure_backend_agrees(monkeypatch):
    from subsq import _purekernel, kernels

    monkeypatch.setattr(kernels, "search", _purekernel.search)
    res = search_realization((2, 2, 2, 1, 1))
    assert res.verdict is Verdict.FOUND
    assert realization(res.realization.square.grid, (2, 2, 2, 1, 1))
