from equicolor.atomicity import FixState
from equicolor.models.coloring import Coloring
from equicolor.models.config import SearchBudget
from equicolor.models.graph import Graph
from equicolor.models.trace import Move, MoveTag
from equicolor.services.fallback import fallback_search, macro_moves
from tests.conftest import V, W


def test_macro_moves_start_with_reroots(labelled_state):
    macros = list(macro_moves(labelled_state))
    assert macros[:2] == [((V, 0),), ((W, 0),)]
    assert all(len(m) in (1, 2, 3) for m in macros)


def test_fallback_finds_single_reroot(labelled_state):
    trace = fallback_search(labelled_state, SearchBudget(), a0=3, seed=5)
    assert trace is not None
    assert trace.moves == (Move(V, 1, 0, MoveTag.FALLBACK),)
    assert trace.a_after == 4


def test_fallback_reports_failure_and_restores_state():
    state = FixState(Graph(3, [(0, 1), (0, 2)]), Coloring(2, [0, 1, 1]))
    assert list(macro_moves(state)) == []
    assert fallback_search(state, SearchBudget(max_fallback_depth=3), a0=1) is None
    assert state.log == []


def test_fallback_solves_exchange_instance(exchange_state):
    trace = fallback_search(exchange_state, SearchBudget(), a0=1)
    assert trace is not None
    assert trace.a_after > 1
    assert exchange_state.deficient() is not None


def test_fallback_needs_a_strict_gain_even_when_the_heldout_vertex_fits():
    # p=0 | w=1 q=2 | c1=3 c2=4, x=5 held out next to p and w
    g = Graph(6, [(0, 2), (0, 3), (0, 4), (2, 3), (2, 4), (5, 0), (5, 1)])
    state = FixState(g, Coloring(3, [0, 1, 1, 2, 2, 0]), s=2)
    state.hold_out(5)
    assert state.accessible_count() == 2
    assert state.insertion_class(5) is None
    # re-rooting w into p's class frees class 1 for x but leaves a at 2
    assert list(macro_moves(state))[0] == ((1, 0),)
    assert fallback_search(state, SearchBudget(max_fallback_depth=1), a0=2) is None
    assert [m.tag for m in state.log] == [MoveTag.HOLDOUT]
