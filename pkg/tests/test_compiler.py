"""Differential tests for the recursion-term to counter-machine compiler."""

import pytest

from powerlab.core import Converged, apply
from powerlab.machines import CompileError, cm_map, compile_rec_to_cm, run_cm
from powerlab.recdsl import (
    Ack,
    Comp,
    ConstK,
    Id,
    Mu,
    PrimRec,
    Proj,
    S,
    Z,
    eval_term,
    parse_term,
)
from powerlab.terms import ADD, FLOOR_SQRT, standard_suite

FUEL = 10**6


def both(t, n, fuel=FUEL):
    direct = eval_term(t, (n,), fuel)
    compiled = run_cm(compile_rec_to_cm(t), n, fuel)
    return direct, compiled


def test_successor_compiles():
    direct, compiled = both(S(), 7)
    assert direct == compiled == Converged(8)


def test_constant_and_projection():
    assert both(ConstK(9), 3)[1] == Converged(9)
    assert both(Comp(Proj(1, 1), (Id(),)), 5)[1] == Converged(5)


def test_composition_chain():
    t = parse_term("(C S (C S (C S I)))")
    assert both(t, 4)[1] == Converged(7)


def test_floor_sqrt_search_compiles():
    p = compile_rec_to_cm(FLOOR_SQRT)
    for n in (0, 1, 3, 4, 10, 16, 24):
        assert run_cm(p, n, FUEL) == eval_term(FLOOR_SQRT, (n,), FUEL)


def test_ack_section_compiles_through_row_unfolding():
    t = Comp(Ack(), (ConstK(2), Id()))
    for n in range(6):
        assert both(t, n)[1] == Converged(2 * n + 3)


def test_ack_with_open_row_is_rejected():
    with pytest.raises(CompileError, match="unsupported"):
        compile_rec_to_cm(Comp(Ack(), (Id(), Id())))


def test_non_unary_rejected():
    with pytest.raises(CompileError):
        compile_rec_to_cm(ADD)


def test_whole_suite_matches_interpreter_on_small_inputs():
    for name, t in standard_suite():
        p = compile_rec_to_cm(t, name=name)
        m = cm_map(p)
        for n in range(13):
            direct = eval_term(t, (n,), FUEL)
            compiled = apply(m, n, FUEL)
            assert direct == compiled, (name, n, direct, compiled)


def test_mu_divergence_is_fuel_exhaustion_on_both_sides():
    t = Mu(Comp(S(), (Proj(2, 2),)))
    direct, compiled = both(t, 0, fuel=2000)
    assert direct == compiled
    assert not isinstance(direct, Converged)


def test_compiled_programs_render_and_reload():
    from powerlab.machines import parse_cm, render_cm

    t = parse_term("(R Z (C S (P 3 3)))")  # identity on the last argument
    p = compile_rec_to_cm(Comp(t, (Z(), Id())), name="ident2")
    q = parse_cm(render_cm(p), name="ident2")
    for n in (0, 1, 9):
        assert run_cm(q, n, FUEL) == Converged(n)
