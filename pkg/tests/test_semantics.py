import random
from fractions import Fraction

import pytest

from ptasynth.harness import int_grid, rand_pta_one_clock, suite_lu_monotonicity
from ptasynth.model import ConcreteRun, PropLoc, SystemProperty, UnsupportedError
from ptasynth.parser import parse_model, parse_property
from ptasynth.semantics import (
    decide,
    grid_oracle,
    reach_dense_one_clock,
    reach_discrete,
    replay_run,
    valuation_key,
)


def g(p):
    return {"p": Fraction(p)}


def test_replay_examples(gate):
    ok = replay_run(gate, g(5), ConcreteRun(((Fraction(3), 0),)))
    assert ok
    bad = replay_run(gate, g(5), ConcreteRun(((Fraction(1), 0),)))
    assert not bad and "guard" in bad.reason


def test_replay_invariant_violation():
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: x <= p
loc q1 inv: true
edge q0 -> q1 : true ; a ;
""")
    res = replay_run(pta, g(2), ConcreteRun(((Fraction(3), 0),)))
    assert not res and "invariant" in res.reason


def brute_force_reachable(pta, gamma, max_delay=6):
    """Independent oracle: enumerate all integer-delay runs of length <= 2."""
    from ptasynth.model import eval_state_property
    hits = set()
    start = {c: Fraction(0) for c in pta.clocks}
    states = [(pta.initial, tuple(sorted(start.items())))]
    for _ in range(3):
        nxt = []
        for loc, omega_items in states:
            omega = dict(omega_items)
            for d in range(max_delay + 1):
                shifted = {c: v + d for c, v in omega.items()}
                if not pta.invariants[loc].holds(shifted, gamma):
                    continue
                for e in pta.edges:
                    if e.source != loc or not e.guard.holds(shifted, gamma):
                        continue
                    after = dict(shifted)
                    for c, b in e.updates.items():
                        after[c] = Fraction(b)
                    if not pta.invariants[e.target].holds(after, gamma):
                        continue
                    nxt.append((e.target, tuple(sorted(after.items()))))
        states.extend(nxt)
        hits.update(loc for loc, _ in states)
    return hits


def test_reach_discrete_derived_examples(gate, gate_ef):
    # exhaustive search over delays 0..6 confirms the verdicts
    for p in range(0, 7):
        expected = "q1" in brute_force_reachable(gate, g(p))
        verdict = reach_discrete(gate, g(p), gate_ef.phi)
        assert verdict.reachable == expected
        if verdict.reachable:
            assert replay_run(gate, g(p), verdict.witness, "nat")


def test_reach_initial_location_trivial(gate):
    v = reach_discrete(gate, g(0), PropLoc("q0"))
    assert v.reachable and v.witness.steps == ()


def test_reach_dense_point_region(gate, gate_ef):
    v = reach_dense_one_clock(gate, g(2), gate_ef.phi)
    assert v.reachable
    assert replay_run(gate, g(2), v.witness, "dense")
    assert not reach_dense_one_clock(gate, g(Fraction(199, 100)), gate_ef.phi).reachable


def test_reach_dense_empty_open_interval():
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q1 : x > 2 & x < 2 ; a ;
""")
    psi = parse_property("EF q1", pta)
    for p in range(0, 4):
        assert not reach_dense_one_clock(pta, g(p), psi.phi).reachable


def test_reach_dense_reset_loop():
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q0 : true ; a ; reset x:=0
edge q0 -> q1 : true ; b ;
""")
    psi = parse_property("EF q1", pta)
    assert reach_dense_one_clock(pta, g(0), psi.phi).reachable


def test_reach_dense_rejects_two_constrained_clocks():
    pta = parse_model("""
clocks: x, y
params: p
loc q0 init inv: true
edge q0 -> q0 : x <= p & y >= 1 ; a ;
""")
    psi = parse_property("EF q0", pta)
    with pytest.raises(UnsupportedError):
        reach_dense_one_clock(pta, g(1), psi.phi)


def test_grid_oracle_example(gate, gate_ef):
    grid = [g(i) for i in range(6)]
    out = grid_oracle(gate, gate_ef, grid, "nat")
    expect = {0: False, 1: False, 2: True, 3: True, 4: True, 5: True}
    for i in range(6):
        assert out[valuation_key(g(i))] == expect[i]
    # duality: the forall-always complement
    psi2 = parse_property("AG (!q1)", gate)
    out2 = grid_oracle(gate, psi2, grid, "nat")
    for i in range(6):
        assert out2[valuation_key(g(i))] == (not expect[i])


def test_grid_oracle_parameter_free():
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q1 : x >= 1 ; a ;
""")
    psi = parse_property("EF q1", pta)
    out = grid_oracle(pta, psi, [g(i) for i in range(4)], "nat")
    assert set(out.values()) == {True}


def test_cap_independence(gate, gate_ef):
    for p in range(0, 8):
        base = reach_discrete(gate, g(p), gate_ef.phi)
        bigger = reach_discrete(gate, g(p), gate_ef.phi, min_cap=base.info["cap"] + 3)
        assert base.reachable == bigger.reachable


def test_discrete_dense_agreement_on_closed_integer_models():
    # closed integer bounds: the two engines must agree at integer valuations
    rng = random.Random(17)
    checked = 0
    while checked < 500:
        pta = rand_pta_one_clock(rng, 1, "nat", "int")
        if any(a.strict for a in pta.atoms()):
            continue
        psi = SystemProperty("EF", PropLoc(rng.choice(pta.locations)))
        gamma = {"p1": Fraction(rng.randint(-4, 10))}
        nat = reach_discrete(pta, gamma, psi.phi)
        dense = reach_dense_one_clock(pta, gamma, psi.phi)
        assert nat.reachable == dense.reachable
        for verdict, domain in ((nat, "nat"), (dense, "dense")):
            if verdict.reachable and verdict.witness is not None:
                assert replay_run(pta, gamma, verdict.witness, domain)
        checked += 1


def test_diagonal_atoms_with_saturated_clock():
    # per-clock saturation must not corrupt difference atoms: y resets while
    # x grows far past every bound, then a diagonal guard asks x - y <= p
    pta = parse_model("""
clocks: x, y
params: p
domain: time=nat param=nat
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q0 : true ; tick ; reset y:=0
edge q0 -> q1 : x - y <= p & x >= 4 ; go ;
""")
    psi = parse_property("EF q1", pta)
    # reachable for every p: wait 4, reset y, fire with x-y small
    for p in range(0, 4):
        v = reach_discrete(pta, g(p), psi.phi)
        assert v.reachable, p
        assert replay_run(pta, g(p), v.witness, "nat")
    # and a lower-bounded difference that the cap must still see as large
    pta2 = parse_model("""
clocks: x, y
params: p
domain: time=nat param=nat
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q0 : true ; tick ; reset y:=0
edge q0 -> q1 : x - y >= p ; go ;
""")
    psi2 = parse_property("EF q1", pta2)
    for p in range(0, 6):
        v = reach_discrete(pta2, g(p), psi2.phi)
        assert v.reachable, p
        assert replay_run(pta2, g(p), v.witness, "nat")


def test_lu_monotonicity_suite():
    report = suite_lu_monotonicity(6, 25)
    assert report.ok(), report.render()
