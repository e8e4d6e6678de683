import random
from fractions import Fraction

import pytest

from ptasynth.harness import int_grid, suite_synthesis_oracle
from ptasynth.model import (
    PropConst,
    PropLoc,
    SystemProperty,
    SyntacticRun,
    UnsupportedError,
)
from ptasynth.parser import parse_model, parse_property
from ptasynth.semantics import decide, grid_oracle, valuation_key
from ptasynth.synthesis import (
    collect_constraint_polynomials,
    enumerate_runs,
    region_query,
    run_region,
    synthesize,
)


def g(p):
    return {"p": Fraction(p)}


def test_collect_constraint_polynomials(gate, gate_ef):
    rendered = sorted(cp.render() for cp in collect_constraint_polynomials(gate, gate_ef))
    assert rendered == ["-x + 2", "x - p"]
    sq = parse_model("""
clocks: x
params: p
loc q0 init inv: true
edge q0 -> q0 : x <= p^2 ; a ;
""")
    out = collect_constraint_polynomials(sq, None)
    assert [cp.render() for cp in out] == ["x - p^2"]
    empty = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\n")
    assert collect_constraint_polynomials(empty, None) == []


def test_synthesize_gate_region(gate, gate_ef):
    region = synthesize(gate, gate_ef, time_domain="dense", param_domain="real")
    # feasible exactly on {2} union (2, inf)
    assert region_query(region, g(2)) is True
    assert region_query(region, g(Fraction(199, 100))) is False
    assert region_query(region, g(3)) is True
    assert region_query(region, g(0)) is False
    assert not region.is_empty()


def test_synthesize_duality(gate):
    ef = parse_property("EF q1", gate)
    ag = parse_property("AG (!q1)", gate)
    r1 = synthesize(gate, ef, time_domain="dense")
    r2 = synthesize(gate, ag, time_domain="dense")
    for value in (Fraction(-1), Fraction(0), Fraction(2), Fraction(5, 2), Fraction(9)):
        assert region_query(r2, {"p": value}) == (not region_query(r1, {"p": value}))


def test_synthesize_parameter_free_reachability():
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q1 : x >= 1 ; a ;
""")
    psi = parse_property("EF q1", pta)
    region = synthesize(pta, psi, time_domain="dense")
    assert all(cv.verdict for cv in region.cells)


def test_synthesize_polynomial_region(square_gate):
    psi = parse_property("EF q1", square_gate)
    region = synthesize(square_gate, psi, time_domain="dense")
    assert region.method == "cad1"
    # feasible iff p^2 >= 2
    assert region_query(region, g(2)) is True
    assert region_query(region, g(-2)) is True
    assert region_query(region, g(1)) is False
    assert region_query(region, g(Fraction(3, 2))) is True
    # the two irrational point cells decide positively (closed bound)
    point_cells = [cv for cv in region.cells if cv.cell.kind == "point"
                   and not isinstance(cv.cell.sample, Fraction)]
    assert len(point_cells) == 2
    assert all(cv.verdict for cv in point_cells)


def test_synthesize_rejects_two_parametric_clocks():
    pta = parse_model("""
clocks: x, y
params: p
loc q0 init inv: true
edge q0 -> q0 : x <= p & y <= p ; a ;
""")
    psi = parse_property("EF q0", pta)
    with pytest.raises(UnsupportedError) as err:
        synthesize(pta, psi)
    assert "two-clock" in str(err.value)


def test_synthesize_rejects_concrete_sidecar_clock():
    pta = parse_model("""
clocks: x, z
params: p
loc q0 init inv: true
edge q0 -> q0 : x <= p & z <= 3 ; a ;
""")
    psi = parse_property("EF q0", pta)
    with pytest.raises(UnsupportedError):
        synthesize(pta, psi)


def test_synthesize_polynomial_needs_single_param():
    pta = parse_model("""
clocks: x
params: p, q
loc q0 init inv: true
edge q0 -> q0 : x <= p*q ; a ;
""")
    psi = parse_property("EF q0", pta)
    with pytest.raises(UnsupportedError):
        synthesize(pta, psi)


def test_enumerate_runs_examples(gate):
    runs = enumerate_runs(gate, 1)
    assert [r.edge_indices for r in runs] == [(), (0,)]

    loop = parse_model("""
clocks: x
params: p
loc q0 init inv: true
edge q0 -> q0 : true ; a ;
""")
    assert len(enumerate_runs(loop, 3)) == 4

    twin = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q1 : true ; a ;
edge q0 -> q1 : true ; b ;
""")
    assert len(enumerate_runs(twin, 1)) == 3


def test_run_region_examples(gate):
    tau = SyntacticRun(gate, (0,))
    region = run_region(gate, tau, PropConst(True), time_domain="dense")
    # realizable exactly on [2, inf)
    assert region_query(region, g(2)) is True
    assert region_query(region, g(3)) is True
    assert region_query(region, g(1)) is False

    eps = SyntacticRun(gate, ())
    region_eps = run_region(gate, eps, PropLoc("q0"), time_domain="dense")
    for v in (-3, 0, 5):
        assert region_query(region_eps, g(v)) is True

    chain = parse_model("""
clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
loc q2 inv: true
edge q0 -> q1 : x >= 3 ; a ;
edge q1 -> q2 : x <= p ; b ;
""")
    tau2 = SyntacticRun(chain, (0, 1))
    region2 = run_region(chain, tau2, PropConst(True), time_domain="dense")
    assert region_query(region2, g(2)) is False
    assert region_query(region2, g(3)) is True
    assert region_query(region2, g(10)) is True


def test_run_region_union_under_approximates_on_acyclic_model(two_param):
    # acyclic model, location property: once every path is enumerated the
    # union of run regions equals the synthesized region
    psi = SystemProperty("EF", PropLoc("q2"))
    region = synthesize(two_param, psi, time_domain="dense")
    runs = enumerate_runs(two_param, 2)
    run_regions = [run_region(two_param, tau, psi.phi, time_domain="dense")
                   for tau in runs]
    for point in int_grid(2, -3, 8):
        gamma = {"p1": point["p1"], "p2": point["p2"]}
        whole = region_query(region, gamma)
        union = any(region_query(rr, gamma) for rr in run_regions)
        assert union == whole, gamma


def test_cell_verdict_stability_dense():
    # random rational points inside each cell decide like the cell's sample
    rng = random.Random(31)
    pta = parse_model("""
clocks: x
params: p
loc q0 init inv: x <= p
loc q1 inv: true
edge q0 -> q1 : x >= 2 & x <= p ; a ; reset x:=1
edge q1 -> q1 : x >= 3 ; b ;
""")
    psi = parse_property("EF (q1 && x <= p)", pta)
    region = synthesize(pta, psi, time_domain="dense")
    from ptasynth.decomposition import LinearCellSampler
    for cv in region.cells:
        sampler = LinearCellSampler(cv.cell)
        for _ in range(20):
            point = sampler.draw(rng)
            gamma = dict(zip(region.params, point))
            assert decide(pta, gamma, psi, "dense").satisfied == cv.verdict


def test_synthesis_oracle_suite_reduced():
    report = suite_synthesis_oracle(8, 30)
    assert report.ok(), report.render()
