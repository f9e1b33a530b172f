import json

import pytest

from chromcert.coloring import is_colourable
from chromcert.errors import (
    InternalContradiction,
    NotInextensibleError,
    ResourceLimitError,
)
from chromcert.extractor import (
    Certificate,
    ExtractConfig,
    WitnessPair,
    check_precondition,
    descend,
    extract,
    finalize_chromatic,
    verify_certificate,
)
from chromcert.families import FamilySpec, generate
from chromcert.graphs import Graph, graph_hash, induced_subgraph
from chromcert.oracles import brute_is_k_connected
from chromcert.solver import SolverBudget
from chromcert.templates import Template, is_valid_witness, respects


def glued15():
    return generate(FamilySpec.glued_cliques((15, 15), 1))


def gadget_graph():
    """K_14 on 0..13, an apex 14 adjacent to 1..13 (so its colour is forced
    to match vertex 0 under a full palette), and a triangle {1,15,16}
    hanging off vertex 1."""
    edges = [(u, v) for u in range(14) for v in range(u + 1, 14)]
    edges += [(i, 14) for i in range(1, 14)]
    edges += [(1, 15), (1, 16), (15, 16)]
    return Graph.build(17, edges)


def gadget_witness():
    g = gadget_graph()
    forb = {v: frozenset() for v in g.vertices if v != 14}
    forb[0] = frozenset({5})
    return g, Template({14: 5}, forb)


# -- check_precondition -------------------------------------------------------

def test_precondition_k8():
    wp = check_precondition(generate(FamilySpec.complete(8)), ExtractConfig(k=1))
    assert wp.t == Template.empty(wp.h)


def test_precondition_rejects_colourable_graph():
    g = generate(FamilySpec.cycle(5))
    with pytest.raises(NotInextensibleError) as exc:
        check_precondition(g, ExtractConfig(k=1))
    col = exc.value.colouring
    assert set(col) == set(g.vertices)
    assert all(col[u] != col[v] for u, v in g.edges)


def test_precondition_glued_k15s():
    wp = check_precondition(glued15(), ExtractConfig(k=2))
    assert wp.h.n == 29


def test_precondition_trust_skips_solver():
    g = generate(FamilySpec.cycle(5))  # would fail under verify
    wp = check_precondition(g, ExtractConfig(k=1, precondition="trust"))
    assert wp.h == g


def test_precondition_budget_surfaces_limit():
    cfg = ExtractConfig(k=2, budget=SolverBudget(max_decisions=2))
    with pytest.raises(ResourceLimitError):
        check_precondition(glued15(), cfg)


# -- descend -------------------------------------------------------------------

def test_descend_zero_steps_on_complete_graph():
    cfg = ExtractConfig(k=2)
    wp = check_precondition(generate(FamilySpec.complete(15)), cfg)
    trace, final = descend(wp, cfg)
    assert trace == []
    assert final.h.n == 15


def test_descend_glued_k15s_one_step():
    cfg = ExtractConfig(k=2, debug_validate=True)
    wp = check_precondition(glued15(), cfg)
    trace, final = descend(wp, cfg)
    assert len(trace) == 1
    step = trace[0]
    assert step.cut == (0,)
    assert step.recursed == "separation"
    assert step.z_degree <= 4 and step.derived_degree <= step.template_degree
    assert final.h.vertices == frozenset(range(15))


def test_descend_join_is_immediately_connected():
    g = generate(FamilySpec.join(FamilySpec.cycle(5), FamilySpec.complete(5)))
    cfg = ExtractConfig(k=1)
    wp = check_precondition(g, cfg)
    trace, final = descend(wp, cfg)
    assert trace == []
    assert final.h == g
    assert brute_is_k_connected(final.h, 1)


def test_descend_nonempty_template_witness():
    g, t = gadget_witness()
    cfg = ExtractConfig(k=2, precondition="trust")
    assert is_valid_witness(g, t, 2, cfg.palette_for(g))
    trace, final = descend(WitnessPair(g, t, 2, "plain"), cfg)
    assert len(trace) == 1
    assert trace[0].cut == (1,)
    assert final.h.vertices == frozenset(range(15))
    conn, chrom = finalize_chromatic(final, cfg)
    assert chrom == {"kind": "colouring_unsat", "colours": 1}


def test_descend_completion_branch():
    # K_5 and K_15 sharing vertex 0.  The template loads the K_5 side with
    # degree 5 > k^2, so the big clique must play Z; the K_5 side then
    # extends and the completion template on the K_15 side is the
    # unsatisfiable one.
    g = generate(FamilySpec.glued_cliques((5, 15), 1))
    forb = {v: frozenset() for v in g.vertices if v not in (1, 2)}
    forb[3] = frozenset({0})
    t = Template({1: 0, 2: 1}, forb)
    cfg = ExtractConfig(k=2, precondition="trust")
    assert is_valid_witness(g, t, 2, cfg.palette_for(g))
    trace, final = descend(WitnessPair(g, t, 2, "plain"), cfg)
    assert len(trace) == 1
    assert trace[0].recursed == "completion"
    assert trace[0].derived_degree <= 8
    assert final.h.vertices == frozenset({0}) | frozenset(range(5, 19))
    # a hand-assembled certificate over this trace must replay cleanly
    conn, chrom = finalize_chromatic(final, cfg)
    cert = Certificate(
        graph_hash=graph_hash(g),
        k=2,
        mode="plain",
        palette_size=14,
        trace=tuple(trace),
        final_vertices=tuple(sorted(final.h.vertices)),
        connectivity_evidence=conn,
        chromatic_evidence=chrom,
        solver_decisions=0,
        solver_backtracks=0,
    )
    assert verify_certificate(g, cert)


def test_descend_multi_step_chain():
    # Three K_15s in a chain sharing distinct cut vertices: two descent
    # steps peel the chain down to a single clique.
    edges = []
    blocks = [list(range(0, 15)), list(range(14, 29)), list(range(28, 43))]
    for block in blocks:
        edges += [(u, v) for i, u in enumerate(block) for v in block[i + 1:]]
    g = Graph.build(43, edges)
    cfg = ExtractConfig(k=2)
    wp = check_precondition(g, cfg)
    trace, final = descend(wp, cfg)
    assert len(trace) == 2
    assert final.h.is_complete() and final.h.n == 15
    conn, chrom = finalize_chromatic(final, cfg)
    assert chrom == {"kind": "colouring_unsat", "colours": 1}


def test_descend_contradiction_on_corrupted_witness():
    # Drop the one forbidden colour that made the gadget witness tight: both
    # derived templates become satisfiable and the glue branch must fire.
    g, t = gadget_witness()
    broken = Template(dict(t.precolour), {**t.forbidden, 0: frozenset()})
    cfg = ExtractConfig(k=2, precondition="trust")
    with pytest.raises(InternalContradiction) as exc:
        descend(WitnessPair(g, broken, 2, "plain"), cfg)
    assert respects(g, broken, exc.value.colouring, cfg.palette_for(g))


# -- finalize ------------------------------------------------------------------

def test_finalize_k15():
    cfg = ExtractConfig(k=2)
    wp = WitnessPair(generate(FamilySpec.complete(15)), Template.empty(generate(FamilySpec.complete(15))), 2, "plain")
    conn, chrom = finalize_chromatic(wp, cfg)
    assert conn["kind"] == "complete"
    assert chrom == {"kind": "colouring_unsat", "colours": 1}


def test_finalize_k1_trivial_evidence():
    g = generate(FamilySpec.complete(8))
    cfg = ExtractConfig(k=1)
    conn, chrom = finalize_chromatic(WitnessPair(g, Template.empty(g), 1, "plain"), cfg)
    assert chrom == {"kind": "colouring_unsat", "colours": 0}
    assert is_colourable(g, 0) is None


def test_finalize_contradiction_on_bipartite_fake_witness():
    # K_{3,3} is 3-connected and 2-colourable: the interval construction
    # must complete any claimed witness for k = 3.
    g = Graph.build(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    cfg = ExtractConfig(k=3, precondition="trust")
    with pytest.raises(InternalContradiction) as exc:
        finalize_chromatic(WitnessPair(g, Template.empty(g), 3, "plain"), cfg)
    assert respects(g, Template.empty(g), exc.value.colouring, cfg.palette_for(g))


def test_finalize_requires_connectivity():
    g = glued15()
    cfg = ExtractConfig(k=2)
    with pytest.raises(ValueError):
        finalize_chromatic(WitnessPair(g, Template.empty(g), 2, "plain"), cfg)


# -- extract end-to-end ----------------------------------------------------------

def test_extract_k8():
    g = generate(FamilySpec.complete(8))
    cert = extract(g, ExtractConfig(k=1))
    assert cert.final_vertices == tuple(range(8))
    assert verify_certificate(g, cert)


def test_extract_glued_k15s():
    g = glued15()
    cert = extract(g, ExtractConfig(k=2))
    h = induced_subgraph(g, cert.final_vertices)
    assert h.n == 15
    assert brute_is_k_connected(h, 2)
    assert is_colourable(h, 1) is None
    assert verify_certificate(g, cert)


def test_extract_list_mode_glued_k9s():
    g = generate(FamilySpec.glued_cliques((9, 9), 1))
    cert = extract(g, ExtractConfig(k=2, mode="list"))
    assert len(cert.final_vertices) == 9
    assert cert.chromatic_evidence["kind"] == "choosability_witness"
    assert verify_certificate(g, cert)


def test_extract_deterministic_bytes():
    g = glued15()
    a = extract(g, ExtractConfig(k=2)).to_json()
    b = extract(g, ExtractConfig(k=2)).to_json()
    assert a == b


# -- verify_certificate ------------------------------------------------------------

def fresh_cert():
    g = glued15()
    return g, extract(g, ExtractConfig(k=2))


def test_verify_accepts_own_output():
    g, cert = fresh_cert()
    assert verify_certificate(g, cert)


def test_verify_rejects_shrunken_subgraph():
    g, cert = fresh_cert()
    doc = json.loads(cert.to_json())
    doc["final_vertices"] = [0]
    doc["trace"] = []
    assert not verify_certificate(g, Certificate.from_json(json.dumps(doc)))


def test_verify_rejects_tampered_degree_bounds():
    g, cert = fresh_cert()
    doc = json.loads(cert.to_json())
    doc["trace"][0]["z_degree"] = 5  # > k^2
    assert not verify_certificate(g, Certificate.from_json(json.dumps(doc)))
    doc = json.loads(cert.to_json())
    doc["trace"][0]["derived_degree"] = doc["trace"][0]["template_degree"] + 1
    assert not verify_certificate(g, Certificate.from_json(json.dumps(doc)))


def test_verify_rejects_wrong_graph():
    _, cert = fresh_cert()
    assert not verify_certificate(generate(FamilySpec.complete(8)), cert)


def test_verify_rejects_fabricated_split():
    g, cert = fresh_cert()
    doc = json.loads(cert.to_json())
    step = doc["trace"][0]
    # move a vertex from z to y: the split now has cross edges
    step["side_y"] = sorted(step["side_y"] + [step["side_z"][0]])
    step["side_z"] = step["side_z"][1:]
    assert not verify_certificate(g, Certificate.from_json(json.dumps(doc)))


def test_verify_rejects_wrong_chromatic_evidence():
    g, cert = fresh_cert()
    doc = json.loads(cert.to_json())
    doc["chromatic_evidence"]["colours"] = 14  # claims UNSAT at 14 colours
    assert not verify_certificate(g, Certificate.from_json(json.dumps(doc)))


def test_certificate_json_round_trip():
    g, cert = fresh_cert()
    again = Certificate.from_json(cert.to_json())
    assert again == cert
    assert again.to_json() == cert.to_json()
    assert cert.graph_hash == graph_hash(g)


def test_certificate_rejects_unknown_format():
    with pytest.raises(ValueError):
        Certificate.from_json(json.dumps({"format": "something-else"}))


def test_extract_config_validation():
    with pytest.raises(ValueError):
        ExtractConfig(k=0)
    with pytest.raises(ValueError):
        ExtractConfig(k=1, mode="banana")
    with pytest.raises(ValueError):
        ExtractConfig(k=1, precondition="hope")
