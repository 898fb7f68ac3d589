"""Seifert circles, the signed circle graph, nesting, parallel pairs."""

from fibercheck.builders import torus_link
from fibercheck.conway import conway
from fibercheck.seifert import build_seifert, split_nested


def test_trefoil_model(diagrams):
    m = build_seifert(diagrams["trefoil_std"])
    assert (m.s, m.c, m.beta1, m.euler) == (2, 3, 2, -1)
    assert all(sorted((u, v)) == [0, 1] and sign == 1
               for u, v, sign in m.graph_edges)


def test_kink_model(diagrams):
    m = build_seifert(diagrams["kink"])
    assert (m.s, m.c, m.beta1) == (2, 1, 0)


def test_fig8_model(diagrams):
    m = build_seifert(diagrams["fig8_braid"])
    assert (m.s, m.c, m.beta1) == (3, 4, 2)
    signs = sorted(sign for _, _, sign in m.graph_edges)
    assert signs == [-1, -1, 1, 1]
    # path graph with doubled edges: degrees 2, 4, 2
    assert sorted(m.circle_degree) == [2, 2, 4]


def test_free_loop_counts_as_circle(diagrams):
    m = build_seifert(diagrams["unknot"])
    assert (m.s, m.c, m.beta1) == (1, 0, 0)


def test_nesting(diagrams):
    assert build_seifert(diagrams["trefoil_std"]).nested_circles == ()
    fig8 = build_seifert(diagrams["fig8_braid"])
    assert len(fig8.nested_circles) == 1
    (mid,) = fig8.nested_circles
    assert fig8.circle_degree[mid] == 4
    assert build_seifert(diagrams["ten151_aa"]).nested_circles != ()
    assert build_seifert(diagrams["theta7_aa"]).nested_circles == ()


def test_split_nested_fig8(diagrams):
    d = diagrams["fig8_braid"]
    (mid,) = build_seifert(d).nested_circles
    d1, d2 = split_nested(d, mid)
    fps = {d1.canonical().fingerprint, d2.canonical().fingerprint}
    expect = {torus_link(2).canonical().fingerprint,
              torus_link(2).mirror().canonical().fingerprint}
    assert fps == expect


def test_split_nested_preserves_beta1_and_conway_factors(diagrams):
    for name in ("fig8_braid", "ten151_aa"):
        d = diagrams[name]
        m = build_seifert(d)
        circle = m.nested_circles[0]
        d1, d2 = split_nested(d, circle)
        assert build_seifert(d1).beta1 + build_seifert(d2).beta1 == m.beta1


def test_parallel_pairs_trefoil(diagrams):
    m = build_seifert(diagrams["trefoil_std"])
    assert len(m.parallel_pairs) == 3
    assert all(p.same_sign and p.adjacent for p in m.parallel_pairs)


def test_parallel_pairs_fig8(diagrams):
    # one pair per doubled braid letter; the interleaving makes them
    # non-adjacent (no shared bigon), so they cannot be cut directly
    m = build_seifert(diagrams["fig8_braid"])
    assert len(m.parallel_pairs) == 2
    assert all(p.same_sign and not p.adjacent for p in m.parallel_pairs)


def test_beta1_equals_conway_degree_on_fibered_corpus(corpus):
    for name, (d, _, verdict) in corpus.items():
        if verdict != "Fibered":
            continue
        assert conway(d).degree == build_seifert(d).beta1, name
