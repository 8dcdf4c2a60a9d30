from collections import Counter

import pytest

from polarb.extremal import (
    bipartition_latins_greeks,
    cross_closure,
    cross_graph,
    enumerate_maximal_cross_pairs,
    example_h7_cross_sample,
    example_h7_sizes,
    verify_hyperplane_section,
    verify_maximality_lemma,
    verify_prop10_counts,
    verify_w3_triples,
    verify_zgh,
)

_GRAPHS = {}


def graph_of(catalog, family, d, q):
    key = (family, d, q)
    if key not in _GRAPHS:
        _GRAPHS[key] = cross_graph(catalog(family, d, q))
    return _GRAPHS[key]


def test_closure_of_empty_set(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    cert = cross_closure((), g)
    assert cert.sizes == (27, 0)
    assert cert.label == "whole-vs-empty"
    assert cert.product == 0


def test_closure_of_single_line(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    cert = cross_closure((0,), g)
    assert cert.sizes == (11, 1)  # (q^2+1)q + 1 lines meet a fixed line
    assert cert.label == "single-line-star"
    assert 0 in cert.y and cert.z == (0,)


def test_closure_of_two_meeting_lines_is_a_pencil(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    a, b = next(
        (x, y) for x in range(g.n) for y in range(x + 1, g.n) if not (g.adj[x] >> y) & 1
    )
    cert = cross_closure((a, b), g)
    assert cert.y == cert.z
    assert cert.label == "point-pencil-EKR"
    assert cert.sizes == (3, 3)


def test_closure_idempotence(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    for seed in [(0,), (0, 1), (3, 7, 11)]:
        cert = cross_closure(seed, g)
        again = cross_closure(cert.z, g)
        assert {tuple(cert.y), tuple(cert.z)} == {tuple(again.y), tuple(again.z)}


def test_h34_sweep_finds_the_five_families(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    certs = enumerate_maximal_cross_pairs(g)
    counts = Counter(c.label for c in certs)
    assert counts == {
        "whole-vs-empty": 1,
        "single-line-star": 27,
        "point-pencil-EKR": 45,
        "two-line-transversal": 216,
        "regulus-triple": 360,
    }
    products = {lab: {c.product for c in certs if c.label == lab} for lab in counts}
    assert products == {
        "whole-vs-empty": {0},
        "single-line-star": {11},
        "point-pencil-EKR": {9},
        "two-line-transversal": {10},
        "regulus-triple": {9},
    }
    assert max(c.product for c in certs) == 11


def test_sweep_limit_guard(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    with pytest.raises(ValueError):
        enumerate_maximal_cross_pairs(g, limit=5)


def test_q42_and_w32_maximum_pairs(catalog):
    for family in ("Qparabolic", "W"):
        g = graph_of(catalog, family, 2, 2)
        certs = enumerate_maximal_cross_pairs(g)
        best = max(c.product for c in certs)
        assert best == 9
        top = Counter(c.label for c in certs if c.product == best)
        assert top == {"point-pencil-EKR": 15, "hyperbolic-subgeometry": 10}
        # equality forces |Y| = |Z| = alpha*n = the bound value
        assert all(c.sizes == (3, 3) for c in certs if c.product == best)


def test_w33_maximum_pairs_are_ekr(catalog):
    g = graph_of(catalog, "W", 2, 3)
    certs = enumerate_maximal_cross_pairs(g)
    best = max(c.product for c in certs)
    assert best == 16
    assert all(c.y == c.z for c in certs if c.product == best)


def test_bipartition_q72(catalog):
    cat = catalog("Qplus", 4, 2)
    x1, x2 = bipartition_latins_greeks(cat)
    assert len(x1) == len(x2) == 135
    assert set(x1) | set(x2) == set(range(270))
    g = graph_of(catalog, "Qplus", 4, 2)
    # d even: no disjoint pairs across the classes, some inside each class
    x2mask = sum(1 << b for b in x2)
    assert all((g.adj[a] & x2mask) == 0 for a in x1)
    assert any((g.adj[a] >> b) & 1 for a in x1 for b in x1 if b > a)


def test_bipartition_needs_qplus(catalog):
    with pytest.raises(ValueError):
        bipartition_latins_greeks(catalog("W", 2, 2))


def _grid(catalog):
    g = graph_of(catalog, "Qparabolic", 2, 2)
    certs = enumerate_maximal_cross_pairs(g)
    return g.cat, next(c for c in certs if c.label == "hyperbolic-subgeometry")


def test_prop10_on_grid_pair(catalog):
    cat, pair = _grid(catalog)
    rep = verify_prop10_counts(cat, pair, pair.y[0])
    assert rep["ok"], rep["details"]


def test_prop10_rejects_foreign_generator(catalog):
    cat, pair = _grid(catalog)
    with pytest.raises(ValueError):
        verify_prop10_counts(cat, pair, pair.z[0])


def test_zgh_on_grid_pair(catalog):
    cat, pair = _grid(catalog)
    rep = verify_zgh(cat, pair, pair.y[0], pair.y[1])
    assert rep["ok"], rep["details"]


def test_zgh_requires_disjoint_generators(catalog):
    cat, pair = _grid(catalog)
    with pytest.raises(ValueError):
        verify_zgh(cat, pair, pair.y[0], pair.y[0])


def test_hyperplane_sections(catalog):
    for d in (2, 3):
        cat = catalog("Qparabolic", d, 2)
        pm = cat.point_masks
        hidx = next(j for j in range(cat.n) if pm[0] & pm[j] == 0)
        rep = verify_hyperplane_section(cat, 0, hidx)
        assert rep["ok"], rep["details"]


def test_hyperplane_section_rejects_meeting_generators(catalog):
    cat = catalog("Qparabolic", 2, 2)
    with pytest.raises(ValueError):
        verify_hyperplane_section(cat, 0, 0)


def test_w3_triples_odd_and_even():
    rep3 = verify_w3_triples(3)
    assert rep3["ok"]
    assert rep3["counts"] == {0: 1080, 2: 2160}
    rep2 = verify_w3_triples(2)  # q even: outside the statement, report only
    assert rep2["ok"]
    assert rep2["counts"] == {1: 60, 3: 20}


def test_maximality_lemma_on_h34_certificates(catalog):
    g = graph_of(catalog, "Hodd", 2, 4)
    certs = enumerate_maximal_cross_pairs(g)
    star = next(c for c in certs if c.label == "single-line-star")
    pencil = next(c for c in certs if c.label == "point-pencil-EKR")
    assert verify_maximality_lemma(g.cat, star)["ok"]
    assert verify_maximality_lemma(g.cat, pencil)["ok"]


def test_maximality_lemma_rejects_non_maximal(catalog):
    from polarb.extremal import CrossPairCertificate

    cat = catalog("Hodd", 2, 4)
    fake = CrossPairCertificate(y=(0,), z=(1,), product=1, maximal=False, label="other")
    with pytest.raises(ValueError):
        verify_maximality_lemma(cat, fake)


def test_example_h7_sizes_match_closed_polynomials():
    size_y, size_z = example_h7_sizes(2)
    q = 2
    assert size_y == 1 + q + q**3 + q**4 + q**5 + q**6 + q**7 + 2 * q**8 + q**10 + q**12 == 5883
    assert size_z == 1 + q + q**3 + q**5 + q**7 == 171


def test_example_h7_cross_property_sample():
    rep = example_h7_cross_sample(2, samples=2000)
    assert rep["ok"] and rep["disjoint_pairs"] == 0
