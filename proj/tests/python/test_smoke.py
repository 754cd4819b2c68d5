import math

import iglp


def test_hermite_values():
    assert iglp.hermite(0, 0.7) == 1.0
    assert iglp.hermite(3, 2.0) == 40.0
    assert iglp.stirling2(5, 3) == 25


def test_kernel_pin():
    assert math.isclose(
        iglp.invgauss_heat([0.0], [0.0], 1.0), 0.22320643594977561, rel_tol=1e-14
    )


def test_expansion_roundtrip_and_actions():
    f = iglp.HermiteExpansion(1, [([2], 1.5)])
    g = iglp.HermiteExpansion.from_json(f.to_json())
    assert g.terms() == [([2], 1.5)]

    h = iglp.heat_action(f, 0.5)
    ((k, c),) = h.terms()
    assert k == [2]
    assert math.isclose(c, 1.5 * math.exp(-3.0 * 0.5), rel_tol=1e-14)

    r = iglp.riesz_transform(f, 0)
    ((k, c),) = r.terms()
    assert k == [3]
    assert math.isclose(c, -1.5 / math.sqrt(3.0), rel_tol=1e-14)


def test_g_value_closed_form():
    f = iglp.HermiteExpansion(1, [([1], 1.0)])
    g = iglp.g_value(f, [0.3], beta=1.0, q=2.0)
    want = 0.5 * abs(iglp.hermite_tilde([1], [0.3]))
    assert math.isclose(g, want, rel_tol=1e-6)


def test_regions():
    assert iglp.m_admissibility([2.0]) == 0.25
    assert iglp.in_local_region([0.0], [0.5], 1.0)
    assert not iglp.in_local_region([0.0], [1.5], 1.0)
    assert iglp.j_region_log_measure(4.0) > iglp.j_region_log_measure(3.0)


def test_corpus():
    corpus = iglp.make_corpus("eigen:2", 1)
    assert len(corpus) == 3
    doc = iglp.corpus_to_json(corpus)
    assert doc.startswith("[")
