from fractions import Fraction

import pytest

import tautring as tr


def coeff_of_edges(cls, edges):
    return sum((c for t, c in tr.coefficients(cls) if len(t["graph"]["edges"]) == edges), Fraction(0))


def test_enumerate_m04():
    graphs = tr.enumerate_graphs(0, 4, 1)
    assert len(graphs) == 4
    assert tr.enumerate_graphs(0, 4, 1) == graphs


def test_unstable_rejected():
    with pytest.raises(ValueError):
        tr.enumerate_graphs(0, 2, 1)


def test_omega_loop_term():
    cls = tr.omega(1, [0], 1)
    assert coeff_of_edges(cls, 1) == Fraction(-1, 24)


def test_dr_coefficient_m11():
    cls = tr.dr_coefficient(1, [1, 1, 1, 1], [0, 1, 1, 1, 0], [2, 3, 4, 5])
    values = sorted(c for _, c in tr.coefficients(cls))
    assert values == [Fraction(-6), Fraction(144)]


def test_boundary_expression_and_cache(tmp_path):
    db = tmp_path / "db.jsonl"
    first = tr.boundary_expression(1, 1, "psi1", db)
    assert [c for _, c in tr.coefficients(first["value"])] == [Fraction(1, 24)]
    lines = db.read_text()
    assert tr.boundary_expression(1, 1, "psi1", db) == first
    assert db.read_text() == lines
    db.write_text(lines.replace('"coeff":"1/24"', '"coeff":"1/12"'))
    with pytest.raises(tr.IntegrityError):
        tr.boundary_expression(1, 1, "psi1", db)


def test_degree_below_genus_refused():
    with pytest.raises(ValueError):
        tr.boundary_expression(2, 1, "psi1")


def test_star_reduce_and_pushforward():
    psi = {"genus": 1, "markings": 1,
           "terms": [{"coeff": "1", "graph": {"genera": [1], "legs": [[1, 0]], "edges": []},
                      "kappa": [[]], "psi_legs": [1], "psi_edges": []}]}
    reduced = tr.star_reduce(psi)
    assert all(len(t["graph"]["edges"]) == 1 for t in reduced["terms"])
    psi2 = {"genus": 1, "markings": 2,
            "terms": [{"coeff": "1", "graph": {"genera": [1], "legs": [[1, 0], [2, 0]], "edges": []},
                       "kappa": [[]], "psi_legs": [0, 1], "psi_edges": []}]}
    assert [c for _, c in tr.coefficients(tr.pushforward(psi2))] == [Fraction(1)]
