import csv
import io
import json
import math
from fractions import Fraction

import pytest

from hyperx import bounds
from hyperx.berge import parse_pattern
from hyperx.bounds import (
    ASSUMED,
    CERTIFIED,
    CSV_COLUMNS,
    BoundReport,
    book_alpha_rhs,
    book_chain,
    book_claim_reports,
    book_local_rhs,
    book_rho_bound,
    book_t_max,
    chain_ordered,
    check_book_local,
    check_book_theorems,
    check_cycle_theorems,
    check_linear_bound,
    check_walk_bound,
    check_walk_bound_all,
    cycle_alpha_rhs,
    cycle_chain,
    cycle_claim_reports,
    cycle_rho_bound,
    cycle_rho_sq_rhs,
    hypothesis_status,
    linear_rhs,
    measure_book_claims,
    measure_book_quantities,
    measure_cycle_claims,
    measure_cycle_quantities,
    recount_book_quantities,
    recount_cycle_quantities,
    reports_to_csv,
    reports_to_jsonl,
    required_patterns_book,
    required_patterns_cycle,
    walk_rhs,
)
from hyperx.errors import BadParams, NotCertifiedFree, NotLinear
from hyperx.genlab import enumerate_small, loose_cycle, loose_path, random_linear, star
from hyperx.hypercore import build
from hyperx.spectral import max_entry_vertex, spectral_radius

C5_FREE = {"cycle:5": "free"}
C6_FREE = {"cycle:6": "free"}
BOOK_FREE = {"book:2": "free", "kst:2,1": "free"}
BOOK_FREE_22 = {"book:2": "free", "kst:2,2": "free"}


def sample_graphs():
    out = [loose_path(2, 3), loose_path(4, 3), loose_cycle(5, 3), star(3, 3), loose_path(3, 4)]
    out += [random_linear(3, n, m, seed) for n, m, seed in [(9, 5, 1), (11, 6, 2), (13, 8, 3), (15, 8, 4)]]
    out += [random_linear(4, 13, 4, 5), random_linear(4, 16, 8, 6)]
    return out


# ---------------------------------------------------------------------------
# walk and linear bounds


def test_walk_rhs_examples(edge3, path2):
    for v in range(3):
        assert walk_rhs(edge3, 0.0, v) == 1
        assert walk_rhs(edge3, 0.5, v) == 1
    assert walk_rhs(path2, 0.0, 2) == 2


def test_linear_bound_examples(edge3, path2, fano):
    r = check_linear_bound(edge3, spectral_radius(edge3, 0.0))
    assert r.rhs == 1 and r.holds and abs(r.lhs - 1) < 1e-9
    r = check_linear_bound(path2, spectral_radius(path2, 0.0))
    assert r.vertex == 2 and r.rhs == 2 and r.holds
    assert abs(r.lhs - 2 ** (2 / 3)) < 1e-9
    r = check_linear_bound(fano, spectral_radius(fano, 0.0))
    assert r.rhs == 9 and r.holds and abs(r.slack) < 1e-8


def test_linear_rhs_needs_linear():
    H = build(3, 4, [(0, 1, 2), (0, 1, 3)])
    with pytest.raises(NotLinear):
        linear_rhs(H, 0.0, 0)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5])
def test_walk_rhs_equals_linear_rhs(alpha):
    for H in sample_graphs():
        for v in range(H.n):
            assert walk_rhs(H, alpha, v) == linear_rhs(H, alpha, v)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5])
def test_walk_bound_at_max_vertex_within_ten_tol(alpha):
    for H in sample_graphs():
        res = spectral_radius(H, alpha)
        u = max_entry_vertex(res)
        assert res.rho**2 <= float(walk_rhs(H, alpha, u)) + 10 * res.tol
        assert check_walk_bound(H, res).holds


def test_walk_bound_all_vertices():
    for H in sample_graphs()[:6]:
        reports = check_walk_bound_all(H, spectral_radius(H, 0.25))
        assert len(reports) == H.n and all(r.holds for r in reports)


# ---------------------------------------------------------------------------
# closed-form right-hand sides


def test_cycle_anchor():
    assert cycle_rho_sq_rhs(13, 5) == 51
    assert cycle_rho_bound(13, 5) == pytest.approx(7.1414, abs=1e-4)
    assert cycle_rho_bound(5, 5) == pytest.approx(math.sqrt(17))
    assert cycle_alpha_rhs(13, 5, 0.0) == cycle_rho_sq_rhs(13, 5)


def test_book_anchor():
    assert bounds.book_constant(3) == 19
    assert bounds.book_rho_sq_rhs(10, 3, 2) == Fraction(171, 8)
    assert book_rho_bound(10, 3, 2) == pytest.approx(4.6233, abs=1e-4)
    assert book_rho_bound(5, 3, 2) == pytest.approx(math.sqrt(19 * 4 / 8))


def test_book_t_max_kills_degree_term():
    for k in (3, 4, 5):
        for s in (2, 3):
            t = book_t_max(k, s)  # may be a half-integer; the identity is in t itself
            rhs = [book_local_rhs(20, k, s, t, 0.0, d) for d in (1, 2, 3)]
            assert rhs[0] == rhs[1] == rhs[2]


def test_fraction_alpha_is_exact():
    assert cycle_alpha_rhs(9, 5, 0.25) == Fraction(1, 4) * 16 + Fraction(3, 4) * 34
    assert book_alpha_rhs(9, 3, 2, 0.5) == Fraction(1, 2) * 16 + Fraction(1, 2) * 19


# ---------------------------------------------------------------------------
# hypotheses


def test_hypothesis_status():
    pats = required_patterns_book(2, 2)
    assert [G.dsl for G in pats] == ["book:2", "kst:2,2"]
    assert hypothesis_status(BOOK_FREE_22, pats) == CERTIFIED
    assert hypothesis_status({"book:2": "free"}, pats, assume_free=True) == ASSUMED
    with pytest.raises(NotCertifiedFree):
        hypothesis_status({"book:2": "free", "kst:2,2": "unknown"}, pats)
    with pytest.raises(NotCertifiedFree):
        hypothesis_status({"book:2": "contains", "kst:2,2": "free"}, pats, assume_free=True)
    assert required_patterns_cycle(5)[0].dsl == "cycle:5"


def test_theorems_need_certificate(path2):
    res = spectral_radius(path2, 0.0)
    with pytest.raises(NotCertifiedFree):
        check_cycle_theorems(path2, res, 5)
    rows = check_cycle_theorems(path2, res, 5, assume_free=True)
    assert all(r.certificate == ASSUMED for r in rows)


# ---------------------------------------------------------------------------
# theorem suites


def test_cycle_theorems_loose_path(path2):
    res = spectral_radius(path2, 0.0)
    rows = check_cycle_theorems(path2, res, 5, C5_FREE)
    assert [r.theorem for r in rows] == ["cycle-local", "cycle-maxdeg", "cycle-rho", "cycle-alpha"]
    assert all(r.holds and r.certificate == CERTIFIED for r in rows)
    assert rows[2].rhs == 17
    assert rows[0].rhs == Fraction(3 * 4, 4) + 7 * 2


def test_cycle_rho_row_needs_plain_radius(path2):
    res = spectral_radius(path2, 0.5)
    assert "cycle-rho" not in [r.theorem for r in check_cycle_theorems(path2, res, 5, C5_FREE)]
    rows = check_cycle_theorems(path2, res, 5, C5_FREE, rho0=spectral_radius(path2, 0.0))
    assert "cycle-rho" in [r.theorem for r in rows]


def test_cycle_theorem_params():
    H = loose_path(2, 4)
    with pytest.raises(BadParams):
        check_cycle_theorems(H, spectral_radius(H, 0.0), 5, C5_FREE)
    H = loose_path(2, 3)
    with pytest.raises(BadParams):
        check_cycle_theorems(H, spectral_radius(H, 0.0), 4, {"cycle:4": "free"})


def test_book_theorems_single_edge(edge3):
    res = spectral_radius(edge3, 0.0)
    rows = check_book_theorems(edge3, res, 2, 1, BOOK_FREE)
    assert [r.theorem for r in rows] == ["book-local", "book-maxdeg", "book-rho", "book-alpha"]
    assert all(r.holds for r in rows)


def test_book_t_range(edge3):
    res = spectral_radius(edge3, 0.0)
    t_bad = int(book_t_max(3, 2)) + 1
    certs = {"book:2": "free", f"kst:2,{t_bad}": "free"}
    with pytest.raises(BadParams):
        check_book_theorems(edge3, res, 2, t_bad, certs)
    local = check_book_local(edge3, res, 2, t_bad, certs)
    assert local.theorem == "book-local" and local.holds


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5])
def test_cycle_theorems_hold_on_certified_random(alpha):
    from hyperx.berge import Verdict, is_berge_free

    checked = 0
    for seed in range(40):
        H = random_linear(3, 11, 5, seed)
        if is_berge_free(H, parse_pattern("cycle:5")) is not Verdict.FREE:
            continue
        rows = check_cycle_theorems(H, spectral_radius(H, alpha), 5, C5_FREE,
                                    rho0=spectral_radius(H, 0.0))
        assert all(r.holds for r in rows)
        checked += 1
    assert checked >= 5


# ---------------------------------------------------------------------------
# claims


def test_cycle_claims_loose_path(path2):
    q, rows = measure_cycle_claims(path2, 2, 5, C5_FREE)
    by = {r.theorem: r for r in rows}
    assert by["cycle-outer-edges"].lhs == 0 and by["cycle-outer-edges"].rhs == 0
    assert by["cycle-inner-edges"].lhs == 4 and by["cycle-inner-edges"].rhs == 34
    assert by["cycle-incident-edges"].lhs == 2 == by["cycle-incident-edges"].rhs
    assert all(r.holds for r in rows)
    assert q.counts == (0, 0, 2, 0)


def test_cycle_claims_single_edge(edge3):
    _, rows = measure_cycle_claims(edge3, 0, 5, C5_FREE)
    assert all(r.holds for r in rows)
    assert {r.theorem: r.lhs for r in rows}["cycle-near-edges"] == 0


def test_cycle_claims_fano_quantities(fano):
    q = measure_cycle_quantities(fano, 0)
    assert q.counts == (0, 0, 3, 4) and q.near_edges == 4
    assert q.aux_edges == ((1, 3), (1, 4), (2, 3), (2, 4))


def test_cycle_claims_report_violations(fano):
    """Forged quantities past each bound must come back as failures, not be dropped."""
    from dataclasses import replace

    q = measure_cycle_quantities(fano, 0)
    bad = replace(q, near_edges=16, incident_two=2, counts=(0, 1, 3, 4))
    by = {r.theorem: r for r in cycle_claim_reports(bad, 5, certificate=ASSUMED)}
    assert by["cycle-near-edges"].holds is False
    assert by["cycle-incident-edges"].holds is False
    assert by["cycle-outer-edges"].holds is False
    long_path = tuple((i, i + 1) for i in range(1, 8))
    q4 = replace(q, d_u=4, aux_edges=long_path)
    aux = {r.theorem: r for r in cycle_claim_reports(q4, 5, certificate=ASSUMED)}["cycle-aux-graph"]
    assert aux.holds is False and "path" in aux.note


def test_cycle_claims_refuse_contains(triangle3):
    with pytest.raises(NotCertifiedFree):
        measure_cycle_claims(triangle3, 0, 5, {"cycle:5": "contains"}, assume_free=True)


def test_cycle_recount_agrees():
    graphs = list(enumerate_small(3, 8, 3)) + sample_graphs()
    for H in graphs:
        if H.k != 3:
            continue
        for u in range(H.n):
            assert measure_cycle_quantities(H, u) == recount_cycle_quantities(H, u)


def test_book_claims_loose_path(path2):
    q = measure_book_quantities(path2, 2)
    rows = book_claim_reports(q, 2, 1, certificate=ASSUMED)
    by = {r.theorem: r for r in rows}
    assert by["book-common-nbhd"].lhs == 1 and by["book-common-nbhd"].rhs == 4
    assert by["book-outer-sum"].lhs == 0 and by["book-outer-sum"].rhs == 0
    assert all(r.holds for r in rows)


def test_book_claims_single_edge(edge3):
    q, rows = measure_book_claims(edge3, 0, 2, 1, BOOK_FREE)
    assert all(r.holds for r in rows)
    assert max(q.common_nbhd.values()) == 1  # k - 2


def test_book_recount_agrees():
    for H in sample_graphs() + list(enumerate_small(3, 7, 3)):
        for u in range(H.n):
            assert measure_book_quantities(H, u) == recount_book_quantities(H, u)


def test_book_claims_rows():
    H = random_linear(4, 13, 4, 5)
    _, rows = measure_book_claims(H, 0, 2, 2, assume_free=True)
    assert [r.theorem for r in rows] == list(bounds.BOOK_CLAIMS)
    assert rows[2].relation == "=="


# ---------------------------------------------------------------------------
# chains


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5])
def test_chains_ordered(alpha):
    for H in sample_graphs():
        for u in range(H.n):
            if H.k == 3:
                assert chain_ordered(cycle_chain(H, u, 5, alpha))
            assert chain_ordered(book_chain(H, u, 2, 1, alpha))


def test_chain_ordered_helper():
    assert chain_ordered([Fraction(1), Fraction(2), Fraction(2)])
    assert not chain_ordered([Fraction(3), Fraction(2)])


# ---------------------------------------------------------------------------
# output


def test_report_csv_and_jsonl(path2):
    rows = check_cycle_theorems(path2, spectral_radius(path2, 0.0), 5, C5_FREE, instance="p")
    rows.append(BoundReport("p", "cycle-local", 0.0, {"l": 6}, None, None, None, "missing", note="why"))
    text = reports_to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_COLUMNS
    assert parsed[1][0] == "p" and parsed[1][3] == "l=5" and parsed[1][7] == "true"
    assert parsed[3][5] == "17"
    assert parsed[-1][7] == "skipped"
    lines = [json.loads(x) for x in reports_to_jsonl(rows).splitlines()]
    assert lines[2]["rhs"] == 17 and lines[-1]["holds"] is None
    assert lines[0]["allowance"] == pytest.approx(1e-8)


def test_report_slack():
    r = BoundReport("x", "walk", 0.0, {}, 1.5, Fraction(2), True, "none-needed")
    assert r.slack == 0.5
    r = BoundReport("x", "cycle-inner-edges", None, {}, 4, 34, True, "certified")
    assert r.slack == 30 and not r.skipped
