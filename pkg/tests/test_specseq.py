import pytest

from loopcoh import specseq
from loopcoh.loopspace import TruncSpaceParams, main_poincare
from loopcoh.series import expand


def test_d2_target():
    assert specseq.d2_target(0, 6) == (2, 5)
    e2 = specseq.serre_e2(2, 2, 16)
    assert e2[(0, 6)] == 1 and e2[(2, 5)] == 1


@pytest.mark.parametrize("r,p", [(1, 2), (2, 3), (2, 2)])
def test_collapse_examples(r, p):
    assert specseq.serre_collapse_check(r, p)


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("p", (2, 3, 5))
def test_rank_equals_presentation(r, p):
    N = TruncSpaceParams(r, p, 2).default_cutoff()
    a, b = specseq.serre_e3(r, p, N)
    assert a.entries == b.entries
    assert a.total_series(N) == specseq.e3_closed_form(r, p, N)
    assert specseq.image_column_check(r, p, N) == []


@pytest.mark.parametrize("r,p", [(2, 2), (1, 3), (4, 3), (3, 5), (2, 5)])
def test_presentation_ring(r, p):
    N = 14
    ring = specseq.presentation_ring(r, p, N)
    assert ring.dims(N) == specseq.serre_e3_rank(r, p, N).total_series(N).to_list()


def test_presentation_ring_coprime_only():
    with pytest.raises(ValueError):
        specseq.presentation_ring(2, 3, 10)


def test_morse_examples():
    eq = specseq.morse_e1(1, 2, True, 10)
    assert eq.series() == main_poincare(1, 2, 10)
    a, b = specseq.morse_e1(2, 2, True, 24).series(), main_poincare(2, 2, 24)
    assert a.dominates(b) and a != b
    assert specseq.morse_e1(2, 3, True, 0).series().to_list() == [1]
    col0 = specseq.morse_e1(2, 5, False, 10).columns[0]
    assert col0.finite == {0: 1, 2: 1, 4: 1}


def test_morse_column_labels():
    col = specseq.morse_e1(1, 2, True, 8).columns[2]
    assert col.free == [("alpha_2*1", 3), ("alpha_2*x", 5), ("zeta_2*1", 4), ("zeta_2*x", 6)]


@pytest.mark.parametrize("r,p,want", [(1, 2, 2), (2, 2, 2), (2, 3, 3), (3, 5, 3)])
def test_odd_count(r, p, want):
    assert specseq.odd_count(r, p, 1) == want
    assert specseq.odd_count(r, p, 3) == 3 * want


@pytest.mark.parametrize("r", range(1, 9))
@pytest.mark.parametrize("p", (2, 3, 5, 7))
def test_structural(r, p):
    rep = specseq.structural_checks(r, p)
    assert rep.ok, rep.failures()
    N = TruncSpaceParams(r, p, 2).default_cutoff()
    assert specseq.morse_e1(r, p, True, N).series(N) == expand(specseq.morse_closed_form(r, p), N)


def test_page_rendering():
    page = specseq.serre_e3_rank(1, 2, 4)
    rows = page.to_rows()
    assert rows[0] == {"s": 0, "t": 0, "dim": 1, "labels": []}
    assert "t\\s" in page.grid()
    empty = specseq.BigradedPage("E3", {}, 0)
    assert empty.grid() == "(none)"
    assert empty.to_rows() == []


def test_check_report_failures():
    rep = specseq.CheckReport(1, 2)
    rep.record("x", [(3, 4)])
    assert not rep.ok
    assert rep.failures() == [{"check": "x", "r": 1, "p": 2, "where": [3, 4]}]
