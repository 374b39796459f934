import pytest

from loopcoh import geodesy
from loopcoh.algebra import GF, QQ
from loopcoh.checks import membership_failures
from loopcoh.series import expand


def test_phi_and_q_sequences():
    phis = geodesy.phi_sequence(3)
    assert phis[0] == {(0, 0): 1} and phis[1] == {(1, 0): -1}
    assert phis[2] == {(2, 0): 1, (0, 1): -1}
    assert phis[3] == {(3, 0): -1, (1, 1): 2}
    assert geodesy.q_poly(2) == {(0, 2): 1, (1, 1): 1, (2, 0): 1}
    assert geodesy.q_recursion_holds(10)
    assert geodesy.q_diagonal_holds(10)


def test_grassmann():
    assert geodesy.grassmann_ring(2, QQ).dims(8) == [1, 0, 1, 0, 1, 0, 0, 0, 0]
    assert geodesy.grassmann_ring(1, QQ).dims(6) == [1, 0, 0, 0, 0, 0, 0]
    assert geodesy.grassmann_ring(3, GF(2)).dim(4) == 2


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("F", [QQ, GF(2), GF(3), GF(5), GF(7)], ids=str)
def test_projective_bundle_series(r, F):
    N = 4 * r + 4
    R = geodesy.projective_bundle_ring(r, F)
    assert R.dims(N) == expand(geodesy.projective_bundle_series(r), N).to_list()
    assert R.ideal_membership(geodesy.q_poly(r + 2))


def test_projective_bundle_r1():
    assert geodesy.projective_bundle_ring(1, QQ).dims(6) == [1, 0, 1, 0, 0, 0, 0]


def test_qcheck_examples():
    assert geodesy.qcheck_membership({(3, 0): 1}, 2)
    for k in range(3):
        assert not geodesy.qcheck_membership(geodesy.a_class(2, k), 2)
    for m in range(2, 9):
        assert geodesy.qcheck_membership(geodesy.q_poly(m), 2)
    assert geodesy.qcheck_membership([0, 0, 0], 2)
    # below degree r the ideal is zero
    assert not geodesy.qcheck_membership(geodesy.q_poly(1), 2)


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("p", (2, 3, 5))
def test_qcheck_matches_membership(r, p):
    assert membership_failures(r, p) == []


def test_kernel_examples():
    rep = geodesy.kernel_of_x1_minus_x2(2, 3)
    assert rep.ok and rep.a_indices == [0, 1, 2]
    assert sum(rep.kernel_dims.values()) == 3
    rep = geodesy.kernel_of_x1_minus_x2(2, 2)
    assert rep.ok and rep.a_indices == [1, 2]
    assert sum(rep.kernel_dims.values()) == 2


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("p", (2, 3, 5, 7))
def test_kernel_and_restriction(r, p):
    rep = geodesy.kernel_of_x1_minus_x2(r, p)
    assert rep.ok
    assert sum(rep.kernel_dims.values()) == sum(rep.cokernel_dims.values())
    assert all(geodesy.a_class_identity_holds(r, k) for k in range(r + 1))
    assert geodesy.restriction_is_surjective(r, p)


def test_unit_tangent():
    assert geodesy.unit_tangent_ring(1, 2).dims(5) == [1, 1, 1, 1, 0, 0]
    top = lambda R: max(d for d in range(30) if R.dim(d))
    assert top(geodesy.unit_tangent_ring(2, 3)) == 7
    assert top(geodesy.unit_tangent_ring(2, 2)) == 7


def test_borel_cases():
    g = geodesy.geodesic_borel_ring(2, 3, 1)
    assert g.case == geodesy.COPRIME
    assert g.ring.dims(10) == geodesy.projective_bundle_ring(2, GF(3)).dims(10)
    g = geodesy.geodesic_borel_ring(2, 3, 3)
    assert g.case == geodesy.DIV_DIVIDING
    assert g.ring.dims(14) == expand(g.series(), 14).to_list()
    g = geodesy.geodesic_borel_ring(2, 2, 2)
    assert g.case == geodesy.DIV_NOT_DIVIDING
    dims = g.ring.dims(9)
    assert min(d for d in range(10) if d % 2 and dims[d]) == 5


def test_mutation_is_scoped():
    with geodesy.mutation("qk-sign"):
        assert not geodesy.q_recursion_holds(4)
    assert geodesy.q_recursion_holds(4)


def test_report_rows():
    rows = geodesy.report_rows("geodesics", 2, 3, N=6)
    assert [r["dim"] for r in rows] == [1, 0, 2, 0, 2, 0, 1]
    assert rows[2]["basis"] == ["x1", "x2"]
