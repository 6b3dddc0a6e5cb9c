import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarizability.errors import DomainError
from polarizability.intkernel import prime_power_decompose
from polarizability.tzmodel import (
    QuadIntMatrix2,
    b_matrix,
    check_assumptions,
    commutant_basis,
    endomorphism_field,
    hnf,
    identity,
    integer_commutant_rank,
    kernel_structure,
    o_coords,
    o_element,
    polarization_degree,
    tz_summary,
    zeta_identity_checks,
    zeta_matrix,
)

GOOD_Q = [7, 13, 19, 31, 37, 43, 49, 343]


def F_of(q):
    return endomorphism_field(prime_power_decompose(q))


@pytest.mark.parametrize("q", GOOD_Q)
def test_summary(q):
    s = tz_summary(prime_power_decompose(q))
    assert s.zeta_identities
    c = s.commutant
    assert c.rank == 4 and c.basis_in_commutant and c.basis_saturated
    assert c.closed_under_multiplication and c.omega_relation and c.commutes_with_theta
    assert s.b_dagger_fixed and s.b_leading_minors == (2, 3)
    assert s.degree_b == 9
    k = s.kernel_b
    assert (k.order, k.cyclic_over_O, k.annihilator_square_is_ellO, k.annihilator_index) == (9, True, True, 9)


@pytest.mark.parametrize("q", [5, 4, 2, 3, 169, 25, 11])
def test_assumptions_rejected(q):
    with pytest.raises(DomainError):
        check_assumptions(prime_power_decompose(q))
    with pytest.raises(DomainError):
        tz_summary(prime_power_decompose(q))


def test_zeta_identities():
    assert zeta_identity_checks(prime_power_decompose(7))


def test_integer_commutant_rank_of_zeta():
    assert integer_commutant_rank([[-1, -1], [1, 0]]) == 2
    assert integer_commutant_rank([[1, 0], [0, 1]]) == 4
    assert integer_commutant_rank([[1, 0], [0, 2]]) == 2


def test_identity_kernel_trivial():
    qp = prime_power_decompose(7)
    k = kernel_structure(identity(F_of(7)), 3, qp)
    assert k.order == 1 and k.annihilator_index == 1


def test_three_times_identity():
    # S^2 / 3 S^2 is free of rank one over O / 3 O, so it is cyclic
    qp = prime_power_decompose(7)
    F = F_of(7)
    k = kernel_structure(identity(F) * F.from_int(3), 3, qp)
    assert k.order == 81 and k.cyclic_over_O
    assert not k.annihilator_square_is_ellO and k.annihilator_index == 81


@pytest.mark.parametrize("n, ell", [(2, 2), (4, 2), (9, 3), (5, 5)])
def test_scaled_identity_order(n, ell):
    qp = prime_power_decompose(7)
    F = F_of(7)
    M = identity(F) * F.from_int(n)
    assert polarization_degree(M) == n**4
    k = kernel_structure(M, ell, qp)
    assert k.order == n**4 and k.cyclic_over_O and k.annihilator_index == n**4


def test_kernel_errors():
    qp = prime_power_decompose(7)
    F = F_of(7)
    with pytest.raises(DomainError):
        kernel_structure(b_matrix(F), 2, qp)  # degree 9
    with pytest.raises(DomainError):
        kernel_structure(identity(F), 7, qp)  # ell | q
    with pytest.raises(DomainError):
        kernel_structure(identity(F), 6, qp)
    with pytest.raises(DomainError):
        kernel_structure(QuadIntMatrix2.from_ints(F, [[9, 0], [0, 1]]), 3, qp)  # not O-stable
    with pytest.raises(DomainError):
        polarization_degree(QuadIntMatrix2.from_ints(F, [[0, 0], [0, 0]]))


def test_o_coords_round_trip():
    F = F_of(13)
    for c in ([1, 0, 0, 0], [0, 1, 0, 0], [3, -2, 5, 7]):
        assert o_coords(o_element(F, c)) == c
    with pytest.raises(DomainError):
        o_coords(b_matrix(F))


def test_hnf_basic():
    assert hnf([[2, 0], [0, 3], [4, 6]]) == [[2, 0], [0, 3]]
    assert hnf([[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3], [1, 1, 1, 1]])[0][0] == 1


ints = st.integers(-6, 6)
mats = st.lists(ints, min_size=8, max_size=8)


def _mat(F, v):
    e = [F.from_coords(v[0], v[1]), F.from_coords(v[2], v[3]),
         F.from_coords(v[4], v[5]), F.from_coords(v[6], v[7])]
    return QuadIntMatrix2(F, ((e[0], e[1]), (e[2], e[3])))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([7, 13, 49]), mats, mats)
def test_degree_is_norm_of_det_and_multiplicative(q, u, v):
    F = F_of(q)
    M, N = _mat(F, u), _mat(F, v)
    if M.is_zero() or M.det().is_zero():
        return
    assert polarization_degree(M) == M.det().norm()
    assert (np.array((M * N).z_matrix()) == np.array(M.z_matrix()) @ np.array(N.z_matrix())).all()
    assert (M * N).dagger() == N.dagger() * M.dagger()


@settings(max_examples=100, deadline=None)
@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4))
def test_o_is_commutative_ring(c, d):
    F = F_of(7)
    X, Y = o_element(F, c), o_element(F, d)
    Z = zeta_matrix(F)
    assert X * Y == Y * X and X * Z == Z * X
    o_coords(X * Y)


def test_commutant_report_fields():
    rep = commutant_basis(prime_power_decompose(7))
    assert len(rep.basis) == 4 and rep.rank == 4
