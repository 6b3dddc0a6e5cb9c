"""Finite checks of the explicit degree-9 polarization on the trace-zero surface.

E is a supersingular curve with End E = S, the maximal order of
L = Q(sqrt(-q)); End(E x E) = M_2(S).  The twist to the trace-zero surface A
is given by zeta = [[-1, -1], [1, 0]], End A is the commutant S[zeta] = O,
and b = [[2, 1], [1, 2]] gives the polarization lambda = mu b.

Nothing geometric is built.  Isogeny degrees are determinants of the induced
Z-linear map on S^2 (rank 4), and ell-torsion is modelled by (S/ell S)^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .errors import DomainError
from .intkernel import PrimePower, is_prime, squarefree_decompose
from .quadring import QuadElement, QuadField


def check_assumptions(qp: PrimePower) -> None:
    if qp.p % 3 != 1:
        raise DomainError(f"p = {qp.p} is not 1 mod 3")
    if qp.is_square and qp.p % 4 != 3:
        raise DomainError(f"q = {qp.q} is a square but p = {qp.p} is not 3 mod 4")


def endomorphism_field(qp: PrimePower) -> QuadField:
    """L = Q(sqrt(-q)) as Q(sqrt(D0)) with D0 the squarefree part of -q."""
    return QuadField(squarefree_decompose(-qp.q)[0])


@dataclass(frozen=True)
class QuadIntMatrix2:
    """2x2 matrix over the maximal order S of an imaginary quadratic field."""

    field: QuadField
    entries: tuple[tuple[QuadElement, QuadElement], tuple[QuadElement, QuadElement]]

    @classmethod
    def from_ints(cls, F: QuadField, rows: Sequence[Sequence[int]]) -> "QuadIntMatrix2":
        return cls(F, tuple(tuple(F.from_int(v) for v in row) for row in rows))

    @classmethod
    def scalar(cls, F: QuadField, s: QuadElement) -> "QuadIntMatrix2":
        z = F.from_int(0)
        return cls(F, ((s, z), (z, s)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "QuadIntMatrix2") -> "QuadIntMatrix2":
        if isinstance(other, QuadElement):
            other = QuadIntMatrix2.scalar(self.field, other)
        e = [[self[i, 0] * other[0, j] + self[i, 1] * other[1, j] for j in range(2)]
             for i in range(2)]
        return QuadIntMatrix2(self.field, (tuple(e[0]), tuple(e[1])))

    def __add__(self, other: "QuadIntMatrix2") -> "QuadIntMatrix2":
        e = [[self[i, j] + other[i, j] for j in range(2)] for i in range(2)]
        return QuadIntMatrix2(self.field, (tuple(e[0]), tuple(e[1])))

    def __neg__(self):
        e = [[-self[i, j] for j in range(2)] for i in range(2)]
        return QuadIntMatrix2(self.field, (tuple(e[0]), tuple(e[1])))

    def __sub__(self, other):
        return self + (-other)

    def det(self) -> QuadElement:
        return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]

    def dagger(self) -> "QuadIntMatrix2":
        """Conjugate transpose (the Rosati involution of the product polarization)."""
        e = [[self[j, i].conj() for j in range(2)] for i in range(2)]
        return QuadIntMatrix2(self.field, (tuple(e[0]), tuple(e[1])))

    def is_zero(self) -> bool:
        return all(self[i, j].is_zero() for i in range(2) for j in range(2))

    def z_matrix(self) -> list[list[int]]:
        """4x4 integer matrix of the action on S^2 in the basis (1,0),(w,0),(0,1),(0,w)."""
        F = self.field
        basis = [(F.from_int(1), F.from_int(0)), (F.w, F.from_int(0)),
                 (F.from_int(0), F.from_int(1)), (F.from_int(0), F.w)]
        cols = []
        for x, y in basis:
            img0 = self[0, 0] * x + self[0, 1] * y
            img1 = self[1, 0] * x + self[1, 1] * y
            cols.append(list(img0.coords()) + list(img1.coords()))
        return [[cols[j][i] for j in range(4)] for i in range(4)]


def zeta_matrix(F: QuadField) -> QuadIntMatrix2:
    return QuadIntMatrix2.from_ints(F, [[-1, -1], [1, 0]])


def b_matrix(F: QuadField) -> QuadIntMatrix2:
    return QuadIntMatrix2.from_ints(F, [[2, 1], [1, 2]])


def identity(F: QuadField) -> QuadIntMatrix2:
    return QuadIntMatrix2.from_ints(F, [[1, 0], [0, 1]])


def zeta_identity_checks(qp: PrimePower) -> bool:
    check_assumptions(qp)
    F = endomorphism_field(qp)
    z, one = zeta_matrix(F), identity(F)
    return z * z * z == one and (z * z + z + one).is_zero()


# -- exact linear algebra on small integer matrices ------------------------


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_q(rows: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _rref_mod(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    a = [[v % p for v in row] for row in rows]
    out, ncols = [], len(a[0]) if a else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [v * inv % p for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    out = a[:r]
    return out


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(_rref_mod(rows, p)) if rows else 0


def nullspace_mod(m: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : m x = 0} over F_p."""
    ncols = len(m[0])
    rref = _rref_mod(m, p)
    pivots = [next(j for j, v in enumerate(row) if v) for row in rref]
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        x = [0] * ncols
        x[free] = 1
        for row, pc in zip(rref, pivots):
            x[pc] = -row[free] % p
        basis.append(x)
    return basis


def _matvec(m, v, p=None):
    out = [sum(a * b for a, b in zip(row, v)) for row in m]
    return [x % p for x in out] if p else out


# -- the commutant O = S[zeta] ---------------------------------------------


def _s_coords(M: QuadIntMatrix2) -> list[int]:
    return [c for i in range(2) for j in range(2) for c in M[i, j].coords()]


def _from_s_coords(F: QuadField, v: Sequence[int]) -> QuadIntMatrix2:
    e = [F.from_coords(v[2 * k], v[2 * k + 1]) for k in range(4)]
    return QuadIntMatrix2(F, ((e[0], e[1]), (e[2], e[3])))


def commutation_system(F: QuadField, Z: QuadIntMatrix2) -> list[list[int]]:
    """8x8 integer matrix of X -> X Z - Z X on M_2(S) in entry coordinates."""
    cols = []
    for k in range(8):
        e = [0] * 8
        e[k] = 1
        X = _from_s_coords(F, e)
        cols.append(_s_coords(X * Z - Z * X))
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def commutant_rank(F: QuadField, Z: QuadIntMatrix2) -> int:
    """Z-rank of the commutant of Z in M_2(S) (= nullity over Q; the kernel is saturated)."""
    return 8 - rank_q(commutation_system(F, Z))


def integer_commutant_rank(rows: Sequence[Sequence[int]]) -> int:
    """Z-rank of the commutant of an integer 2x2 matrix inside M_2(Z)."""
    (a, b), (c, d) = rows
    sys_ = []
    for k in range(4):
        e = [0] * 4
        e[k] = 1
        x = [[e[0], e[1]], [e[2], e[3]]]
        xz = [[x[i][0] * rows[0][j] + x[i][1] * rows[1][j] for j in range(2)] for i in range(2)]
        zx = [[rows[i][0] * x[0][j] + rows[i][1] * x[1][j] for j in range(2)] for i in range(2)]
        sys_.append([xz[i][j] - zx[i][j] for i in range(2) for j in range(2)])
    return 4 - rank_q([[sys_[j][i] for j in range(4)] for i in range(4)])


@dataclass(frozen=True)
class CommutantReport:
    basis: tuple[QuadIntMatrix2, ...]
    rank: int
    basis_in_commutant: bool
    basis_saturated: bool
    closed_under_multiplication: bool
    omega_relation: bool  # omega^2 = -omega - 1
    commutes_with_theta: bool  # omega * theta = theta * omega


def o_coords(M: QuadIntMatrix2) -> list[int]:
    """Coordinates of M = alpha I + beta zeta in the basis I, w I, zeta, w zeta."""
    F = M.field
    beta = -M[0, 1]
    alpha = M[1, 1]
    rebuilt = QuadIntMatrix2.scalar(F, alpha) + zeta_matrix(F) * beta
    if rebuilt != M:
        raise DomainError("matrix does not lie in S[zeta]")
    return list(alpha.coords()) + list(beta.coords())


def o_basis(F: QuadField) -> tuple[QuadIntMatrix2, ...]:
    one, z, w = identity(F), zeta_matrix(F), F.w
    return (one, one * w, z, z * w)


def o_element(F: QuadField, c: Sequence[int]) -> QuadIntMatrix2:
    out = QuadIntMatrix2.from_ints(F, [[0, 0], [0, 0]])
    for coef, B in zip(c, o_basis(F)):
        out = out + B * F.from_int(coef)
    return out


def commutant_basis(qp: PrimePower) -> CommutantReport:
    check_assumptions(qp)
    F = endomorphism_field(qp)
    Z = zeta_matrix(F)
    basis = o_basis(F)
    in_comm = all(B * Z == Z * B for B in basis)
    coords = [_s_coords(B) for B in basis]
    minors = [det_int([[row[j] for j in cols] for row in coords])
              for cols in combinations(range(8), 4)]
    g = 0
    for d in minors:
        g = gcd(g, d)
    closed = True
    for X, Y in product(basis, repeat=2):
        try:
            o_coords(X * Y)
        except DomainError:
            closed = False
    one, w = identity(F), F.w
    return CommutantReport(
        basis=basis,
        rank=commutant_rank(F, Z),
        basis_in_commutant=in_comm,
        basis_saturated=g == 1,
        closed_under_multiplication=closed,
        omega_relation=(Z * Z + Z + one).is_zero(),
        commutes_with_theta=Z * w == (one * w) * Z,
    )


# -- degrees and kernels -----------------------------------------------------


def polarization_degree(M: QuadIntMatrix2) -> int:
    if M.is_zero():
        raise DomainError("the zero matrix is not an isogeny")
    return abs(det_int(M.z_matrix()))


def _divides_in_s(num: QuadElement, den: QuadElement) -> bool:
    n = den.norm()
    t = num * den.conj()
    u, v = t.coords()
    return u % n == 0 and v % n == 0


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form (upper triangular, positive pivots) of an integer lattice."""
    a = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    out = []
    for col in range(ncols):
        live = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                f = r[col] // piv[col]
                r = [x - f * y for x, y in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        if live:
            piv = live[0] if live[0][col] > 0 else [-x for x in live[0]]
            out.append(piv)
        a = [r for r in rest if any(r)]
    for i, r in enumerate(out):
        pc = next(j for j, v in enumerate(r) if v)
        for k in range(i):
            f = out[k][pc] // r[pc]
            out[k] = [x - f * y for x, y in zip(out[k], r)]
    return out


# brute force is used for ell^k-torsion with k > 1; beyond this size give up
_ENUMERATION_CAP = 200_000


@dataclass(frozen=True)
class KernelStructure:
    order: int
    cyclic_over_O: bool
    annihilator_square_is_ellO: bool
    annihilator_index: int  # [O : Ann]


def _ann_square_is(ann_rows: list[list[int]], F: QuadField, ell: int) -> bool:
    elems = [o_element(F, g) for g in hnf(ann_rows)]
    prods = [o_coords(X * Y) for i, X in enumerate(elems) for Y in elems[i:]]
    return hnf(prods) == [[ell * int(i == j) for j in range(4)] for i in range(4)]


def _index(rows: list[list[int]]) -> int:
    h = hnf(rows)
    out = 1
    for i, r in enumerate(h):
        out *= r[i]
    return out


def kernel_structure(M: QuadIntMatrix2, ell: int, qp: PrimePower) -> KernelStructure:
    """ker(M) inside (S/ell^k S)^2 as a module over O = S[zeta].

    k is the least exponent with ell^k M^{-1} integral; ell = 3 and M = b is
    the case of interest, where k = 1 and everything is linear algebra over F_3.
    """
    check_assumptions(qp)
    if not is_prime(ell) or qp.q % ell == 0:
        raise DomainError(f"ell = {ell} must be a prime not dividing q")
    deg = polarization_degree(M)
    d, top = deg, 0
    while d % ell == 0:
        d, top = d // ell, top + 1
    if d != 1:
        raise DomainError(f"degree {deg} is not a power of {ell}")
    det = M.det()
    adj = ((M[1, 1], -M[0, 1]), (-M[1, 0], M[0, 0]))
    k = next(k for k in range(top + 1)
             if all(_divides_in_s(x * ell**k, det) for row in adj for x in row))
    if k == 0:
        return KernelStructure(1, True, False, 1)

    F = M.field
    A = M.z_matrix()
    actions = [B.z_matrix() for B in o_basis(F)]
    if k == 1:
        return _kernel_mod_ell(A, actions, ell, F)

    N = ell**k
    if N**4 > _ENUMERATION_CAP:
        raise DomainError(f"kernel exponent {N} too large for enumeration")
    # ker(M) on (Z/N)^4, as the lattice L = ker + N Z^4
    kernel = [v for v in product(range(N), repeat=4)
              if all(x % N == 0 for x in _matvec(A, v))]
    full = [[N * int(i == j) for j in range(4)] for i in range(4)]
    L = hnf([list(v) for v in kernel] + full)
    order = N**4 // _index(L)
    if order != deg:
        raise DomainError("kernel order disagrees with the degree")
    kset = set(kernel)
    for E in actions:
        for v in L:
            if tuple(_matvec(E, v, N)) not in kset:
                raise DomainError("ker M is not stable under O")
    cyclic = any(
        N**4 // _index([_matvec(E, v) for E in actions] + full) == order for v in kernel
    )
    ann = [list(c) for c in product(range(N), repeat=4)
           if all(sum(ci * x for ci, x in zip(c, col)) % N == 0
                  for v in L for col in zip(*[_matvec(E, v) for E in actions]))]
    ann_rows = hnf(ann + full)
    return KernelStructure(order, cyclic, _ann_square_is(ann_rows, F, ell),
                           _index(ann_rows))


def _kernel_mod_ell(A, actions, ell: int, F: QuadField) -> KernelStructure:
    kernel = nullspace_mod(A, ell)
    dim = len(kernel)
    for E in actions:
        for v in kernel:
            if rank_mod(kernel + [_matvec(E, v, ell)], ell) != dim:
                raise DomainError("ker M is not stable under O")
    cyclic = False
    for coeffs in product(range(ell), repeat=dim):
        v = [sum(c * kv[i] for c, kv in zip(coeffs, kernel)) % ell for i in range(4)]
        if rank_mod([_matvec(E, v, ell) for E in actions], ell) == dim:
            cyclic = True
            break
    # Ann = {c in Z^4 : sum c_i E_i kills ker}, which contains ell Z^4
    rows = []
    for v in kernel:
        imgs = [_matvec(E, v, ell) for E in actions]
        for i in range(4):
            rows.append([imgs[j][i] for j in range(4)])
    sol = nullspace_mod(rows, ell)
    ann_rows = hnf(sol + [[ell * int(i == j) for j in range(4)] for i in range(4)])
    return KernelStructure(ell**dim, cyclic, _ann_square_is(ann_rows, F, ell),
                           ell ** (4 - len(sol)))


@dataclass(frozen=True)
class TZSummary:
    q: int
    zeta_identities: bool
    commutant: CommutantReport
    b_dagger_fixed: bool
    b_leading_minors: tuple[int, int]
    degree_b: int
    kernel_b: KernelStructure


def tz_summary(qp: PrimePower) -> TZSummary:
    check_assumptions(qp)
    F = endomorphism_field(qp)
    b = b_matrix(F)
    return TZSummary(
        q=qp.q,
        zeta_identities=zeta_identity_checks(qp),
        commutant=commutant_basis(qp),
        b_dagger_fixed=b.dagger() == b,
        b_leading_minors=(2, 2 * 2 - 1 * 1),
        degree_b=polarization_degree(b),
        kernel_b=kernel_structure(b, 3, qp),
    )
