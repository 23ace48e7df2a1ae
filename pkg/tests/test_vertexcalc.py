import random
from fractions import Fraction

import pytest

from vertexscreen.scalars import QQ, RationalFunctionField
from vertexscreen.vertexcalc import (GenSystem, GradingMismatch,
                                     NonVacuumModule, comb, apply_field_coeff,
                                     bracket, derive, field_state,
                                     graded_basis, mode_apply, normal_order,
                                     normal_order_list, state_field,
                                     sugawara_field)
from vertexscreen.verify import (check_commutator, check_jacobi, check_skew,
                                 check_wick, random_homogeneous_field)


@pytest.fixture
def heis_fermion():
    """One boson J with [J_l J] = 2(k+2) l, one odd fermion Psi."""
    F = RationalFunctionField("k")
    k = F.gen
    sys = GenSystem(F, "hf")
    j = sys.add_gen("J", parity=0, weight2=2, current=True)
    psi = sys.add_gen("Psi", parity=1, weight2=1)
    lev = (k + 2) * 2
    sys.set_pairing([[lev]])
    sys.set_bracket(j, j, {1: comb(const=lev)})
    sys.set_bracket(psi, psi, {0: comb(const=F.one)})
    return sys


def test_bracket_with_identity(heis_fermion):
    sys = heis_fermion
    J = sys.gen_field("J")
    one = sys.one_field()
    assert bracket(one, J) == {}
    assert bracket(J, one) == {}


def test_bracket_central_term(heis_fermion):
    sys = heis_fermion
    P = sys.gen_field("Psi")
    br = bracket(P, P)
    assert list(br) == [0]
    assert br[0] == sys.one_field()


def test_normal_order_with_identity(heis_fermion):
    sys = heis_fermion
    J = sys.gen_field("J")
    assert normal_order(sys.one_field(), J) == J
    assert normal_order(J, sys.one_field()) == J


def test_derive_is_a_derivation(heis_fermion):
    sys = heis_fermion
    J = sys.gen_field("J")
    P = sys.gen_field("Psi")
    prod = normal_order(J, P)
    lhs = derive(prod)
    rhs = normal_order(derive(J), P) + normal_order(J, derive(P))
    assert lhs == rhs


def test_normal_order_list_right_nesting(heis_fermion):
    sys = heis_fermion
    J = sys.gen_field("J")
    P = sys.gen_field("Psi")
    dJ = derive(J)
    assert normal_order_list([dJ, J, P]) == \
        normal_order(dJ, normal_order(J, P))


def test_odd_square_vanishes(heis_fermion):
    sys = heis_fermion
    P = sys.gen_field("Psi")
    assert normal_order(P, P).is_zero()
    assert not normal_order(derive(P), P).is_zero()


def test_translation_mode_identity(heis_fermion):
    """(dA)_(n) = -n A_(n-1) on random states."""
    sys = heis_fermion
    rng = random.Random(5)
    mod = sys.module()
    for w2 in (2, 3, 4):
        A = random_homogeneous_field(mod, rng, w2)
        dA = derive(A)
        for key in graded_basis(mod, 3):
            v = {key: sys.field.one}
            for n in (-2, -1, 0, 1, 2):
                lhs = apply_field_coeff(dA, -n - 1, v)
                rhs = apply_field_coeff(A, -(n - 1) - 1, v)
                rhs = {kk: cc * sys.field.lift(-n) for kk, cc in rhs.items()
                       if n != 0}
                assert lhs == rhs


def test_vacuum_annihilation(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    vac = mod.vacuum_state()
    J = sys.gen_field("J")
    for n2 in (0, 2, 4):
        assert mode_apply(J, n2, vac) == {}
    # J_{-1}|0> is the generator state
    assert mode_apply(J, -2, vac) == field_state(J)


def test_graded_basis_counts(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    # weight 0: the vacuum only
    assert len(graded_basis(mod, 0)) == 1
    # one boson alone at weight 2: J_(-2), J_(-1)^2 (fermion adds more)
    words = [w for (w, t) in graded_basis(mod, 4)
             if all(g == 0 for g, _ in w)]
    assert len(words) == 2


def test_graded_basis_odd_multiplicity():
    F = QQ
    sys = GenSystem(F, "psi-only")
    psi = sys.add_gen("Psi", parity=1, weight2=1)
    sys.set_bracket(psi, psi, {0: comb(const=F.one)})
    mod = sys.module()
    # doubled weight 3 = conformal weight 3/2: only Psi_(-2)|0>
    basis = graded_basis(mod, 3)
    assert basis == [(((0, -2),), sys.vacuum_tag())]
    # no repeated odd modes: weight 1 twice is forbidden
    assert all(len(set(w)) == len(w) for (w, t) in graded_basis(mod, 6))


def test_state_field_round_trip(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    for w2 in range(0, 7):
        for key in graded_basis(mod, w2):
            st = {key: sys.field.one}
            assert field_state(state_field(st, sys), mod) == st


def test_state_field_rejects_induced_modules(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    tag = mod.register_hv("x", parity=0)
    with pytest.raises(NonVacuumModule):
        state_field({((), tag): sys.field.one}, sys)


def test_exp_vertex_basics(heis_fermion):
    sys = heis_fermion
    F = sys.field
    mod = sys.module()
    mu = (F.one / (F.gen + 2),)
    E = sys.exp_field(mu)
    assert E.parity() == 0
    # zeroth-order action on the vacuum gives the shifted highest vector
    img = apply_field_coeff(E, 0, mod.vacuum_state())
    assert img == {((), sys.momentum_tag(mu)): F.one}
    # [e^{mu} e^{mu'}] = 0 when the pairing of the momenta vanishes: use
    # a second system with an isotropic direction
    sys2 = GenSystem(F, "xi")
    xi = sys2.add_gen("xi", parity=0, weight2=2, current=True)
    sys2.set_pairing([[F.zero]])
    E1 = sys2.exp_field((F.one,))
    E2 = sys2.exp_field((F.lift(2),))
    assert bracket(E1, E2) == {}


def test_exp_weight_under_sugawara(heis_fermion):
    sys = heis_fermion
    F = sys.field
    k = F.gen
    mod = sys.module()
    J = sys.gen_field("J")
    L = sugawara_field(sys, [(J.scale_fraction(Fraction(1, 2)), J)],
                       (k + 2) * 2)
    mu = (-F.one / (k + 2),)
    tag = sys.momentum_tag(mu)
    hvec = {((), tag): F.one}
    got = apply_field_coeff(L, -2, hvec)   # L_(1) = L_0 action
    want = sys.pair_momenta(mu, mu) / 2
    assert got == {((), tag): want}


def test_exp_is_primary_for_sugawara(heis_fermion):
    """[L_l e^mu] = (d + Delta l) e^mu with Delta = B(mu,mu)/2."""
    sys = heis_fermion
    F = sys.field
    k = F.gen
    J = sys.gen_field("J")
    L = sugawara_field(sys, [(J.scale_fraction(Fraction(1, 2)), J)],
                       (k + 2) * 2)
    mu = (-F.one / (k + 2),)
    E = sys.exp_field(mu)
    br = bracket(L, E)
    delta = sys.pair_momenta(mu, mu) / 2
    assert br[0] == derive(E)
    assert br[1] == E.scale(delta)
    assert all(n <= 1 for n in br)


def test_sugawara_virasoro(heis_fermion):
    sys = heis_fermion
    F = sys.field
    k = F.gen
    J = sys.gen_field("J")
    L = sugawara_field(sys, [(J.scale_fraction(Fraction(1, 2)), J)],
                       (k + 2) * 2)
    br = bracket(L, L)
    assert br[0] == derive(L)
    assert br[1] == L.scale_fraction(2)
    assert 2 not in br
    # central charge of one boson: l^3 coefficient is c/2 with c = 1
    assert br[3] == sys.one_field().scale_fraction(Fraction(1, 2))
    brj = bracket(L, J)
    assert brj == {0: derive(J), 1: J}


def test_bracket_lambda_degree_bound(heis_fermion):
    sys = heis_fermion
    rng = random.Random(11)
    mod = sys.module()
    for _ in range(10):
        a = random_homogeneous_field(mod, rng, 1 + rng.randrange(4))
        b = random_homogeneous_field(mod, rng, 1 + rng.randrange(4))
        if a is None or b is None:
            continue
        br = bracket(a, b, mod)
        bound = (a.letter_weight2() + b.letter_weight2()) // 2
        assert all(n <= bound for n in br)


def test_axioms_on_seeded_samples(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    rng = random.Random(77)
    for _ in range(10):
        a = random_homogeneous_field(mod, rng, 1 + rng.randrange(4))
        b = random_homogeneous_field(mod, rng, 1 + rng.randrange(4))
        c = random_homogeneous_field(mod, rng, 1 + rng.randrange(4))
        if None in (a, b, c):
            continue
        assert check_skew(a, b, mod)
        assert check_jacobi(a, b, c, mod)
        assert check_wick(a, b, c, mod)
        v = {key: sys.field.one for key in graded_basis(mod, 3)}
        assert check_commutator(a, b, v, rng.randint(-2, 2),
                                rng.randint(-2, 2), mod)


def test_lattice_affine_sl2_realization():
    """On the even rank-one lattice with (mu|mu) = 2 the exponentials
    realize the level-one affine sl_2: [e^mu_l e^-mu] = J + l, with
    skew-symmetry, Jacobi and the Wick expansion exact even though the
    momentum pairing is negative."""
    F = QQ
    sysA = GenSystem(F, "a1-lattice")
    j = sysA.add_gen("J", parity=0, weight2=2, current=True)
    sysA.set_pairing([[F.lift(2)]])
    sysA.set_bracket(j, j, {1: comb(const=F.lift(2))})
    mod = sysA.module()
    Ep = sysA.exp_field((F.one,))
    Em = sysA.exp_field((-F.one,))
    Jf = sysA.gen_field("J")
    one = sysA.one_field()
    assert bracket(Ep, Em, mod) == {0: Jf, 1: one}
    assert bracket(Em, Ep, mod) == {0: -Jf, 1: one}
    assert bracket(Jf, Ep, mod) == {0: Ep.scale_fraction(2)}
    assert bracket(Ep, Ep, mod) == {}
    assert check_skew(Ep, Em, mod) and check_skew(Jf, Ep, mod)
    assert check_jacobi(Ep, Em, Jf, mod)
    assert check_jacobi(Jf, Ep, Em, mod)
    assert check_wick(Ep, Em, Jf, mod)
    assert check_wick(Jf, Ep, Em, mod)


def test_momentum_needs_current_span(heis_fermion):
    from vertexscreen.vertexcalc import NonAbelianMomentum
    sys = heis_fermion
    with pytest.raises(NonAbelianMomentum):
        sys.momentum_tag((sys.field.one, sys.field.one))  # only one current


def test_mode_apply_physical_indexing(heis_fermion):
    sys = heis_fermion
    mod = sys.module()
    P = sys.gen_field("Psi")
    vac = mod.vacuum_state()
    # Psi_{-3/2}|0> = Psi_(-2)|0>: doubled physical index -3
    st = mode_apply(P, -3, vac)
    assert st == {(((1, -2),), sys.vacuum_tag()): sys.field.one}
    with pytest.raises(GradingMismatch):
        mode_apply(P, -2, vac)  # integer mode of a half-integer weight field
