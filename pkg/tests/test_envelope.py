from fractions import Fraction

import pytest

from koszul.spaces import (
    Element,
    GradedSpace,
    graded_commutator,
    identity_operator,
    operators_equal,
    zero_operator,
)
from koszul.free_objects import FreeCommutative
from koszul.bar import Cochain, coderivation, gerstenhaber_circle, product_cochain
from koszul.envelope import (
    BRACKET_NORMALIZATION,
    CobarHomotopy,
    EnvelopingAlgebra,
    envelope_ainf,
    omega_contraction,
    pbw_iso_check,
    pbw_map,
    rescaled_star_table,
)
from koszul.perturbation import check_passes, contraction_check, perturb
from koszul.spaces import one_plus_inverse, compose


@pytest.fixture(params=["qx", "v2", "v2d"])
def pack(request, qx, v2, v2d):
    V = {"qx": qx, "v2": v2, "v2d": v2d}[request.param]
    return CobarHomotopy(V, weight_bound=4)


# -- dual results a) - g) -----------------------------------------------------

def test_dual_a_dwl(pack):
    lhs = graded_commutator(pack.delta, pack.xi)
    rhs = pack.rho - pack.lam
    assert operators_equal(lhs, rhs, pack.omega.basis_upto(4))


def test_dual_b_coderivations(pack):
    # xi and lam are coderivations for the coshuffle coproduct
    O = pack.omega
    for op in (pack.xi, pack.lam):
        for w in O.basis_upto(4):
            lhs = {}
            for ww, c in op.on_word(w).terms.items():
                for coeff, l, r in O.coshuffle_word(ww):
                    key = (l, r)
                    lhs[key] = lhs.get(key, Fraction(0)) + coeff * c
            for coeff, l, r in O.coshuffle_word(w):
                for ww, c in op.on_word(l).terms.items():
                    lhs[(ww, r)] = lhs.get((ww, r), Fraction(0)) - coeff * c
                sgn = -1 if (op.degree % 2) and (O.degree_of(l) % 2) else 1
                for ww, c in op.on_word(r).terms.items():
                    lhs[(l, ww)] = lhs.get((l, ww), Fraction(0)) - coeff * c * sgn
            assert not {k: v for k, v in lhs.items() if v}, (op.name, w)


def test_dual_c_xi_squared(pack):
    for w in pack.omega.basis_upto(4):
        assert pack.xi(pack.xi.on_word(w)).is_zero(), w


def test_dual_d_commutators(pack):
    O = pack.omega
    words = O.basis_upto(4)
    assert operators_equal(graded_commutator(pack.delta, pack.lam),
                           zero_operator(O, O, 1), words)
    assert operators_equal(graded_commutator(pack.xi, pack.lam),
                           zero_operator(O, O, -1), words)


def test_dual_e_f_rho_spectrum(pack):
    # rho and lam commute; rho acts by total weight >= word length
    O = pack.omega
    words = O.basis_upto(4)
    assert operators_equal(graded_commutator(pack.rho, pack.lam),
                           zero_operator(O, O, 0), words)
    for w in words:
        assert O.weight_of(w) >= len(w)


def test_dual_g_lambda_factorials(pack):
    from math import factorial
    O = pack.omega
    for w in O.basis_upto(4):
        k = len(w)
        elem = O.single(w)
        got = pack.lambda_falling(elem, k)
        assert got == pack.p.on_word(w) * factorial(k), w
        assert pack.lambda_falling(elem, k + 1).is_zero(), w
        # annihilating polynomial certifies the spectrum {0..k}
        cur = O.single(w)
        for i in range(0, k + 1):
            cur = pack.lam(cur) - cur * i
        assert cur.is_zero(), w


# -- the contraction ------------------------------------------------------------

def test_fg_identity(pack):
    for w in pack.S.basis_upto(4):
        out = pack.f(pack.g.on_word(w))
        assert out.terms == {w: Fraction(1)}, w


def test_g_symmetrizes(qx):
    pk = CobarHomotopy(qx, 3)
    out = pk.g.on_word((0, 0))
    assert out.terms == {((0,), (0,)): Fraction(1)}


def test_omega_contraction(pack):
    con = pack.contraction()
    report = contraction_check(con, [1, 2, 3, 4])
    assert check_passes(report), {k: v[:3] for k, v in report.items() if v}


def test_f_is_algebra_and_coalgebra_morphism(pack):
    O, S = pack.omega, pack.S
    words = O.basis_upto(2)
    for u in words:
        for v in words:
            lhs = pack.f.on_word(u + v)
            rhs = S.product(pack.f.on_word(u), pack.f.on_word(v))
            assert lhs == rhs, (u, v)
    for w in O.basis_upto(4):
        lhs = {}
        for ww, c in pack.f.on_word(w).terms.items():
            for coeff, l, r in S.coproduct_word(ww):
                lhs[(l, r)] = lhs.get((l, r), Fraction(0)) + coeff * c
        for coeff, l, r in O.coshuffle_word(w):
            fl = pack.f.on_word(l)
            fr = pack.f.on_word(r)
            for wl, cl in fl.terms.items():
                for wr, cr in fr.terms.items():
                    key = (wl, wr)
                    lhs[key] = lhs.get(key, Fraction(0)) - coeff * cl * cr
        assert not {k: v for k, v in lhs.items() if v}, w


# -- perturbation to the Chevalley-Eilenberg cobar ---------------------------------

def test_perturbed_contraction_sl2(sl2):
    pk = CobarHomotopy(sl2.L, 3)
    from koszul.free_objects import ce_codifferential
    mu_letter = ce_codifferential(sl2, pk.E, include_d=False,
                                  scale=BRACKET_NORMALIZATION)
    mu = pk.omega.letter_extension(mu_letter, name="mu")
    # mu g = 0: the image of g has weight-one letters only
    for w in pk.S.basis_upto(3):
        assert mu(pk.g.on_word(w)).is_zero(), w
    con = perturb(pk.contraction(), mu, nilpotency_bound=8)
    report = contraction_check(con, [1, 2, 3], strict=True)
    assert check_passes(report), {k: v[:3] for k, v in report.items() if v}
    # h* = h (1 + mu h)^{-1}
    inv = one_plus_inverse(compose(mu, pk.h), 8)
    expect = compose(pk.h, inv)
    assert operators_equal(con.h, expect, pk.omega.basis_upto(3))
    # the differential and section on SL are unperturbed
    for w in pk.S.basis_upto(3):
        assert con.Y.d.on_word(w) == pk.S.diff_word(w)
        assert con.g.on_word(w) == pk.g.on_word(w)


# -- the enveloping structure --------------------------------------------------------

def test_envelope_abelian(abelian2):
    env = envelope_ainf(abelian2, 3)
    S = env.S
    for w1 in S.basis_upto(2):
        for w2 in S.basis_upto(1):
            got = env.star_word(w1, w2)
            want = S.product_words(w1, w2)
            assert got == want, (w1, w2)
    tables = env.m_tables(3)
    assert set(tables) <= {1, 2}


def test_envelope_sl2_products(sl2):
    env = envelope_ainf(sl2, 3)
    S = env.S
    e = Element(S, {(0,): 1})
    f = Element(S, {(1,): 1})
    h = Element(S, {(2,): 1})
    ef = env.star(e, f)
    assert ef == S.product(e, f) + h
    assert env.star(e, f) - env.star(f, e) == h * 2


def test_envelope_sl2_is_dg_algebra(sl2):
    # Lemma F consequence: no m_k for k >= 3
    env = envelope_ainf(sl2, 4)
    tables = env.m_tables(4)
    assert set(tables) <= {1, 2}
    for word in env.bar_SL.basis_upto(4):
        if len(word) >= 3:
            assert env.m(word).is_zero(), word


def test_envelope_star_associative_sl2(sl2):
    env = envelope_ainf(sl2, 4)
    S = env.S
    singles = [Element(S, {w: 1}) for w in S.basis_upto(2)]
    for a in singles:
        for b in singles:
            for c in singles:
                wa = sum(S.weight_of(w) for w in a.terms)
                wb = sum(S.weight_of(w) for w in b.terms)
                wc = sum(S.weight_of(w) for w in c.terms)
                if wa + wb + wc > 4:
                    continue
                assert env.star(env.star(a, b), c) == env.star(a, env.star(b, c))


def test_lemma_f_operator_level(sl2):
    # F ((1+mu H)^{-1} delta_B H)^j (1+mu H)^{-1} delta_B G = 0 for j >= 1
    env = envelope_ainf(sl2, 3)
    out = env.transfer
    barA = out["bar_A"]
    F, G, H = out["F"], out["G"], out["H"]
    mu_coder = coderivation(Cochain(barA, 2,
                                    {1: lambda ls: env.mu_omega.on_word(ls[0])},
                                    name="mu"))
    delta_B = coderivation(product_cochain(barA), name="delta_B")
    inv = one_plus_inverse(compose(mu_coder, H), 14)
    core = compose(inv, delta_B)
    for w in out["bar_Z"].basis_upto(3):
        cur = core(G.on_word(w))
        for j in range(1, 4):
            cur = core(H(cur)) * -1
            assert F(cur).is_zero(), (w, j)


def test_transferred_codifferential_matches_simplified_form(sl2):
    # d* = delta_1 + F (1+mu H)^{-1} delta_B G for dg Lie input
    env = envelope_ainf(sl2, 3)
    out = env.transfer
    barA = out["bar_A"]
    F, G, H = out["F"], out["G"], out["H"]
    mu_coder = coderivation(Cochain(barA, 2,
                                    {1: lambda ls: env.mu_omega.on_word(ls[0])},
                                    name="mu"))
    delta_B = coderivation(product_cochain(barA), name="delta_B")
    inv = one_plus_inverse(compose(mu_coder, H), 14)
    simplified = out["dZ"] + compose(F, compose(inv, compose(delta_B, G)))
    assert operators_equal(out["d_star"], simplified, out["bar_Z"].basis_upto(3))


def test_envelope_l3_has_higher_structure(l3):
    env = envelope_ainf(l3, 4)
    tables = env.m_tables(4)
    assert any(k >= 3 for k in tables), "expected a nonzero higher structure map"
    mm = gerstenhaber_circle(env.m, env.m)
    for w in env.bar_SL.basis_upto(4):
        assert mm(w).is_zero(), w


def test_envelope_d_star_squares(l3, sl2):
    for linf in (l3, sl2):
        env = envelope_ainf(linf, 3)
        d = env.transfer["d_star"]
        for w in env.bar_SL.basis_upto(3):
            assert d(d.on_word(w)).is_zero(), (linf.L.name, w)


# -- PBW -------------------------------------------------------------------------------

def test_ul_rewriting(sl2):
    ul = EnvelopingAlgebra(sl2)
    L = sl2.L
    e, f, h = L.index["e"], L.index["f"], L.index["h"]
    # f e = e f - h  (since [e,f] = h -> [f,e] = -h)
    out = ul.product_words((f,), (e,))
    assert out.terms == {(e, f): Fraction(1), (h,): Fraction(-1)}
    # associativity on a sample
    a = Element(ul, {(e,): 1})
    b = Element(ul, {(f,): 1})
    c = Element(ul, {(h,): 1})
    assert ul.product(ul.product(a, b), c) == ul.product(a, ul.product(b, c))


def test_ul_odd_square():
    L = GradedSpace("Lodd", [("u", 1), ("z", 2)])
    linf_odd = __import__("koszul.free_objects", fromlist=["LInfStructure"]) \
        .LInfStructure(L, {2: {("u", "u"): {"z": 2}}})
    ul = EnvelopingAlgebra(linf_odd)
    u, z = L.index["u"], L.index["z"]
    out = ul.product_words((u,), (u,))
    # u u = [u,u]/2 = z
    assert out.terms == {(z,): Fraction(1)}


def test_pbw_sl2(sl2):
    report = pbw_iso_check(sl2, 4)
    assert report["well_defined"] and report["bijective"], report


def test_pbw_heisenberg(heis3):
    report = pbw_iso_check(heis3, 4)
    assert report["well_defined"] and report["bijective"], report


def test_pbw_abelian(abelian2):
    # identity-up-to-scaling: phi(word of length m) = word / 2^m
    env = envelope_ainf(abelian2, 3)
    ul = EnvelopingAlgebra(abelian2)
    for word in ul.basis_upto(3):
        img = pbw_map(env, ul, word)
        assert img.terms == {word: Fraction(1, 2) ** len(word)}, word


def test_rescaled_star_makes_identity_iso(sl2):
    # the conjugated product satisfies e *' f - f *' e = [e,f] = h, so the
    # identity on generators is an algebra map out of U(L)
    env = envelope_ainf(sl2, 3)
    S = env.S
    table = {(w1, w2): out for w1, w2, out in rescaled_star_table(env, 2)}
    e, f, h = (0,), (1,), (2,)
    out = table[(e, f)] - table[(f, e)]
    assert out == Element(S, {h: 1})


def test_pbw_rejects_linf(l3):
    with pytest.raises(ValueError):
        EnvelopingAlgebra(l3)
