"""Contractions, the perturbation lemma, cone packaging, and the tensor trick.

A contraction is a pair of complexes (X, delta) and (Y, partial) with chain
maps f: X -> Y, g: Y -> X and a degree -1 homotopy h on X satisfying

    f g = 1_Y      and      g f = 1_X - (delta h + h delta).

It is *strict* when the side conditions f h = 0, h g = 0, h^2 = 0 hold as
well.  A perturbation is a degree-1 operator mu on X with (delta + mu)^2 = 0
and 1 + mu h invertible at the truncation; the perturbed contraction is
given by the usual explicit formulas.

The tensor trick promotes a strict contraction of A onto Z to a strict
contraction of the bar construction B(A) (with the differential induced by
the differential of A alone) onto B(Z); perturbing it by the remaining
A-infinity structure transfers that structure to Z.
"""

from __future__ import annotations

from fractions import Fraction

from .bar import (
    BarSpace,
    Cochain,
    bar_coproduct_word,
    coderivation,
    differential_cochain,
    letterwise_morphism,
    splice,
    universal_twisting_cochain,
)
from .spaces import (
    Element,
    LinearOperator,
    compose,
    graded_commutator,
    identity_operator,
    one_plus_inverse,
    zero_operator,
)


class Complex:
    """A space together with its degree-1 differential."""

    def __init__(self, space, differential):
        self.space = space
        self.d = differential

    @property
    def name(self):
        return self.space.name


class Contraction:
    """The data (X, Y, f, g, h) with a strictness flag."""

    def __init__(self, X, Y, f, g, h, strict=False):
        self.X = X
        self.Y = Y
        self.f = f
        self.g = g
        self.h = h
        self.strict = strict

    @property
    def p(self):
        """The idempotent g f on X."""
        return compose(self.g, self.f)


def contraction_check(con, weights, strict=None):
    """Exact residuals of the contraction identities on basis words.

    Returns a dict identity-name -> list of (weight, word) counterexamples;
    all lists empty means the contraction holds.  ``strict`` defaults to the
    contraction's own flag; chain-map residuals for f and g are included.
    """
    strict = con.strict if strict is None else strict
    X, Y, f, g, h = con.X, con.Y, con.f, con.g, con.h
    report = {k: [] for k in
              ["fg=1", "gf=1-[d,h]", "fh=0", "hg=0", "h^2=0", "fd=df", "gd=dg"]}
    one_x = identity_operator(X.space)
    dh = graded_commutator(X.d, h)
    for w in weights:
        for word in Y.space.basis(w):
            if not (f(g.on_word(word)) - Element(Y.space, {word: 1})).is_zero():
                report["fg=1"].append((w, Y.space.repr_word(word)))
            if strict and not h(g.on_word(word)).is_zero():
                report["hg=0"].append((w, Y.space.repr_word(word)))
            if not (X.d(g.on_word(word)) - g(Y.d.on_word(word))).is_zero():
                report["gd=dg"].append((w, Y.space.repr_word(word)))
        for word in X.space.basis(w):
            lhs = g(f.on_word(word)) + dh.on_word(word) - Element(X.space, {word: 1})
            if not lhs.is_zero():
                report["gf=1-[d,h]"].append((w, X.space.repr_word(word)))
            if strict:
                if not f(h.on_word(word)).is_zero():
                    report["fh=0"].append((w, X.space.repr_word(word)))
                if not h(h.on_word(word)).is_zero():
                    report["h^2=0"].append((w, X.space.repr_word(word)))
            if not (f(X.d.on_word(word)) - Y.d(f.on_word(word))).is_zero():
                report["fd=df"].append((w, X.space.repr_word(word)))
    if not strict:
        report.pop("fh=0")
        report.pop("hg=0")
        report.pop("h^2=0")
    return report


def check_passes(report):
    return all(not v for v in report.values())


def normalize_homotopy(con):
    """Replace h by (1-p) h d h d h (1-p) so the side conditions hold."""
    X = con.X
    one = identity_operator(X.space)
    q = one - con.p
    h_tilde = compose(q, compose(con.h, q))
    h_hat = compose(h_tilde, compose(X.d, h_tilde))
    return Contraction(con.X, con.Y, con.f, con.g, h_hat, strict=True)


def perturb(con, mu, nilpotency_bound, name="*"):
    """Perturbation lemma: new contraction for the differential delta + mu.

    mu must be a degree-1 operator on X with (delta + mu)^2 = 0; 1 + mu h is
    inverted by a finite Neumann series, so mu h must be nilpotent under the
    truncation filtration within ``nilpotency_bound`` steps (a
    SingularPieceError reports the failure otherwise).
    """
    X, Y = con.X, con.Y
    inv_mu_h = one_plus_inverse(compose(mu, con.h), nilpotency_bound)
    inv_h_mu = one_plus_inverse(compose(con.h, mu), nilpotency_bound)
    f_star = compose(con.f, inv_mu_h)
    g_star = compose(inv_h_mu, con.g)
    h_star = compose(con.h, inv_mu_h)
    d_y_star = Y.d + compose(con.f, compose(inv_mu_h, compose(mu, con.g)))
    X_star = Complex(X.space, X.d + mu)
    Y_star = Complex(Y.space, LinearOperator(Y.space, Y.space, 1, d_y_star.on_word,
                                             name=f"d{name}"))
    return Contraction(X_star, Y_star,
                       LinearOperator(X.space, Y.space, 0, f_star.on_word, name=f"f{name}"),
                       LinearOperator(Y.space, X.space, 0, g_star.on_word, name=f"g{name}"),
                       LinearOperator(X.space, X.space, -1, h_star.on_word, name=f"h{name}"),
                       strict=con.strict)


# -- cone packaging ------------------------------------------------------------

class ConeSpace:
    """Cone(f)[u] = (X + sY)[u]: words ('x'|'y', word, u_exp).

    The Y part is suspended (degree shifted down by one); u has degree 2 and
    is truncated at u^K.
    """

    def __init__(self, X, Y, u_bound):
        self.Xs = X
        self.Ys = Y
        self.u_bound = u_bound
        self.name = f"Cone({X.name},{Y.name})[u]"

    def degree_of(self, word):
        side, w, k = word
        base = self.Xs.degree_of(w) if side == "x" else self.Ys.degree_of(w) - 1
        return base + 2 * k

    def weight_of(self, word):
        side, w, k = word
        return (self.Xs if side == "x" else self.Ys).weight_of(w)

    def basis(self, weight):
        out = []
        for k in range(self.u_bound + 1):
            out.extend(("x", w, k) for w in self.Xs.basis(weight))
            out.extend(("y", w, k) for w in self.Ys.basis(weight))
        return out

    def repr_word(self, word):
        side, w, k = word
        space = self.Xs if side == "x" else self.Ys
        u = f"*u^{k}" if k else ""
        return f"{side}:{space.repr_word(w)}{u}"


class ConePackage:
    """Block operators D and A on Cone(f)[u] encoding a contraction.

    D = diag(delta, -partial);  A = [[u h, u g], [f, 0]]; the package is
    curved: (D + A)^2 = u.  Blocks are stored as a dict
    (row, col) -> (operator, u_power) summands.
    """

    def __init__(self, cone, blocks):
        self.cone = cone
        self.blocks = blocks  # (row, col) -> list of (op, u_power)

    def apply(self, elem):
        cone = self.cone
        acc = Element(cone, {})
        for (side, w, k), c in elem.terms.items():
            for (row, col), summands in self.blocks.items():
                if col != side:
                    continue
                for op, du in summands:
                    if k + du > cone.u_bound:
                        continue
                    out = op.on_word(w)
                    for ww, cc in out.terms.items():
                        acc = acc + Element(cone, {(row, ww, k + du): c * cc})
        return acc

    def operator(self, degree):
        return LinearOperator(self.cone, self.cone, degree,
                              lambda word: self.apply(Element(self.cone, {word: 1})))

    def __add__(self, other):
        blocks = {k: list(v) for k, v in self.blocks.items()}
        for k, v in other.blocks.items():
            blocks.setdefault(k, []).extend(v)
        return ConePackage(self.cone, blocks)


def cone_package(con, u_bound):
    """The curved package (D, A) of a contraction; returns (cone, D, A)."""
    cone = ConeSpace(con.X.space, con.Y.space, u_bound)
    D = ConePackage(cone, {
        ("x", "x"): [(con.X.d, 0)],
        ("y", "y"): [(con.Y.d * -1, 0)],
    })
    A = ConePackage(cone, {
        ("x", "x"): [(con.h, 1)],
        ("x", "y"): [(con.g, 1)],
        ("y", "x"): [(con.f, 0)],
    })
    return cone, D, A


def cone_curvature_residual(cone, D, A, weights):
    """(D + A)^2 - u on basis words; empty dict means the identity holds."""
    failures = []
    total_deg1 = (D + A).operator(1)
    for w in weights:
        for word in cone.basis(w):
            side, ww, k = word
            out = total_deg1(total_deg1.on_word(word))
            expect = Element(cone, {(side, ww, k + 1): 1}) if k + 1 <= cone.u_bound \
                else Element(cone, {})
            if not (out - expect).is_zero():
                failures.append(cone.repr_word(word))
    return failures


def perturbed_cone_package(con, mu, u_bound, nilpotency_bound):
    """M* and A* = u A (u + M* A)^{-1} for a perturbation mu of the contraction.

    Returns (cone, D, M_star, A_star); u^{-1} M* A is u-free, so the inverse
    is a finite Neumann series in [[mu h, mu g], [0, 0]].
    """
    cone, D, A = cone_package(con, u_bound)
    M_star = ConePackage(cone, {("x", "x"): [(mu, 0)]})
    # N := u^{-1} M* A = [[mu h, mu g], [0, 0]]
    mu_h = compose(mu, con.h)
    mu_g = compose(mu, con.g)
    inv_mu_h = one_plus_inverse(mu_h, nilpotency_bound)
    # (1 + N)^{-1} = [[(1+mu h)^{-1}, -(1+mu h)^{-1} mu g], [0, 1]]
    a_star_blocks = {
        ("x", "x"): [(compose(con.h, inv_mu_h), 1)],
        ("x", "y"): [(compose(con.h, compose(inv_mu_h, mu_g)) * -1 + con.g, 1)],
        ("y", "x"): [(compose(con.f, inv_mu_h), 0)],
        ("y", "y"): [(compose(con.f, compose(inv_mu_h, mu_g)) * -1, 0)],
    }
    A_star = ConePackage(cone, a_star_blocks)
    return cone, D, M_star, A_star


# -- tensor trick ---------------------------------------------------------------

def tensor_trick(con, bar_X=None, bar_Z=None):
    """Lift a strict contraction of A onto Z to bar constructions.

    Returns (BarA, BarZ, F, G, H) where F, G are letterwise coalgebra
    morphisms and H[a_1|..|a_k] = sum (-1)^{omega_{j-1}}
    [p a_1|..|p a_{j-1}|h a_j|a_{j+1}|..|a_k].
    """
    if not con.strict:
        raise ValueError("tensor trick needs a strict contraction")
    A = con.X.space
    Z = con.Y.space
    bar_A = bar_X or BarSpace(A)
    bar_Z = bar_Z or BarSpace(Z)
    F = letterwise_morphism(bar_A, bar_Z, lambda a: con.f.on_word(a), name="F")
    G = letterwise_morphism(bar_Z, bar_A, lambda z: con.g.on_word(z), name="G")
    p = con.p

    def h_fn(word):
        acc = Element(bar_A, {})
        for j in range(1, len(word) + 1):
            sign = -1 if bar_A.omega(word, j - 1) % 2 else 1
            slots = [p.on_word(a) for a in word[:j - 1]] + [con.h.on_word(word[j - 1])]
            combos = [(Fraction(sign), ())]
            dead = False
            for s in slots:
                if s.is_zero():
                    dead = True
                    break
                combos = [(c * c2, ls + (w2,)) for c, ls in combos
                          for w2, c2 in s.terms.items()]
            if dead:
                continue
            for c, ls in combos:
                acc = acc + Element(bar_A, {ls + tuple(word[j:]): c})
        return acc

    H = LinearOperator(bar_A, bar_A, -1, h_fn, name="H")
    return bar_A, bar_Z, F, G, H


def bar_complex_contraction(con, bar_A=None, bar_Z=None):
    """The tensor-trick contraction (B(A), B(Z)) for the bare differentials."""
    bar_A, bar_Z, F, G, H = tensor_trick(con, bar_A, bar_Z)
    dA = coderivation(differential_cochain(bar_A), name="deltaA")
    dZ = coderivation(differential_cochain(bar_Z), name="deltaZ")
    return Contraction(Complex(bar_A, dA), Complex(bar_Z, dZ), F, G, H, strict=True)


def transfer_ainf(con, mu_cochain, weight_bound, nilpotency_bound=None):
    """Transfer an A-infinity structure along a strict contraction.

    ``con`` contracts (A, d) onto (Z, d); ``mu_cochain`` is the rest of the
    A-infinity structure of A (a Cochain on B(A), with the convention
    delta_full = delta(m1) + delta(mu)).  Returns a dict:

        bar_A, bar_Z   : the bar spaces,
        d_star         : the transferred codifferential on B(Z),
        f_star, g_star : the perturbed coalgebra morphisms,
        h_star         : the perturbed homotopy,
        m_star         : cochain on B(Z) with the transferred structure maps,
        components     : dict k -> callable (structure maps m*_k).
    """
    bar_con = bar_complex_contraction(con, bar_A=mu_cochain.bar)
    bar_A, bar_Z = bar_con.X.space, bar_con.Y.space
    F, G, H = bar_con.f, bar_con.g, bar_con.h
    dA = bar_con.X.d
    dZ = bar_con.Y.d
    bound = nilpotency_bound or (4 * weight_bound + 8)
    D = coderivation(mu_cochain, name="delta_mu")
    inv_DH = one_plus_inverse(compose(D, H), bound)
    inv_HD = one_plus_inverse(compose(H, D), bound)
    f_star = compose(F, inv_DH)
    g_star = compose(inv_HD, G)
    h_star = compose(H, inv_DH)
    d_star = compose(F, compose(dA, G)) + compose(F, compose(D, compose(inv_HD, G)))
    d_star = LinearOperator(bar_Z, bar_Z, 1, d_star.on_word, name="d_star")

    tau = universal_twisting_cochain(bar_Z)

    def component(k):
        def fn(letters):
            out = d_star.on_word(tuple(letters))
            # corestriction to B_1 gives the structure-map value
            acc = Element(bar_Z.algebra, {})
            for w, c in out.terms.items():
                if len(w) == 1:
                    acc = acc + Element(bar_Z.algebra, {w[0]: c})
            return acc
        return fn

    components = {k: component(k) for k in range(1, weight_bound + 1)}
    m_star = Cochain(bar_Z, 2, components, name="m_star")
    return {
        "bar_A": bar_A, "bar_Z": bar_Z,
        "d_star": d_star, "f_star": f_star, "g_star": g_star, "h_star": h_star,
        "m_star": m_star, "components": components,
        "F": F, "G": G, "H": H, "delta_mu": D, "dA": dA, "dZ": dZ,
        "inv_DH": inv_DH, "inv_HD": inv_HD,
    }
