"""Dev scratch: pin the cobar-side xi/lambda signs against the dual identities.

Not part of the package; run once, read off the surviving variant, hardcode.
"""
import itertools
from fractions import Fraction

from koszul.spaces import Element, GradedSpace, LinearOperator, graded_commutator, operators_equal, zero_operator, identity_operator
from koszul.free_objects import FreeCommutative
from koszul.cobar import OmegaSpace

V = GradedSpace("V2", [("x", 0), ("y", 1)])
Vd = GradedSpace("V2d", [("x", 0), ("y", 1)], {"x": {"y": 1}})


def make_pack(Vs, xi_params, lam_params):
    E = FreeCommutative.exterior(Vs)
    O = OmegaSpace(E, letter_differential=E.differential_operator())
    B_lit, gap_lit, c1, c2, c3 = xi_params
    D_lit, t_lit, e1, e2 = lam_params

    def letdeg(a, lit):
        d = E.degree_of(a)
        return d % 2 if lit else (d + 1) % 2

    def xi_word(word):
        k = len(word)
        acc = Element(O, {})
        for i in range(1, k + 1):
            ai = word[i - 1]
            t = E.tau_word(ai)
            if t is None:
                continue
            for j in range(i + 1, k + 1):
                merged = E.product_words((t,), word[j - 1])
                if merged.is_zero():
                    continue
                om_i1 = O.omega(word, i - 1)
                gap = sum((E.degree_of(word[m]) + (0 if gap_lit else 1))
                          for m in range(i, j - 1))
                B = letdeg(ai, B_lit)
                exp = om_i1 + B * (gap + c1) + c2 * B + c3
                sign = -1 if exp % 2 else 1
                for mw, mc in merged.terms.items():
                    letters = word[:i - 1] + word[i:j - 1] + (mw,) + word[j:]
                    acc = acc + Element(O, {letters: mc * sign})
        return acc

    def lam_word(word):
        k = len(word)
        acc = Element(O, {})
        for j in range(1, k + 1):
            t = E.tau_word(word[j - 1])
            if t is None:
                continue
            Dj = letdeg(word[j - 1], D_lit)
            suffix = sum((E.degree_of(word[m]) + (0 if t_lit else 1))
                         for m in range(j, k))
            exp = Dj * suffix + e1 * Dj + e2
            sign = -1 if exp % 2 else 1
            letters = word[:j - 1] + word[j:] + ((t,),)
            acc = acc + Element(O, {letters: sign})
        return acc

    xi = LinearOperator(O, O, -1, xi_word, name="xi")
    lam = LinearOperator(O, O, 0, lam_word, name="lam")
    rho = LinearOperator(O, O, 0,
                         lambda w: Element(O, {w: O.weight_of(w)}), name="rho")
    delta = O.differential_operator()
    return O, delta, xi, lam, rho


def check(Vs, xi_params, lam_params, bound=4):
    O, delta, xi, lam, rho = make_pack(Vs, xi_params, lam_params)
    words = O.basis_upto(bound)
    lhs = graded_commutator(delta, xi)
    rhs = rho - lam
    for w in words:
        if not (lhs.on_word(w) - rhs.on_word(w)).is_zero():
            return f"[d,xi]!=rho-lam at {O.repr_word(w)}"
        if not xi(xi.on_word(w)).is_zero():
            return f"xi^2!=0 at {O.repr_word(w)}"
    com = graded_commutator(delta, lam)
    com2 = graded_commutator(xi, lam)
    for w in words:
        if not com.on_word(w).is_zero():
            return f"[d,lam]!=0 at {O.repr_word(w)}"
        if not com2.on_word(w).is_zero():
            return f"[xi,lam]!=0 at {O.repr_word(w)}"
    return None


survivors = []
for xi_params in itertools.product([True, False], [True, False], [0, 1], [0, 1], [0, 1]):
    for lam_params in itertools.product([True, False], [True, False], [0, 1], [0, 1]):
        err = check(V, xi_params, lam_params, bound=3)
        if err is None:
            survivors.append((xi_params, lam_params))
print(f"{len(survivors)} survivors at bound 3 on V2")
final = []
for xi_params, lam_params in survivors:
    if check(V, xi_params, lam_params, bound=4) is None and \
       check(Vd, xi_params, lam_params, bound=4) is None:
        final.append((xi_params, lam_params))
        print("OK", "xi(B_lit,gap_lit,c1,c2,c3)=", xi_params,
              " lam(D_lit,t_lit,e1,e2)=", lam_params)
print(f"{len(final)} survive full check")
