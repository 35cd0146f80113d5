"""The Koszul complex and the composite contracting homotopy on B+(SV).

The bar construction of SV with coefficients in the Koszul complex
KV = SV+ (x) Wedge(V)+ carries two anticommuting differentials:

* ddd, the bar differential with coefficients (products of adjacent
  letters, the last letter acting on the module, and the inner
  differentials), contracted by hhh which shifts the module's SV+ factor
  back into the bar word;
* dd, induced by the Koszul differential a (x) b -> sum_a a x^a (x) i_a b,
  contracted by hh, which divides by the total weight rho = p + q.

Perturbing each differential by the other yields two contractions, with
targets (Wedge V+, d) and (B+ SV, delta); composing their maps gives a weak
contraction H = ff* hhh* gg* of B+(SV) onto Wedge(V)+ which additionally
satisfies H g+ = 0, f+ H = 0 and H^2 = 0 exactly.  The composite is the
definition of record; the closed summation formula for H (whose weight
normalisation resolves to the running total weight) is checked against it.
"""

from __future__ import annotations

from fractions import Fraction

from .bar import BarSpace, bar_differential
from .free_objects import FreeCommutative
from .perturbation import Complex, Contraction, perturb
from .signs import koszul_sign
from .spaces import Element, LinearOperator, one_plus_inverse, zero_operator


class KoszulBarSpace:
    """B+(SV) (x) SV+ (x) Wedge(V)+: words (bar letters, S word, Wedge word)."""

    def __init__(self, V):
        self.V = V
        self.S = FreeCommutative.symmetric(V)            # bar letters
        self.Splus = FreeCommutative.symmetric(V, unital=True)
        self.Eplus = FreeCommutative.exterior(V, unital=True)
        self.bar = BarSpace(self.S, unital=True)
        self.name = f"B+(S({V.name}),K({V.name}))"
        self._basis_cache = {}

    def degree_of(self, word):
        letters, a, b = word
        return (self.bar.degree_of(letters) + self.Splus.degree_of(a)
                + self.Eplus.degree_of(b))

    def weight_of(self, word):
        letters, a, b = word
        return (self.bar.weight_of(letters) + self.Splus.weight_of(a)
                + self.Eplus.weight_of(b))

    def basis(self, weight):
        if weight in self._basis_cache:
            return self._basis_cache[weight]
        out = []
        for wb in range(weight + 1):
            for wa in range(weight - wb + 1):
                wc = weight - wb - wa
                for letters in self.bar.basis(wb):
                    for a in self.Splus.basis(wa):
                        for b in self.Eplus.basis(wc):
                            out.append((letters, a, b))
        self._basis_cache[weight] = out
        return out

    def basis_upto(self, weight):
        out = []
        for w in range(weight + 1):
            out.extend(self.basis(w))
        return out

    def repr_word(self, word):
        letters, a, b = word
        return (f"{self.bar.repr_word(letters)}(x){self.Splus.repr_word(a)}"
                f"(x){self.Eplus.repr_word(b)}")

    def zero(self):
        return Element(self, {})

    def embed(self, letters, a_elem, b_elem, coeff=1):
        acc = Element(self, {})
        for wa, ca in a_elem.terms.items():
            for wb, cb in b_elem.terms.items():
                acc = acc + Element(self, {(letters, wa, wb): Fraction(coeff) * ca * cb})
        return acc


def iota(eplus, alpha, word):
    """Contraction of a Wedge(V)+ word by the generator x^alpha."""
    acc = Element(eplus, {})
    d_alpha = eplus.base.gen_degrees[eplus.base_names[alpha]]
    prefix = 0
    for i, g in enumerate(word):
        if g == alpha:
            sign = -1 if ((d_alpha + 1) % 2) and (prefix % 2) else 1
            rest = word[:i] + word[i + 1:]
            acc = acc + Element(eplus, {rest: sign})
        # |x^{a_m}| + 1 in V-degrees, same parity as the suspended degree
        prefix += eplus.gen_degrees[g]
    return acc


class KoszulHomotopies:
    """Operators of the appendix on B+(SV, KV) at a weight truncation."""

    def __init__(self, V, weight_bound):
        self.V = V
        self.weight_bound = weight_bound
        self.K = KoszulBarSpace(V)
        K = self.K
        self.ddd = LinearOperator(K, K, 1, self._ddd_word, name="ddd")
        self.hhh = LinearOperator(K, K, -1, self._hhh_word, name="hhh")
        self.dd = LinearOperator(K, K, 1, self._dd_word, name="dd")
        self.hh = LinearOperator(K, K, -1, self._hh_word, name="hh")
        # targets
        self.Eplus = K.Eplus
        self.barplus = K.bar
        self.bar_delta = bar_differential(self.barplus)

    # -- the bar-with-coefficients differential and homotopy ---------------
    def _ddd_word(self, word):
        K = self.K
        letters, a, b = word
        k = len(letters)
        acc = Element(K, {})
        om = [K.bar.omega(letters, j) for j in range(k + 1)]
        # products of adjacent letters
        for i in range(1, k):
            sign = -1 if (om[i] + 1) % 2 else 1
            prod = K.S.product_words(letters[i - 1], letters[i])
            for w, c in prod.terms.items():
                nl = letters[:i - 1] + (w,) + letters[i + 1:]
                acc = acc + Element(K, {(nl, a, b): c * sign})
        # last letter acts on the module factor
        if k >= 1:
            sign = -1 if (om[k] + 1) % 2 else 1
            prod = K.Splus.product_words(letters[k - 1], a)
            for w, c in prod.terms.items():
                acc = acc + Element(K, {(letters[:k - 1], w, b): c * sign})
        # inner differentials of the letters
        for i in range(1, k + 1):
            sign = -1 if om[i - 1] % 2 else 1
            da = K.S.diff_word(letters[i - 1])
            for w, c in da.terms.items():
                nl = letters[:i - 1] + (w,) + letters[i:]
                acc = acc + Element(K, {(nl, a, b): c * sign})
        # differential of the module factor
        sign = -1 if om[k] % 2 else 1
        da = K.Splus.diff_word(a)
        for w, c in da.terms.items():
            acc = acc + Element(K, {(letters, w, b): c * sign})
        s2 = sign * (-1 if K.Splus.degree_of(a) % 2 else 1)
        db = K.Eplus.diff_word(b)
        for w, c in db.terms.items():
            acc = acc + Element(K, {(letters, a, w): c * s2})
        return acc

    def _hhh_word(self, word):
        K = self.K
        letters, a, b = word
        if a == ():
            return Element(K, {})
        exp = K.bar.omega(letters, len(letters)) + K.Splus.degree_of(a)
        sign = -1 if exp % 2 else 1
        return Element(K, {(letters + (a,), (), b): Fraction(sign)})

    # -- the Koszul differential and homotopy --------------------------------
    def _dd_word(self, word):
        K = self.K
        letters, a, b = word
        exp = K.bar.omega(letters, len(letters)) + K.Splus.degree_of(a)
        sign = -1 if exp % 2 else 1
        acc = Element(K, {})
        for alpha in range(len(K.S.gen_names)):
            ib = iota(K.Eplus, alpha, b)
            if ib.is_zero():
                continue
            ax = K.Splus.product_words(a, (alpha,))
            for wa, ca in ax.terms.items():
                for wb, cb in ib.terms.items():
                    acc = acc + Element(K, {(letters, wa, wb): ca * cb * sign})
        return acc

    def _hh_word(self, word):
        K = self.K
        letters, a, b = word
        om = K.bar.omega(letters, len(letters))
        base_sign = -1 if om % 2 else 1
        acc = Element(K, {})
        da = K.Splus.degree_of(a)
        for alpha in range(len(K.S.gen_names)):
            d_al = K.S.gen_degrees[alpha]
            sign = base_sign * (-1 if (da * (d_al + 1)) % 2 else 1)
            for rest, c in K.Splus.partial_word(a, alpha).items():
                sxb = K.Eplus.product_words((alpha,), b)
                for wb, cb in sxb.terms.items():
                    rho = len(rest) + len(wb)
                    acc = acc + Element(
                        K, {(letters, rest, wb): Fraction(sign * c * cb, rho)})
        return acc

    # -- projections and inclusions ------------------------------------------
    def fff(self):
        K = self.K

        def fn(word):
            letters, a, b = word
            if letters or a != ():
                return Element(self.Eplus, {})
            return Element(self.Eplus, {b: 1})

        return LinearOperator(K, self.Eplus, 0, fn, name="fff")

    def ggg(self):
        K = self.K
        return LinearOperator(self.Eplus, K, 0,
                              lambda b: Element(K, {((), (), b): 1}), name="ggg")

    def ff(self):
        K = self.K

        def fn(word):
            letters, a, b = word
            if a != () or b != ():
                return Element(self.barplus, {})
            return Element(self.barplus, {letters: 1})

        return LinearOperator(K, self.barplus, 0, fn, name="ff")

    def gg(self):
        K = self.K
        return LinearOperator(self.barplus, K, 0,
                              lambda ls: Element(K, {(ls, (), ()): 1}), name="gg")

    # -- the two elementary contractions ----------------------------------------
    def bar_side_contraction(self):
        """(B+(SV,KV), ddd) contracted onto (Wedge V+, d) by hhh."""
        X = Complex(self.K, self.ddd)
        Y = Complex(self.Eplus, self.Eplus.differential_operator())
        return Contraction(X, Y, self.fff(), self.ggg(), self.hhh, strict=True)

    def koszul_side_contraction(self):
        """(B+(SV,KV), dd) contracted onto (B+SV, 0) by hh."""
        X = Complex(self.K, self.dd)
        Y = Complex(self.barplus, zero_operator(self.barplus, self.barplus, 1))
        return Contraction(X, Y, self.ff(), self.gg(), self.hh, strict=True)

    def double_perturbation(self, nilpotency_bound=None):
        """Perturb each side by the other differential."""
        bound = nilpotency_bound or (4 * self.weight_bound + 8)
        star1 = perturb(self.bar_side_contraction(), self.dd, bound, name="*")
        star2 = perturb(self.koszul_side_contraction(), self.ddd, bound, name="*")
        return star1, star2

    # -- the composite homotopy ----------------------------------------------------
    def composite(self, nilpotency_bound=None):
        """H = ff* hhh* gg*, f+ = fff* gg*, g+ = ff* ggg*.

        Returns a dict with H, f_plus, g_plus and the perturbed pieces.
        """
        bound = nilpotency_bound or (4 * self.weight_bound + 8)
        inv_dd_hhh = one_plus_inverse(self.dd @ self.hhh, bound)
        inv_hhh_dd = one_plus_inverse(self.hhh @ self.dd, bound)
        inv_ddd_hh = one_plus_inverse(self.ddd @ self.hh, bound)
        inv_hh_ddd = one_plus_inverse(self.hh @ self.ddd, bound)
        hhh_star = self.hhh @ inv_dd_hhh
        gg_star = inv_hh_ddd @ self.gg()
        ggg_star = inv_hhh_dd @ self.ggg()
        H = self.ff() @ (hhh_star @ gg_star)
        f_plus = self.fff() @ gg_star
        g_plus = self.ff() @ ggg_star
        return {
            "H": LinearOperator(self.barplus, self.barplus, -1, H.on_word, name="H"),
            "f_plus": LinearOperator(self.barplus, self.Eplus, 0, f_plus.on_word,
                                     name="f+"),
            "g_plus": LinearOperator(self.Eplus, self.barplus, 0, g_plus.on_word,
                                     name="g+"),
            "hhh_star": hhh_star, "gg_star": gg_star, "ggg_star": ggg_star,
        }

    def diagonal_formula(self, word, max_terms=None):
        """H by the diagonal sum ff hhh (dd hhh)^m (hh ddd)^m gg."""
        bound = max_terms or (2 * self.weight_bound + 4)
        gg_w = self.gg().on_word(word)
        ff = self.ff()
        acc = Element(self.barplus, {})
        right = gg_w
        for m in range(bound + 1):
            left = self.hhh(right)
            for _ in range(m):
                left = self.hhh(self.dd(left))
            acc = acc + ff(left)
            right = self.hh(self.ddd(right))
            if right.is_zero():
                break
        return acc

    def explicit_formula(self, word):
        """The closed summation formula for H with |a_q| = running weight.

        H[a_1|..|a_k] = sum_j (-1)^{omega_j} sum over generator choices
        (alpha_{j+1}..alpha_k) of the product of signs
        (-1)^{(|x^{a_p}|+1) |d_{a_q} a_q|} over j < p <= q <= k, divided by
        the running weights sum_{m>=q} wt(a_m), times
        sum over permutations of [a_1|..|a_j| A_j |x-letters permuted],
        with A_j the reduced product of the partial derivatives.
        """
        import itertools
        K = self.K
        S = K.S
        k = len(word)
        acc = Element(self.barplus, {})
        weights = [S.weight_of(a) for a in word]
        for j in range(0, k):
            om_sign = -1 if K.bar.omega(word, j) % 2 else 1
            tail = word[j:]
            n = k - j
            denom = Fraction(1)
            for q in range(n):
                denom *= sum(weights[j + m] for m in range(q, n))
            for alphas in itertools.product(range(len(S.gen_names)), repeat=n):
                partials = [S.partial_word(tail[q], alphas[q]) for q in range(n)]
                if any(not p for p in partials):
                    continue
                sign_pairs = 0
                for p in range(n):
                    dxp = S.gen_degrees[alphas[p]] + 1
                    if dxp % 2 == 0:
                        continue
                    for q in range(p, n):
                        d_part = S.degree_of(tail[q]) - S.gen_degrees[alphas[q]]
                        sign_pairs += d_part
                pair_sign = -1 if sign_pairs % 2 else 1
                # A_j: the product of the partial derivatives, minus its
                # constant term
                prod = Element(K.Splus, {(): 1})
                for p_map in partials:
                    step = Element(K.Splus, {})
                    for rest, c in p_map.items():
                        step = step + K.Splus.product(prod, Element(K.Splus, {rest: c}))
                    prod = step
                reduced = Element(K.S, {w: c for w, c in prod.terms.items() if w != ()})
                if reduced.is_zero():
                    continue
                xdegs = [S.gen_degrees[alphas[q]] for q in range(n)]
                for perm in itertools.permutations(range(1, n + 1)):
                    sgn = koszul_sign(list(perm), xdegs)
                    x_letters = tuple((alphas[p - 1],) for p in perm)
                    for w, c in reduced.terms.items():
                        letters = word[:j] + (w,) + x_letters
                        acc = acc + Element(
                            self.barplus,
                            {letters: Fraction(om_sign * pair_sign * sgn) * c / denom})
        return acc
