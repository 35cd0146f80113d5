"""The contraction from the cobar construction onto the symmetric algebra,
its perturbation to Chevalley-Eilenberg coalgebras, the enveloping
A-infinity structure on SL, and the PBW comparison.

On Omega(Wedge V) the duals of the bar-side operators act as

    xi  <a_1|..|a_k> = sum_{i<j} +- <a_1|..â_i..|tau a_i ^ a_j|..|a_k>,
    lam <a_1|..|a_k> = sum_j     +- <a_1|..â_j..|a_k|tau a_j>,

with [delta, xi] = rho - lam; the contracting homotopy is the locally
finite sum h = sum_j (rho)_(j+1)^{-1} (lam)_j xi with rho acting diagonally
by total weight.  The sign exponents below are the displayed ones read with
prefix degrees sum(|a_i| + 1); this reading is the unique one satisfying
the dual identity suite (checked exhaustively in the tests).

For an L-infinity algebra L, perturbing by the bracket coderivation and
applying the tensor trick transfers an A-infinity structure to SL.  The
bracket parts enter scaled by BRACKET_NORMALIZATION^{arity-1}; the scale 2
is the normalisation of the codifferential under which the classical
enveloping algebra UL matches the transferred product via x -> x/2, giving
e*f = ef + h and e*f - f*e = 2h on sl2.  The unscaled codifferential gives
the same structure up to the coalgebra automorphism scaling weight-l words
by 2^l (there the comparison map is x -> x).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .bar import BarSpace, Cochain, product_cochain, universal_twisting_cochain
from .cobar import OmegaSpace
from .free_objects import FreeCommutative, ce_codifferential
from .perturbation import Complex, Contraction, transfer_ainf
from .spaces import Element, LinearOperator, matrix_rank

BRACKET_NORMALIZATION = Fraction(2)


class CobarHomotopy:
    """Operator package on Omega(Wedge V) contracting onto S(V)."""

    def __init__(self, V, weight_bound):
        self.V = V
        self.weight_bound = weight_bound
        self.E = FreeCommutative.exterior(V)
        self.S = FreeCommutative.symmetric(V)
        self.omega = OmegaSpace(self.E, letter_differential=self.E.differential_operator())
        O = self.omega
        self.delta = O.differential_operator()
        self.rho = LinearOperator(O, O, 0,
                                  lambda w: Element(O, {w: O.weight_of(w)}), name="rho")
        self.xi = LinearOperator(O, O, -1, self._xi_word, name="xi")
        self.lam = LinearOperator(O, O, 0, self._lambda_word, name="lam")
        self.f = LinearOperator(O, self.S, 0, self._f_word, name="f")
        self.g = LinearOperator(self.S, O, 0, self._g_word, name="g")
        self.h = LinearOperator(O, O, -1, self._h_word, name="h")
        self.p = LinearOperator(O, O, 0,
                                lambda w: self.g(self.f.on_word(w)), name="p")

    # -- operators -----------------------------------------------------------
    def _xi_word(self, word):
        O, E = self.omega, self.E
        k = len(word)
        acc = Element(O, {})
        om = [O.omega(word, m) for m in range(k + 1)]
        for i in range(1, k + 1):
            t = E.tau_word(word[i - 1])
            if t is None:
                continue
            d_i = E.degree_of(word[i - 1])
            for j in range(i + 1, k + 1):
                merged = E.product_words((t,), word[j - 1])
                if merged.is_zero():
                    continue
                gap = om[j - 1] - om[i]
                exp = om[i - 1] + d_i * (gap + 1)
                sign = -1 if exp % 2 else 1
                for mw, mc in merged.terms.items():
                    letters = word[:i - 1] + word[i:j - 1] + (mw,) + word[j:]
                    acc = acc + Element(O, {letters: mc * sign})
        return acc

    def _lambda_word(self, word):
        O, E = self.omega, self.E
        k = len(word)
        acc = Element(O, {})
        for j in range(1, k + 1):
            t = E.tau_word(word[j - 1])
            if t is None:
                continue
            suffix = sum(E.degree_of(word[m]) + 1 for m in range(j, k))
            exp = (E.degree_of(word[j - 1]) + 1) * suffix
            sign = -1 if exp % 2 else 1
            letters = word[:j - 1] + word[j:] + ((t,),)
            acc = acc + Element(O, {letters: sign})
        return acc

    def _f_word(self, word):
        taus = [self.E.tau_word(a) for a in word]
        if any(t is None for t in taus):
            return Element(self.S, {})
        acc = Element(self.S, {(taus[0],): 1})
        for t in taus[1:]:
            acc = self.S.product(acc, Element(self.S, {(t,): 1}))
        return acc

    def _g_word(self, monomial):
        """(1/k!) sum over orderings with Koszul signs on the V-degrees."""
        O = self.omega
        k = len(monomial)
        degs = [self.S.gen_degrees[i] for i in monomial]
        acc = Element(O, {})
        for perm in itertools.permutations(range(k)):
            total = 0
            for a in range(k):
                if degs[perm[a]] % 2 == 0:
                    continue
                for b in range(a + 1, k):
                    if perm[b] < perm[a] and degs[perm[b]] % 2:
                        total += 1
            sign = -1 if total % 2 else 1
            letters = tuple((monomial[perm[a]],) for a in range(k))
            acc = acc + Element(O, {letters: Fraction(sign, factorial(k))})
        return acc

    def _h_word(self, word):
        O = self.omega
        cur = self.xi.on_word(word)
        acc = Element(O, {})
        j = 0
        while not cur.is_zero():
            if j > len(word) + 1:
                raise RuntimeError("descending factorial did not terminate")
            # acc += (rho)_{j+1}^{-1} cur, rho acting diagonally by weight
            for w, c in cur.terms.items():
                weight = O.weight_of(w)
                denom = Fraction(1)
                for r in range(j + 1):
                    denom *= weight - r
                acc = acc + Element(O, {w: c / denom})
            cur = self.lam(cur) - cur * j
            j += 1
        return acc

    def lambda_falling(self, elem, j):
        cur = elem
        for i in range(j):
            cur = self.lam(cur) - cur * i
        return cur

    def contraction(self):
        X = Complex(self.omega, self.delta)
        Y = Complex(self.S, self.S.differential_operator())
        return Contraction(X, Y, self.f, self.g, self.h, strict=True)


def omega_contraction(V, weight_bound):
    return CobarHomotopy(V, weight_bound).contraction()


# -- the enveloping A-infinity structure -------------------------------------

class EnvelopeStructure:
    """Transferred structure maps m_k on S(L), with the pipeline attached."""

    def __init__(self, linf, weight_bound, scale=BRACKET_NORMALIZATION):
        self.linf = linf
        self.weight_bound = weight_bound
        self.scale = Fraction(scale)
        self.pack = CobarHomotopy(linf.L, weight_bound)
        self.S = self.pack.S
        O = self.pack.omega
        # bracket coderivation on the Chevalley-Eilenberg coalgebra, extended
        # to the cobar construction as a derivation
        self.mu_letter = ce_codifferential(linf, self.pack.E, include_d=False,
                                           scale=self.scale)
        self.mu_omega = O.letter_extension(self.mu_letter, name="mu")
        con = self.pack.contraction()
        bar_A = BarSpace(O)
        mu_cochain = Cochain(bar_A, 2,
                             {1: lambda ls: self.mu_omega.on_word(ls[0])},
                             name="mu") + product_cochain(bar_A)
        self.transfer = transfer_ainf(con, mu_cochain, weight_bound)
        self.bar_SL = self.transfer["bar_Z"]
        self.m = self.transfer["m_star"]

    def structure_map(self, letters):
        """m_k applied to a tuple of S(L) basis words."""
        return self.m(tuple(letters))

    def star_word(self, w1, w2):
        """The transferred product on basis words: a*b = (-1)^{|a|} m_2(a,b)."""
        sign = -1 if self.S.degree_of(w1) % 2 else 1
        return self.m((w1, w2)) * sign

    def star(self, x, y):
        acc = Element(self.S, {})
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                acc = acc + self.star_word(w1, w2) * (c1 * c2)
        return acc

    def m_tables(self, weight_bound=None):
        """Structure constants of each m_k on bar words up to the bound."""
        bound = weight_bound or self.weight_bound
        tables = {}
        for word in self.bar_SL.basis_upto(bound):
            value = self.m(word)
            if value.is_zero():
                continue
            k = len(word)
            tables.setdefault(k, []).append((word, value))
        return tables


def envelope_ainf(linf, weight_bound, scale=BRACKET_NORMALIZATION):
    return EnvelopeStructure(linf, weight_bound, scale)


# -- the classical enveloping algebra (PBW basis) --------------------------------

class EnvelopingAlgebra:
    """U(L) for a dg Lie algebra, on the PBW basis of nondecreasing words.

    Products are reduced by the rewriting x_b x_a = (-1)^{|a||b|} x_a x_b +
    [x_b, x_a] for out-of-order pairs, and x x = [x,x]/2 for odd repeats.
    """

    def __init__(self, linf):
        if not linf.is_dg_lie():
            raise ValueError("the PBW envelope needs a dg Lie algebra")
        self.linf = linf
        self.L = linf.L
        # PBW words have the same shape as symmetric-algebra words
        self._shape = FreeCommutative.symmetric(self.L)
        self.name = f"U({self.L.name})"
        self._product_cache = {}

    def degree_of(self, word):
        return self._shape.degree_of(word)

    def weight_of(self, word):
        return len(word)

    def basis(self, weight):
        return self._shape.basis(weight)

    def basis_upto(self, weight):
        return self._shape.basis_upto(weight)

    def repr_word(self, word):
        return self._shape.repr_word(word)

    def _gen_degree(self, i):
        return self.L.gen_degrees[self.L.gen_names[i]]

    def _bracket_elem(self, i, j):
        """[x_i, x_j] as an element of U(L) (weight-one words)."""
        value = self.linf.bracket((i, j))
        return Element(self, {(self.L.index[g],): c for g, c in value.terms.items()})

    def reduce_word(self, seq):
        """Rewrite an arbitrary generator sequence into the PBW basis."""
        seq = tuple(seq)
        cached = self._product_cache.get(seq)
        if cached is not None:
            return cached
        for m in range(len(seq) - 1):
            a, b = seq[m], seq[m + 1]
            if a < b:
                continue
            head, tail = seq[:m], seq[m + 2:]
            if a == b:
                if self._gen_degree(a) % 2 == 0:
                    continue
                # odd square: x x = [x,x]/2
                out = Element(self, {})
                for w, c in self._bracket_elem(a, a).terms.items():
                    out = out + self.reduce_elem(head + w + tail) * (c / 2)
                self._product_cache[seq] = out
                return out
            # a > b: swap with Koszul sign plus bracket term
            sign = -1 if (self._gen_degree(a) % 2) and (self._gen_degree(b) % 2) else 1
            out = self.reduce_elem(head + (b, a) + tail) * sign
            for w, c in self._bracket_elem(a, b).terms.items():
                out = out + self.reduce_elem(head + w + tail) * c
            self._product_cache[seq] = out
            return out
        out = Element(self, {seq: 1})
        self._product_cache[seq] = out
        return out

    def reduce_elem(self, seq):
        return self.reduce_word(tuple(seq))

    def product_words(self, w1, w2):
        return self.reduce_word(w1 + w2)

    def product(self, x, y):
        acc = Element(self, {})
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                acc = acc + self.product_words(w1, w2) * (c1 * c2)
        return acc

    def diff_word(self, word):
        """The differential of L extended as a derivation."""
        acc = Element(self, {})
        sign = 1
        for pos, i in enumerate(word):
            row = self.L.differential.get(self.L.gen_names[i], {})
            for dst, coeff in row.items():
                seq = word[:pos] + (self.L.index[dst],) + word[pos + 1:]
                acc = acc + self.reduce_word(seq) * (Fraction(coeff) * sign)
            if self._gen_degree(i) % 2:
                sign = -sign
        return acc


def pbw_map(env_struct, ul, ul_word):
    """phi(x_1 ... x_m) = (x_1/2) * ... * (x_m/2) in the transferred algebra."""
    S = env_struct.S
    if not ul_word:
        raise ValueError("empty enveloping word")
    acc = Element(S, {(ul_word[0],): Fraction(1, 2)})
    for i in ul_word[1:]:
        acc = env_struct.star(acc, Element(S, {(i,): Fraction(1, 2)}))
    return acc


def pbw_iso_check(linf, weight_bound, scale=BRACKET_NORMALIZATION):
    """Verify x -> x/2 extends to an isomorphism U(L) -> (S(L), *).

    Returns a report dict with the relation residuals on generator pairs
    and the rank of each filtered piece.
    """
    env = envelope_ainf(linf, weight_bound, scale)
    ul = EnvelopingAlgebra(linf)
    S = env.S
    L = linf.L
    report = {"relations": [], "ranks": [], "well_defined": True, "bijective": True}
    n = len(L.gen_names)
    for i in range(n):
        for j in range(i, n):
            di = L.gen_degrees[L.gen_names[i]]
            dj = L.gen_degrees[L.gen_names[j]]
            if i == j and di % 2 == 0:
                continue
            xi = Element(S, {(i,): 1})
            xj = Element(S, {(j,): 1})
            sign = -1 if (di % 2) and (dj % 2) else 1
            lhs = env.star(xi, xj) - env.star(xj, xi) * sign
            rhs = Element(S, {})
            for g, c in linf.bracket((i, j)).terms.items():
                rhs = rhs + Element(S, {(L.index[g],): 2 * c})
            residual = lhs - rhs
            ok = residual.is_zero()
            if not ok:
                report["well_defined"] = False
            report["relations"].append({
                "pair": (L.gen_names[i], L.gen_names[j]),
                "residual_zero": ok,
            })
    # rank of each filtered piece: phi maps words of length <= m onto S^{<= m}
    images = {}
    for word in ul.basis_upto(weight_bound):
        images[word] = pbw_map(env, ul, word)
    sl_words = S.basis_upto(weight_bound)
    index = {w: r for r, w in enumerate(sl_words)}
    for m in range(1, weight_bound + 1):
        ul_words = ul.basis_upto(m)
        rows = [[Fraction(0)] * len(ul_words) for _ in sl_words]
        for col, word in enumerate(ul_words):
            for w, c in images[word].terms.items():
                rows[index[w]][col] = c
        rank = matrix_rank(rows) if ul_words else 0
        expected = len(S.basis_upto(m))
        ok = (rank == expected == len(ul_words))
        if not ok:
            report["bijective"] = False
        report["ranks"].append({"filtration": m, "rank": rank, "dimension": expected,
                                "full": ok})
    return report


def rescaled_star_table(env_struct, weight_bound=None):
    """Structure constants of the conjugated product making x -> x an iso.

    Conjugating * by the automorphism scaling S^k by 2^{-k} gives a product
    *' with x *' y - (-1)^{|x||y|} y *' x = [x, y] on generators, so the
    identity map on generators extends to an isomorphism U(L) -> (S(L), *').
    The S^r component of a *' b is 2^{r-p-q} times that of a * b.
    """
    S = env_struct.S
    bound = weight_bound or env_struct.weight_bound
    table = []
    for w1 in S.basis_upto(bound):
        for w2 in S.basis_upto(bound):
            if S.weight_of(w1) + S.weight_of(w2) > bound:
                continue
            out = env_struct.star_word(w1, w2)
            scaled = Element(S, {})
            p_q = S.weight_of(w1) + S.weight_of(w2)
            for w, c in out.terms.items():
                scaled = scaled + Element(S, {w: c * Fraction(1, 2) ** (p_q - S.weight_of(w))})
            if not scaled.is_zero():
                table.append((w1, w2, scaled))
    return table
