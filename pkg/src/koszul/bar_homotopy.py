"""The explicit contracting homotopy from B(SV) onto the exterior coalgebra.

The subalgebra of (B(SV), shuffle) generated by the one-letter words [x] is
a copy of Wedge(V); the operators

    rho : coderivation scaling a letter by its symmetric weight,
    tau : coderivation projecting a letter to S^1 V,
    xi  : insertion of [x^a | reduced d/dx^a],
    lam : lambda[a_1|..|a_k] = [a_1|..|a_{k-1}] sh [tau a_k],
    p   : p_k = (1/k!) [tau a_1] sh ... sh [tau a_k]

satisfy [delta, xi] = rho - lam, and h = (rho - lam)^{-1} xi is a strict
contracting homotopy.  Two evaluation modes are provided: ``spectral``
solves (rho - lam) y = xi w exactly on each graded piece subject to p y = 0,
while ``explicit`` evaluates the closed formula

    h[a_1|..|a_k] = sum_j  xi[a_1|..|a_j] / (rho (rho+1) ... (rho+k-j))
                           sh [tau a_{j+1}] sh ... sh [tau a_k],

where rho acts diagonally (by total weight) on the image of xi.  Both modes
agree word-for-word; the acceptance suite checks this exhaustively.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .bar import (
    BarSpace,
    Cochain,
    bar_differential,
    coderivation,
    shuffle_product,
    shuffle_words,
)
from .free_objects import FreeCommutative
from .perturbation import Complex, Contraction
from .spaces import Element, LinearOperator, gauss_solve


def rho_cochain(bar):
    """One-cochain scaling a letter by its symmetric weight."""
    A = bar.algebra
    return Cochain(bar, 1,
                   {1: lambda ls: Element(A, {ls[0]: A.weight_of(ls[0])})}, name="rho")


def tau_cochain(bar):
    """One-cochain projecting a letter to its weight-one part."""
    A = bar.algebra

    def fn(ls):
        g = A.tau_word(ls[0])
        return Element(A, {(g,): 1}) if g is not None else Element(A, {})

    return Cochain(bar, 1, {1: fn}, name="tau")


def generator_cochain(bar, alpha):
    """Zero-cochain with value the generator x^alpha."""
    A = bar.algebra
    deg = A.gen_degrees[alpha]
    return Cochain(bar, deg, {0: lambda ls: Element(A, {(alpha,): 1})},
                   name=f"{A.gen_names[alpha]}")


def reduced_partial_cochain(bar, alpha, signed=True):
    """The reduced partial derivative one-cochain.

    ``signed`` multiplies by (-1)^{|x^a|}, the normalisation under which
    xi = sum_a [x^a | dbar_a] applied via the bullet action; the unsigned
    variant is the one for which sum_a x^a cup dbar_a = rho - tau holds
    exactly (the two normalisations are incompatible by (-1)^{|x^a|}; the
    cup identity pins the unsigned one).
    """
    A = bar.algebra
    deg = A.gen_degrees[alpha]
    sign = -1 if (signed and deg % 2) else 1

    def fn(ls):
        out = Element(A, {})
        for rest, c in A.partial_word(ls[0], alpha).items():
            if rest != ():
                out = out + Element(A, {rest: c * sign})
        return out

    return Cochain(bar, 1 - deg, {1: fn}, name=f"dbar_{A.gen_names[alpha]}")


class BarHomotopy:
    """The operator package on B(SV) for a finite graded space V."""

    def __init__(self, V, weight_bound):
        if not V.gen_names and V.gen_names != []:
            raise ValueError("V must be finite dimensional with an explicit basis")
        self.V = V
        self.weight_bound = weight_bound
        self.S = FreeCommutative.symmetric(V)
        self.E = FreeCommutative.exterior(V)
        self.bar = BarSpace(self.S)
        self.delta = bar_differential(self.bar)
        self.rho = coderivation(rho_cochain(self.bar), name="rho")
        self.tau = coderivation(tau_cochain(self.bar), name="tau")
        self.xi = LinearOperator(self.bar, self.bar, -1, self._xi_word, name="xi")
        self.lam = LinearOperator(self.bar, self.bar, 0, self._lambda_word, name="lam")
        self.p = LinearOperator(self.bar, self.bar, 0, self._p_word, name="p")
        self.f = LinearOperator(self.bar, self.E, 0, self._f_word, name="f")
        self.g = LinearOperator(self.E, self.bar, 0, self._g_word, name="g")
        self.h = LinearOperator(self.bar, self.bar, -1,
                                lambda w: self.h_word(w, mode="explicit"), name="h")
        self._spectral_blocks = {}

    # -- the operators ------------------------------------------------------
    def _xi_word(self, word):
        S = self.S
        bar = self.bar
        k = len(word)
        acc = Element(bar, {})
        omego = [bar.omega(word, j) for j in range(k + 1)]
        for j in range(1, k + 1):
            letter = word[j - 1]
            for alpha in range(len(S.gen_names)):
                reduced = {rest: c for rest, c in S.partial_word(letter, alpha).items()
                           if rest != ()}
                if not reduced:
                    continue
                da = S.gen_degrees[alpha]
                for i in range(0, j):
                    exp = omego[i] + da * (omego[j - 1] - omego[i] + 1)
                    sign = -1 if exp % 2 else 1
                    for rest, c in reduced.items():
                        letters = (word[:i] + ((alpha,),) + word[i:j - 1]
                                   + (rest,) + word[j:])
                        acc = acc + Element(bar, {letters: Fraction(c) * sign})
        return acc

    def _lambda_word(self, word):
        if not word:
            return Element(self.bar, {})
        g = self.S.tau_word(word[-1])
        if g is None:
            return Element(self.bar, {})
        return shuffle_words(self.bar, word[:-1], ((g,),))

    def _p_word(self, word):
        taus = [self.S.tau_word(a) for a in word]
        if any(g is None for g in taus):
            return Element(self.bar, {})
        acc = self.bar.single(((taus[0],),))
        for g in taus[1:]:
            acc = shuffle_product(self.bar, acc, self.bar.single(((g,),)))
        return acc * Fraction(1, factorial(len(word)))

    def _f_word(self, word):
        taus = [self.S.tau_word(a) for a in word]
        if any(g is None for g in taus):
            return Element(self.E, {})
        sign, nw = self.E.normalize(taus)
        if nw is None:
            return Element(self.E, {})
        return Element(self.E, {nw: Fraction(sign, factorial(len(word)))})

    def _g_word(self, ext_word):
        acc = None
        for beta in ext_word:
            single = self.bar.single(((beta,),))
            acc = single if acc is None else shuffle_product(self.bar, acc, single)
        if acc is None:
            raise ValueError("empty exterior word has no bar image (non-counital)")
        return acc

    # -- the homotopy ---------------------------------------------------------
    def h_word(self, word, mode="explicit"):
        if mode == "explicit":
            return self._h_explicit(word)
        if mode == "spectral":
            return self._h_spectral(word)
        raise ValueError(f"unknown homotopy mode {mode!r}")

    def _h_explicit(self, word):
        k = len(word)
        bar = self.bar
        acc = Element(bar, {})
        prefix_weight = 0
        weights = [self.S.weight_of(a) for a in word]
        for j in range(1, k + 1):
            prefix_weight += weights[j - 1]
            # the trailing letters must project to S^1
            taus = [self.S.tau_word(a) for a in word[j:]]
            if any(g is None for g in taus):
                continue
            xi_part = self.xi.on_word(word[:j])
            if xi_part.is_zero():
                continue
            denom = Fraction(1)
            for step in range(0, k - j + 1):
                denom *= prefix_weight + step
            term = xi_part * (Fraction(1) / denom)
            for g in taus:
                term = shuffle_product(bar, term, bar.single(((g,),)))
            acc = acc + term
        return acc

    def _h_spectral(self, word):
        xi_w = self.xi.on_word(word)
        if xi_w.is_zero():
            return Element(self.bar, {})
        weight = self.bar.weight_of(word)
        length = len(word) + 1
        degree = self.bar.degree_of(word) - 1
        words, rows = self._spectral_block(weight, length, degree)
        index = {w: i for i, w in enumerate(words)}
        rhs = [Fraction(0)] * (2 * len(words))
        for w, c in xi_w.terms.items():
            rhs[index[w]] = c
        sol = gauss_solve(rows, rhs)
        if sol is None:
            raise ValueError(
                f"(rho - lam) y = xi w unsolvable on weight {weight}, degree {degree}")
        return Element(self.bar, {w: sol[i] for i, w in enumerate(words)})

    def _spectral_block(self, weight, length, degree):
        key = (weight, length, degree)
        if key in self._spectral_blocks:
            return self._spectral_blocks[key]
        words = [w for w in self.bar.basis(weight)
                 if len(w) == length and self.bar.degree_of(w) == degree]
        index = {w: i for i, w in enumerate(words)}
        n = len(words)
        rows = [[Fraction(0)] * n for _ in range(2 * n)]
        for j, w in enumerate(words):
            img = (self.rho.on_word(w) - self.lam.on_word(w))
            for ww, c in img.terms.items():
                rows[index[ww]][j] = c
            pimg = self.p.on_word(w)
            for ww, c in pimg.terms.items():
                rows[n + index[ww]][j] = c
        self._spectral_blocks[key] = (words, rows)
        return words, rows

    def lambda_falling(self, j):
        """(lam)_j = lam (lam - 1) ... (lam - j + 1)."""
        from .spaces import identity_operator
        op = None
        for i in range(j):
            factor = self.lam - identity_operator(self.bar) * i
            op = factor if op is None else factor.compose(op)
        return op if op is not None else identity_operator(self.bar)

    # -- bundle ------------------------------------------------------------------
    def contraction(self):
        """The strict contraction (B(SV), Wedge V, f, g, h)."""
        X = Complex(self.bar, self.delta)
        Y = Complex(self.E, self.E.differential_operator())
        return Contraction(X, Y, self.f, self.g, self.h, strict=True)


def bsv_contraction(V, weight_bound):
    return BarHomotopy(V, weight_bound).contraction()
