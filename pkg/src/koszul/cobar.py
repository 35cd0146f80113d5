"""The cobar construction of a dg coalgebra.

Omega(C) is the tensor algebra on the desuspension of C: words
<a_1|...|a_k> of C-basis words, with degree sum(|a_i| + 1) and
concatenation product.  The differential has a part induced by the
differential of C and a part splitting one letter by the reduced
coproduct; the coproduct is the coshuffle, cocommutative whenever C is.

The letter differential is pluggable so the same space serves Wedge(V)
(abelian case), the Chevalley-Eilenberg coalgebra of an L-infinity algebra
(letter differential d + bracket parts), and the epsilon-extended
coalgebras of the Gauss-Manin construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .spaces import Element, LinearOperator


class OmegaSpace:
    """Tensor algebra on the desuspension of a coalgebra C."""

    def __init__(self, C, letter_differential=None):
        self.C = C
        self.letter_differential = letter_differential
        self.name = f"Omega({C.name})"
        self._basis_cache = {}

    # -- space protocol ---------------------------------------------------
    def degree_of(self, word):
        return sum(self.C.degree_of(a) + 1 for a in word)

    def weight_of(self, word):
        return sum(self.C.weight_of(a) for a in word)

    def omega(self, word, j):
        """True degree of the length-j prefix."""
        return sum(self.C.degree_of(a) + 1 for a in word[:j])

    def basis(self, weight):
        if weight in self._basis_cache:
            return self._basis_cache[weight]
        if weight == 0:
            out = []
        else:
            out = []
            for first_weight in range(1, weight + 1):
                for letter in self.C.basis(first_weight):
                    if first_weight == weight:
                        out.append((letter,))
                    else:
                        for tail in self.basis(weight - first_weight):
                            out.append((letter,) + tail)
        self._basis_cache[weight] = out
        return out

    def basis_upto(self, weight):
        out = []
        for w in range(1, weight + 1):
            out.extend(self.basis(w))
        return out

    def repr_word(self, word):
        return "<" + "|".join(self.C.repr_word(a) for a in word) + ">"

    def zero(self):
        return Element(self, {})

    def single(self, word, coeff=1):
        return Element(self, {word: Fraction(coeff)})

    # -- algebra -----------------------------------------------------------
    def product_words(self, w1, w2):
        return Element(self, {w1 + w2: 1})

    def product(self, x, y):
        acc = Element(self, {})
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                acc = acc + Element(self, {w1 + w2: c1 * c2})
        return acc

    # -- differential --------------------------------------------------------
    def letter_extension(self, op, name=""):
        """Extend an operator on C letterwise with Koszul prefactors.

        For odd op the sign at slot j is (-1)^{omega_{j-1}}; even operators
        get no sign.  This is the d-part pattern of the cobar differential.
        """
        odd = op.degree % 2

        def fn(word):
            acc = Element(self, {})
            for j in range(1, len(word) + 1):
                value = op.on_word(word[j - 1])
                if value.is_zero():
                    continue
                sign = -1 if odd and (self.omega(word, j - 1) % 2) else 1
                for a, c in value.terms.items():
                    acc = acc + Element(self, {word[:j - 1] + (a,) + word[j:]: c * sign})
            return acc

        return LinearOperator(self, self, op.degree, fn, name=name or f"Omega({op.name})")

    def coproduct_part(self):
        """The coproduct part of the differential: split one letter.

        The sign at slot j is (-1)^{omega_{j-1}} times (-1)^{|left|} per
        coproduct term: the new desuspension crosses the left factor.  (The
        collapsed per-slot sign without the split term does not square to
        zero; the split-dependent sign is forced by delta^2 = 0.)
        """

        def fn(word):
            acc = Element(self, {})
            for j in range(1, len(word) + 1):
                slot_sign = -1 if self.omega(word, j - 1) % 2 else 1
                for coeff, left, right in self.C.coproduct_word(word[j - 1]):
                    sign = slot_sign * (-1 if self.C.degree_of(left) % 2 else 1)
                    letters = word[:j - 1] + (left, right) + word[j:]
                    acc = acc + Element(self, {letters: coeff * sign})
            return acc

        return LinearOperator(self, self, 1, fn, name="delta_Omega")

    def differential_parts(self):
        """(coproduct part, letter-differential part); either may be zero."""
        parts = [self.coproduct_part()]
        if self.letter_differential is not None:
            parts.append(self.letter_extension(self.letter_differential, name="delta_1"))
        return parts

    def diff_word(self, word):
        acc = Element(self, {})
        for part in self.differential_parts():
            acc = acc + part.on_word(word)
        return acc

    def differential_operator(self):
        return LinearOperator(self, self, 1, self.diff_word, name="delta")

    # -- coalgebra ---------------------------------------------------------------
    def coshuffle_word(self, word):
        """Reduced coshuffle coproduct: list of (coeff, left, right).

        The Koszul sign is the unshuffle sign on the desuspended letter
        degrees |a_i| + 1.
        """
        n = len(word)
        degs = [(self.C.degree_of(a) + 1) % 2 for a in word]
        out = []
        for r in range(1, n):
            for chosen in itertools.combinations(range(n), r):
                chosen_set = set(chosen)
                total = 0
                for j in chosen:
                    if degs[j]:
                        total += sum(1 for i in range(j)
                                     if i not in chosen_set and degs[i])
                left = tuple(word[i] for i in chosen)
                right = tuple(word[i] for i in range(n) if i not in chosen_set)
                out.append((Fraction(-1 if total % 2 else 1), left, right))
        return out

    coproduct_word = coshuffle_word
