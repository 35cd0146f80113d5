"""The bar construction and the operations acting on it.

B(A) is spanned by words [a_1|...|a_k] of basis elements of an algebra-like
space A.  The prefix degrees

    omega_j = |a_1| + ... + |a_j| - j

drive every sign below; they are recomputed from the letters, never stored.

A Hochschild cochain D is a sparse family of maps B_k(A) -> A.  The
coderivation delta(D), the Gerstenhaber circle product, the brace
operations, and the action of words of cochains on B(A) are all implemented
from their defining insertion sums.

The algebra object must provide basis/degree_of/weight_of/repr_word plus
``product_words`` (and ``diff_word`` for its differential); FreeCommutative,
OmegaSpace and the PBW enveloping algebra all qualify.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .spaces import Element, LinearOperator


class BarSpace:
    """Words of algebra basis elements; ``unital`` admits the empty word."""

    def __init__(self, algebra, unital=False):
        self.algebra = algebra
        self.unital = unital
        self.name = ("B+" if unital else "B") + f"({algebra.name})"
        self._basis_cache = {}

    def degree_of(self, word):
        return sum(self.algebra.degree_of(a) - 1 for a in word)

    def weight_of(self, word):
        return sum(self.algebra.weight_of(a) for a in word)

    def omega(self, word, j):
        """Degree of the length-j prefix."""
        return sum(self.algebra.degree_of(a) - 1 for a in word[:j])

    def basis(self, weight):
        if weight in self._basis_cache:
            return self._basis_cache[weight]
        if weight == 0:
            out = [()] if self.unital else []
        else:
            out = []
            for first_weight in range(1, weight + 1):
                for letter in self.algebra.basis(first_weight):
                    if first_weight == weight:
                        out.append((letter,))
                    else:
                        for tail in self.basis(weight - first_weight):
                            if tail:
                                out.append((letter,) + tail)
        self._basis_cache[weight] = out
        return out

    def basis_upto(self, weight):
        out = []
        for w in range(0 if self.unital else 1, weight + 1):
            out.extend(self.basis(w))
        return out

    def repr_word(self, word):
        if not word:
            return "[]"
        return "[" + "|".join(self.algebra.repr_word(a) for a in word) + "]"

    def zero(self):
        return Element(self, {})

    def single(self, word, coeff=1):
        return Element(self, {word: Fraction(coeff)})


def splice(bar, word, i, j, value):
    """Replace letters word[i:j] by the terms of the algebra element value."""
    acc = Element(bar, {})
    for letter, c in value.terms.items():
        acc = acc + Element(bar, {word[:i] + (letter,) + word[j:]: c})
    return acc


def bar_coproduct_word(word):
    """Reduced deconcatenation: list of (coeff, left, right)."""
    return [(Fraction(1), word[:j], word[j:]) for j in range(1, len(word))]


class Cochain:
    """Sparse Hochschild cochain: maps length-k letter tuples to A-elements.

    ``components`` maps k to a callable; missing lengths act as zero.  The
    degree fixes the signs in every insertion formula and satisfies
    deg D(w) = omega(w) + |D| on homogeneous inputs.
    """

    def __init__(self, bar, degree, components, name=""):
        self.bar = bar
        self.algebra = bar.algebra
        self.degree = degree
        self.components = dict(components)
        self.name = name

    def __call__(self, letters):
        fn = self.components.get(len(letters))
        if fn is None:
            return Element(self.algebra, {})
        return fn(letters)

    def supported_lengths(self):
        return sorted(self.components)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cochain sum needs equal degrees")
        lengths = set(self.components) | set(other.components)
        comps = {k: (lambda k_: lambda ls: self._component(k_, ls) + other._component(k_, ls))(k)
                 for k in lengths}
        return Cochain(self.bar, self.degree, comps, name=f"({self.name}+{other.name})")

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        comps = {k: (lambda fn: lambda ls: fn(ls) * scalar)(fn)
                 for k, fn in self.components.items()}
        return Cochain(self.bar, self.degree, comps, name=f"({scalar}*{self.name})")

    __rmul__ = __mul__

    def _component(self, k, letters):
        fn = self.components.get(k)
        return fn(letters) if fn else Element(self.algebra, {})


def differential_cochain(bar):
    """m_(1): the differential of A as a degree-2 one-component cochain."""
    A = bar.algebra
    return Cochain(bar, 2, {1: lambda ls: A.diff_word(ls[0])}, name="m1")


def product_cochain(bar):
    """m_(2)(a1, a2) = (-1)^{|a1|} a1 a2."""
    A = bar.algebra

    def fn(ls):
        sign = -1 if A.degree_of(ls[0]) % 2 else 1
        return A.product_words(ls[0], ls[1]) * sign

    return Cochain(bar, 2, {2: fn}, name="m2")


def coderivation(cochain, name=None):
    """delta(D)[a_1|...|a_k] = sum (-1)^{(|D|-1) omega_i} [...|D(block)|...]."""
    bar = cochain.bar
    if cochain.components.get(0) is not None:
        raise ValueError("coderivations need D_(0) = 0")
    lengths = cochain.supported_lengths()
    odd = (cochain.degree - 1) % 2

    def fn(word):
        k = len(word)
        acc = Element(bar, {})
        for size in lengths:
            if size > k:
                continue
            for i in range(0, k - size + 1):
                value = cochain(word[i:i + size])
                if value.is_zero():
                    continue
                sign = -1 if odd and (bar.omega(word, i) % 2) else 1
                acc = acc + splice(bar, word, i, i + size, value) * sign
        return acc

    return LinearOperator(bar, bar, cochain.degree - 1, fn,
                          name=name or f"delta({cochain.name})")


def bar_differential(bar, include_product=True):
    """delta = delta(m1) (+ delta(m2) when A carries a product)."""
    delta = coderivation(differential_cochain(bar), name="delta1")
    if include_product:
        delta = delta + coderivation(product_cochain(bar), name="delta2")
    return LinearOperator(bar, bar, 1, delta.on_word, name="delta_bar")


def _expand_slots(algebra, slots):
    """Expand a mix of letters and Elements into (coeff, letters) pairs."""
    combos = [(Fraction(1), ())]
    for slot in slots:
        if isinstance(slot, Element):
            combos = [(c * c2, ls + (w,)) for c, ls in combos
                      for w, c2 in slot.terms.items()]
        else:
            combos = [(c, ls + (slot,)) for c, ls in combos]
    return combos


def gerstenhaber_circle(D, E):
    """(D o E)[a_1|..|a_k] = sum (-1)^{(|E|-1) omega_i} D[..|E(block)|..]."""
    bar = D.bar
    A = bar.algebra
    e_lengths = E.supported_lengths()
    odd = (E.degree - 1) % 2

    def component(k):
        def fn(word):
            acc = Element(A, {})
            for size in e_lengths:
                if size > k:
                    continue
                for i in range(0, k - size + 1):
                    value = E(word[i:i + size])
                    if value.is_zero():
                        continue
                    sign = -1 if odd and (bar.omega(word, i) % 2) else 1
                    for coeff, letters in _expand_slots(
                            A, list(word[:i]) + [value] + list(word[i + size:])):
                        acc = acc + D(letters) * (coeff * sign)
            return acc
        return fn

    max_d = max(D.supported_lengths(), default=0)
    max_e = max(e_lengths, default=0)
    comps = {k: component(k) for k in range(1, max_d + max_e)}
    return Cochain(bar, D.degree + E.degree - 1, comps, name=f"({D.name}o{E.name})")


def cochain_bracket(D, E):
    """[D, E] = D o E - (-1)^{(|D|-1)(|E|-1)} E o D."""
    sign = -1 if ((D.degree - 1) % 2) and ((E.degree - 1) % 2) else 1
    return gerstenhaber_circle(D, E) - gerstenhaber_circle(E, D) * sign


def brace(D, Es):
    """D{E_1,...,E_l}: ordered non-overlapping insertions, empty blocks allowed.

    Sign: (-1)^{sum_i (|E_i| - 1) omega_{j_i}} where block i covers
    (j_i, k_i].  A block may be empty only where E_i has a 0-component.
    """
    if not Es:
        raise ValueError("brace needs at least one argument")
    bar = D.bar
    A = bar.algebra

    def component(k):
        def fn(word):
            acc = Element(A, {})
            omego = [bar.omega(word, j) for j in range(k + 1)]

            def place(idx, start, slots, sign):
                nonlocal acc
                if idx == len(Es):
                    tail = list(word[start:])
                    for coeff, letters in _expand_slots(A, slots + tail):
                        acc = acc + D(letters) * (coeff * sign)
                    return
                E = Es[idx]
                for j in range(start, k + 1):
                    for size in E.supported_lengths():
                        if j + size > k:
                            continue
                        value = E(word[j:j + size])
                        if value.is_zero():
                            continue
                        s = sign
                        if ((E.degree - 1) % 2) and (omego[j] % 2):
                            s = -s
                        place(idx + 1, j + size,
                              slots + list(word[start:j]) + [value], s)

            place(0, 0, [], 1)
            return acc
        return fn

    top = max(D.supported_lengths(), default=0) + sum(
        max(E.supported_lengths(), default=0) for E in Es)
    comps = {k: component(k) for k in range(1, top + 1)}
    # a brace of zero-cochains has a 0-component (all blocks empty)
    if all(0 in E.components for E in Es):
        comps[0] = component(0)
    degree = D.degree + sum(E.degree - 1 for E in Es)
    return Cochain(bar, degree, comps,
                   name=f"{D.name}{{{','.join(E.name for E in Es)}}}")


def cup_product(m2, D1, D2):
    """D1 u D2 = (-1)^{|D1|} m{D1, D2}."""
    sign = -1 if D1.degree % 2 else 1
    return brace(m2, [D1, D2]) * sign


def bullet_action(Ds, bar):
    """Action of [D_1|...|D_n] on B(A): ordered disjoint nonempty blocks.

    Requires D_(0) = 0 for every cochain.  Returns a LinearOperator on the
    bar space; n = 1 recovers the coderivation delta(D_1).
    """
    for D in Ds:
        if D.components.get(0) is not None:
            raise ValueError("bullet action needs D_(0) = 0 for every factor")

    def fn(word):
        k = len(word)
        acc = Element(bar, {})
        omego = [bar.omega(word, j) for j in range(k + 1)]

        def place(idx, start, segments, sign):
            nonlocal acc
            if idx == len(Ds):
                slots = segments + [("tail", word[start:])]
                combos = [(Fraction(1), ())]
                for kind, payload in slots:
                    if kind == "letters":
                        combos = [(c, ls + payload) for c, ls in combos]
                    elif kind == "tail":
                        combos = [(c, ls + payload) for c, ls in combos]
                    else:
                        combos = [(c * c2, ls + (w,)) for c, ls in combos
                                  for w, c2 in payload.terms.items()]
                for coeff, letters in combos:
                    acc = acc + Element(bar, {letters: coeff * sign})
                return
            D = Ds[idx]
            for i in range(start, k):
                for j in range(i + 1, k + 1):
                    value = D(word[i:j])
                    if value.is_zero():
                        continue
                    s = sign
                    if ((D.degree - 1) % 2) and (omego[i] % 2):
                        s = -s
                    place(idx + 1, j,
                          segments + [("letters", word[start:i]), ("value", value)], s)

        place(0, 0, [], 1)
        return acc

    degree = sum(D.degree - 1 for D in Ds)
    return LinearOperator(bar, bar, degree, fn,
                          name="[" + "|".join(D.name for D in Ds) + "]")


def shuffle_words(bar, w1, w2):
    """Shuffle product of two bar words with suspended Koszul signs."""
    A = bar.algebra
    k, l = len(w1), len(w2)
    if k == 0:
        return bar.single(w2)
    if l == 0:
        return bar.single(w1)
    sdeg1 = [(A.degree_of(a) - 1) % 2 for a in w1]
    sdeg2 = [(A.degree_of(b) - 1) % 2 for b in w2]
    acc = {}
    for positions in itertools.combinations(range(k + l), k):
        pos_set = set(positions)
        rest = [p for p in range(k + l) if p not in pos_set]
        merged = [None] * (k + l)
        for idx, p in enumerate(positions):
            merged[p] = w1[idx]
        for idx, p in enumerate(rest):
            merged[p] = w2[idx]
        total = 0
        for i, p in enumerate(positions):
            if sdeg1[i]:
                total += sum(1 for j, q in enumerate(rest) if q < p and sdeg2[j])
        key = tuple(merged)
        acc[key] = acc.get(key, Fraction(0)) + (-1 if total % 2 else 1)
    return Element(bar, {k: v for k, v in acc.items() if v})


def shuffle_product(bar, x, y):
    """Bilinear extension of the shuffle product."""
    acc = Element(bar, {})
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            acc = acc + shuffle_words(bar, w1, w2) * (c1 * c2)
    return acc


def assemble_ainf_morphism(bar1, bar2, components, name="f"):
    """Coalgebra morphism B(A1) -> B(A2) from components phi_(k): B_k A1 -> A2.

    f[a_1|..|a_k] = sum over cut sets 0 < j_1 < ... < j_l < k of
    [phi(block_1)|...|phi(block_{l+1})], where phi(b) is the unsigned
    corestriction: f restricted to a single block has length-1 part
    [phi(b)].  With degree-0 corestrictions no Koszul signs appear, and the
    result is the unique coalgebra morphism with these components.
    """
    lengths = sorted(components)

    def phi(letters):
        fn = components.get(len(letters))
        if fn is None:
            return Element(bar2.algebra, {})
        return fn(letters)

    def fn(word):
        k = len(word)
        acc = Element(bar2, {})
        for n_cuts in range(0, k):
            for cuts in itertools.combinations(range(1, k), n_cuts):
                bounds = (0,) + cuts + (k,)
                blocks = [word[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]
                if any(len(b) not in lengths for b in blocks):
                    continue
                values = [phi(b) for b in blocks]
                if any(v.is_zero() for v in values):
                    continue
                for coeff, letters in _expand_slots(bar2.algebra, values):
                    acc = acc + Element(bar2, {letters: coeff})
        return acc

    return LinearOperator(bar1, bar2, 0, fn, name=name)


def letterwise_morphism(bar1, bar2, gen_map, name="f"):
    """[a_1|..|a_k] -> [F a_1|..|F a_k] for a degree-0 map F on letters."""

    def fn(word):
        values = [gen_map(a) for a in word]
        acc = Element(bar2, {})
        if any(v.is_zero() for v in values):
            return acc
        for coeff, letters in _expand_slots(bar2.algebra, values):
            acc = acc + Element(bar2, {letters: coeff})
        return acc

    return LinearOperator(bar1, bar2, 0, fn, name=name)


def universal_twisting_cochain(bar):
    """B(A) -> A: [a] -> (-1)^{|a|} a, zero on longer words."""
    A = bar.algebra

    def fn(word):
        if len(word) != 1:
            return Element(A, {})
        sign = -1 if A.degree_of(word[0]) % 2 else 1
        return Element(A, {word[0]: Fraction(sign)})

    return LinearOperator(bar, A, 1, fn, name="tau_univ")


def twisting_residual(theta, source_diff, source_coproduct, target_diff,
                      target_product, word):
    """Maurer-Cartan residual d(theta) + theta^2 on one source word.

    d(theta) = d_A theta + theta d_C;  theta^2 uses the Koszul rule
    (theta (x) theta)(c1 (x) c2) = (-1)^{|c1|} theta(c1) theta(c2).
    ``source_coproduct`` maps a word to [(coeff, left, right)].
    """
    acc = target_diff(theta.on_word(word))
    acc = acc + theta(source_diff.on_word(word))
    for coeff, left, right in source_coproduct(word):
        t1 = theta.on_word(left)
        t2 = theta.on_word(right)
        if t1.is_zero() or t2.is_zero():
            continue
        sign = -1 if theta.domain.degree_of(left) % 2 else 1
        acc = acc + target_product(t1, t2) * (coeff * sign)
    return acc
