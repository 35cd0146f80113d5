"""Free graded-commutative bialgebras: symmetric algebras and exterior coalgebras.

One class covers both: the non-unital symmetric algebra S(V) is the free
graded-commutative algebra on the generators of V with their own degrees,
and the exterior coalgebra Wedge(V) is the same construction on the
suspended generators sx of degree |x| - 1.  Words are sorted tuples of
generator indices; generators of odd degree (in the space's own grading)
have multiplicity at most one.

Both spaces are bialgebras: the product is the (wedge) product of
monomials, the reduced coproduct the coshuffle, with generators primitive.

The Chevalley-Eilenberg codifferential of an L-infinity structure lives on
Wedge(L); it is assembled from a degree-1 part induced by the differential
of L and bracket parts delta_k of weight drop k-1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

from .signs import antisym_sort_sign, koszul_sign, merge_sign, unshuffle_sign
from .spaces import Element, GradedSpace, LinearOperator, nullspace


class FreeCommutative:
    """Free graded-commutative algebra/coalgebra on named generators.

    Words are nondecreasing tuples of generator indices.  ``unital`` allows
    the empty word; the reduced (non-counital) structure never produces it.
    ``base`` optionally records the space the generators came from (the
    unsuspended V for Wedge(V)), together with ``base_names`` mapping each
    generator index to its original name.
    """

    def __init__(self, name, generators, unital=False, base=None, base_names=None):
        self.name = name
        self.gen_names = [g for g, _ in generators]
        self.gen_degrees = [d for _, d in generators]
        self.index = {g: i for i, g in enumerate(self.gen_names)}
        self.unital = unital
        self.base = base
        self.base_names = base_names or list(self.gen_names)
        self._basis_cache = {}

    # -- construction helpers --------------------------------------------
    @classmethod
    def symmetric(cls, V, unital=False):
        """S(V): generators keep their degrees and names."""
        gens = [(g, V.gen_degrees[g]) for g in V.gen_names]
        return cls(f"S({V.name})" + ("+" if unital else ""), gens,
                   unital=unital, base=V, base_names=list(V.gen_names))

    @classmethod
    def exterior(cls, V, unital=False):
        """Wedge(V) = S(sV): generators sx of degree |x| - 1."""
        gens = [(f"s{g}", V.gen_degrees[g] - 1) for g in V.gen_names]
        return cls(f"Wedge({V.name})" + ("+" if unital else ""), gens,
                   unital=unital, base=V, base_names=list(V.gen_names))

    # -- space protocol ----------------------------------------------------
    def degree_of(self, word):
        return sum(self.gen_degrees[i] for i in word)

    def weight_of(self, word):
        return len(word)

    def basis(self, weight):
        if weight in self._basis_cache:
            return self._basis_cache[weight]
        if weight == 0:
            out = [()] if self.unital else []
        else:
            out = []
            for combo in itertools.combinations_with_replacement(
                    range(len(self.gen_names)), weight):
                ok = True
                for i in set(combo):
                    if self.gen_degrees[i] % 2 and combo.count(i) > 1:
                        ok = False
                        break
                if ok:
                    out.append(combo)
        self._basis_cache[weight] = out
        return out

    def basis_upto(self, weight):
        out = []
        for w in range(0 if self.unital else 1, weight + 1):
            out.extend(self.basis(w))
        return out

    def repr_word(self, word):
        if not word:
            return "1"
        bits = []
        for i, grp in itertools.groupby(word):
            n = len(list(grp))
            nm = self.gen_names[i]
            bits.append(nm if n == 1 else f"{nm}^{n}")
        return "*".join(bits)

    def zero(self):
        return Element(self, {})

    # -- algebra -----------------------------------------------------------
    def normalize(self, seq):
        """Sort a generator-index sequence; returns (sign, word or None)."""
        degs = [self.gen_degrees[i] for i in seq]
        sign, keys, degs = _sorted_with_sign(list(seq), degs)
        for a, b in zip(keys, keys[1:]):
            if a == b and self.gen_degrees[a] % 2:
                return 1, None
        return sign, tuple(keys)

    def from_names(self, names, coeff=1):
        sign, word = self.normalize([self.index[n] for n in names])
        if word is None:
            return Element(self, {})
        return Element(self, {word: Fraction(coeff) * sign})

    def product_words(self, w1, w2):
        degs1 = [self.gen_degrees[i] for i in w1]
        degs2 = [self.gen_degrees[i] for i in w2]
        sign = merge_sign(degs1, w1, degs2, w2)
        merged = sorted(w1 + w2)
        for a, b in zip(merged, merged[1:]):
            if a == b and self.gen_degrees[a] % 2:
                return Element(self, {})
        return Element(self, {tuple(merged): Fraction(sign)})

    def product(self, x, y):
        if x.space is not self or y.space is not self:
            raise ValueError(f"ambient mismatch for product in {self.name}")
        acc = Element(self, {})
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                acc = acc + self.product_words(w1, w2) * (c1 * c2)
        return acc

    # -- coalgebra ----------------------------------------------------------
    def coproduct_word(self, word):
        """Reduced coshuffle coproduct: list of (coeff, left, right)."""
        n = len(word)
        degs = [self.gen_degrees[i] for i in word]
        out = []
        for r in range(1, n):
            for chosen in itertools.combinations(range(n), r):
                sign = unshuffle_sign(degs, chosen)
                left = tuple(word[i] for i in chosen)
                right = tuple(word[i] for i in range(n) if i not in set(chosen))
                out.append((Fraction(sign), left, right))
        return out

    def coproduct(self, x, target=None):
        tensor = target or TensorSquare(self)
        acc = Element(tensor, {})
        for w, c in x.terms.items():
            for coeff, left, right in self.coproduct_word(w):
                acc = acc + Element(tensor, {(left, right): coeff * c})
        return acc

    def counital_coproduct(self, x, target=None):
        """Delta_+ a = a (x) 1 + Delta a + 1 (x) a - eps(a) 1 (x) 1."""
        if not self.unital:
            raise ValueError("counital coproduct needs the unital wrapper")
        tensor = target or TensorSquare(self)
        acc = self.coproduct(x, tensor)
        for w, c in x.terms.items():
            acc = acc + Element(tensor, {(w, ()): c}) + Element(tensor, {((), w): c})
            if w == ():
                acc = acc - Element(tensor, {((), ()): c})
        return acc

    # -- differential --------------------------------------------------------
    def diff_word(self, word):
        """Extend the base differential as an odd derivation (this grading)."""
        if self.base is None or not self.base.differential:
            return Element(self, {})
        acc = Element(self, {})
        sign = 1
        for pos, i in enumerate(word):
            row = self.base.differential.get(self.base_names[i], {})
            for dst, coeff in row.items():
                j = self.index_of_base(dst)
                seq = word[:pos] + (j,) + word[pos + 1:]
                s, nw = self.normalize(seq)
                if nw is not None:
                    acc = acc + Element(self, {nw: Fraction(coeff) * s * sign})
            if self.gen_degrees[i] % 2:
                sign = -sign
        return acc

    def index_of_base(self, base_name):
        return self.base_names.index(base_name)

    def differential_operator(self):
        return LinearOperator(self, self, 1, self.diff_word, name="d")

    # -- symmetric-algebra extras ---------------------------------------------
    def partial_word(self, word, alpha):
        """Graded partial derivative by generator index alpha.

        Returns a dict word -> Fraction which may contain the empty word
        (the constant term); callers split off eps as needed.
        """
        out = {}
        d_alpha = self.gen_degrees[alpha]
        prefix_deg = 0
        seen = set()
        for pos, i in enumerate(word):
            if i == alpha and pos not in seen:
                sign = -1 if (d_alpha % 2) and (prefix_deg % 2) else 1
                rest = word[:pos] + word[pos + 1:]
                out[rest] = out.get(rest, Fraction(0)) + sign
            prefix_deg += self.gen_degrees[i]
        return out

    def tau_word(self, word):
        """Projection to weight one: the generator index, or None."""
        return word[0] if len(word) == 1 else None


def _sorted_with_sign(keys, degs):
    sign = 1
    for i in range(1, len(keys)):
        j = i
        while j > 0 and keys[j] < keys[j - 1]:
            if (degs[j] % 2) and (degs[j - 1] % 2):
                sign = -sign
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            degs[j - 1], degs[j] = degs[j], degs[j - 1]
            j -= 1
    return sign, keys, degs


class TensorSquare:
    """X (x) X for a space X; words are pairs of X-words."""

    def __init__(self, space):
        self.space = space
        self.name = f"{space.name}(x){space.name}"

    def degree_of(self, word):
        return self.space.degree_of(word[0]) + self.space.degree_of(word[1])

    def weight_of(self, word):
        return self.space.weight_of(word[0]) + self.space.weight_of(word[1])

    def basis(self, weight):
        out = []
        for w1 in range(1, weight):
            for a in self.space.basis(w1):
                for b in self.space.basis(weight - w1):
                    out.append((a, b))
        return out

    def repr_word(self, word):
        return f"{self.space.repr_word(word[0])}(x){self.space.repr_word(word[1])}"


def tensor_apply(op1, op2, elem, tensor=None):
    """Apply op1 (x) op2 to an element of a TensorSquare with Koszul signs.

    (op1 (x) op2)(x (x) y) = (-1)^{|op2||x|} op1(x) (x) op2(y).
    """
    src = elem.space
    tgt = tensor or src
    acc = Element(tgt, {})
    for (a, b), c in elem.terms.items():
        xa = op1.on_word(a)
        yb = op2.on_word(b)
        sign = -1 if (op2.degree % 2) and (src.space.degree_of(a) % 2) else 1
        for wa, ca in xa.terms.items():
            for wb, cb in yb.terms.items():
                key = (wa, wb)
                acc = acc + Element(tgt, {key: c * ca * cb * sign})
    return acc


# -- L-infinity structures and the Chevalley-Eilenberg codifferential -------

class LInfStructure:
    """Brackets l_k, k >= 2, on a graded space L (k = 1 is the differential).

    Brackets are stored on nondecreasing generator-index tuples in which
    even-degree generators appear at most once; values on other orderings
    follow by graded antisymmetry.  l_k has degree 2 - k.
    """

    def __init__(self, L, brackets=None):
        self.L = L
        self.brackets = {}
        for arity, table in (brackets or {}).items():
            arity = int(arity)
            if arity < 2:
                raise ValueError("stored brackets start at arity 2; arity 1 is d")
            clean = {}
            for key, value in table.items():
                idx = tuple(L.index[g] if isinstance(g, str) else g for g in key)
                degs = [L.gen_degrees[L.gen_names[i]] for i in idx]
                sign, skey, _ = antisym_sort_sign(list(idx), degs)
                skey = tuple(skey)
                for a, b in zip(skey, skey[1:]):
                    if a == b and L.gen_degrees[L.gen_names[a]] % 2 == 0:
                        raise ValueError("bracket key repeats an even generator")
                if not isinstance(value, Element):
                    value = Element(L, dict(value))
                value = value * sign
                want = sum(degs) + 2 - arity
                for w in value.terms:
                    if L.degree_of(w) != want:
                        raise ValueError(
                            f"bracket l_{arity}{key} has wrong degree: "
                            f"expected {want}, got {L.degree_of(w)}")
                if skey in clean:
                    clean[skey] = clean[skey] + value
                else:
                    clean[skey] = value
            self.brackets[arity] = {k: v for k, v in clean.items() if not v.is_zero()}

    def max_arity(self):
        return max(self.brackets, default=1)

    def is_dg_lie(self):
        return all(k <= 2 for k in self.brackets)

    def bracket(self, idx_tuple):
        """l_k on an arbitrary generator-index tuple (antisymmetric sort)."""
        arity = len(idx_tuple)
        table = self.brackets.get(arity)
        if not table:
            return Element(self.L, {})
        degs = [self.L.gen_degrees[self.L.gen_names[i]] for i in idx_tuple]
        sign, skey, _ = antisym_sort_sign(list(idx_tuple), degs)
        value = table.get(tuple(skey))
        if value is None:
            return Element(self.L, {})
        return value * sign


def ce_bracket_part(linf, ext, arity, word):
    """delta_k applied to one Wedge(L) word, summed over unshuffles.

    The sign of each unshuffle term is the suspended Koszul sign of pulling
    the chosen letters to the front times the decalage factor
    (-1)^{sum (k-i)|v_i|} evaluated on the chosen letters in order.
    """
    n = len(word)
    if n < arity:
        return Element(ext, {})
    L = linf.L
    sdegs = [ext.gen_degrees[i] for i in word]
    acc = Element(ext, {})
    for chosen in itertools.combinations(range(n), arity):
        sign = unshuffle_sign(sdegs, chosen)
        picked = tuple(word[i] for i in chosen)
        vdegs = [L.gen_degrees[L.gen_names[i]] for i in picked]
        dec = sum((arity - 1 - i) * vdegs[i] for i in range(arity))
        if dec % 2:
            sign = -sign
        value = linf.bracket(picked)
        if value.is_zero():
            continue
        rest = tuple(word[i] for i in range(n) if i not in set(chosen))
        for gen, coeff in value.terms.items():
            seq = (ext.index_of_base(gen),) + rest
            s, nw = ext.normalize(seq)
            if nw is not None:
                acc = acc + Element(ext, {nw: Fraction(coeff) * s * sign})
    return acc


def ce_bracket_part_literal(linf, ext, arity, word):
    """delta_k by the literal 1/l! * C(l, k) sum over all permutations."""
    n = len(word)
    if n < arity:
        return Element(ext, {})
    L = linf.L
    vdegs_all = [L.gen_degrees[L.gen_names[i]] for i in word]
    coeff0 = Fraction(comb(n, arity), factorial(n))
    acc = Element(ext, {})
    for perm in itertools.permutations(range(1, n + 1)):
        sign = koszul_sign(perm, vdegs_all)
        picked = tuple(word[p - 1] for p in perm[:arity])
        vdegs = [vdegs_all[p - 1] for p in perm[:arity]]
        dec = sum((arity - 1 - i) * vdegs[i] for i in range(arity))
        if dec % 2:
            sign = -sign
        value = linf.bracket(picked)
        if value.is_zero():
            continue
        rest = tuple(word[p - 1] for p in perm[arity:])
        for gen, coeff in value.terms.items():
            seq = (ext.index_of_base(gen),) + rest
            s, nw = ext.normalize(seq)
            if nw is not None:
                acc = acc + Element(ext, {nw: coeff0 * Fraction(coeff) * s * sign})
    return acc


def ce_codifferential(linf, ext, literal=False, include_d=True, include_brackets=True,
                      scale=Fraction(1)):
    """The Chevalley-Eilenberg codifferential on Wedge(L).

    ``literal`` switches the bracket parts to the permutation-sum formula
    (used by tests as an independent oracle for the unshuffle fast path).
    ``scale`` multiplies delta_k by scale^{k-1}; scale=1 is the normalisation
    in which delta_2(se ^ sf) = s[e,f].
    """
    part = ce_bracket_part_literal if literal else ce_bracket_part
    scale = Fraction(scale)

    def fn(word):
        acc = Element(ext, {})
        if include_d:
            acc = acc + ext.diff_word(word)
        if include_brackets:
            for arity in linf.brackets:
                acc = acc + part(linf, ext, arity, word) * (scale ** (arity - 1))
        return acc

    return LinearOperator(ext, ext, 1, fn, name="delta_CE")


def primitives(space, weight_bound):
    """Exact kernel of the reduced coproduct per (weight, degree) piece.

    Returns a dict (weight, degree) -> list of Elements forming a basis.
    ``space`` must expose coproduct_word (FreeCommutative) or a
    cobar-style coproduct via ``coshuffle_word`` (OmegaSpace).
    """
    copro = getattr(space, "coproduct_word", None) or space.coshuffle_word
    out = {}
    for weight in range(1, weight_bound + 1):
        by_degree = {}
        for w in space.basis(weight):
            by_degree.setdefault(space.degree_of(w), []).append(w)
        for degree, words in sorted(by_degree.items()):
            col_index = {}
            cols = []
            for w in words:
                entries = {}
                for coeff, left, right in copro(w):
                    key = (left, right)
                    entries[key] = entries.get(key, Fraction(0)) + coeff
                cols.append(entries)
                for key in entries:
                    col_index.setdefault(key, len(col_index))
            rows = [[Fraction(0)] * len(words) for _ in range(len(col_index))]
            for j, entries in enumerate(cols):
                for key, coeff in entries.items():
                    rows[col_index[key]][j] = coeff
            if not rows:
                vecs = [[Fraction(1) if i == j else Fraction(0) for j in range(len(words))]
                        for i in range(len(words))]
            else:
                vecs = nullspace(rows, len(words))
            basis = []
            for v in vecs:
                terms = {w: v[i] for i, w in enumerate(words) if v[i] != 0}
                if terms:
                    basis.append(Element(space, terms))
            if basis:
                out[(weight, degree)] = basis
    return out


def bialgebra_compat_residual(space, a, b):
    """Left minus right side of the non-(co)unital bialgebra compatibility.

    Delta(ab) - (-1)^{|a2||b1|} a1 b1 (x) a2 b2
      - [ a(x)b + (-1)^{|a2||b|} a1 b (x) a2 + a1 (x) a2 b
          + a b1 (x) b2 + (-1)^{|a||b1|} b1 (x) a b2 + (-1)^{|a||b|} b (x) a ].
    Zero exactly when the product and coproduct are compatible.
    """
    tensor = TensorSquare(space)
    ab = space.product(a, b)
    acc = space.coproduct(ab, tensor)

    def tens(x_elem, y_elem, sign=1):
        nonlocal acc
        for wx, cx in x_elem.terms.items():
            for wy, cy in y_elem.terms.items():
                acc = acc - Element(tensor, {(wx, wy): cx * cy * sign})

    for wa, ca in a.terms.items():
        da = space.degree_of(wa)
        for wb, cb in b.terms.items():
            db = space.degree_of(wb)
            ea = Element(space, {wa: ca})
            eb = Element(space, {wb: cb})
            # a (x) b and (-1)^{|a||b|} b (x) a
            tens(ea, eb)
            tens(eb, ea, sign=(-1) ** (da * db))
            # a b1 (x) b2 and (-1)^{|a||b1|} b1 (x) a b2
            for coeff, b1, b2 in space.coproduct_word(wb):
                e_b1 = Element(space, {b1: coeff * cb})
                e_b2 = Element(space, {b2: Fraction(1)})
                tens(space.product(ea, e_b1), e_b2)
                s = (-1) ** (da * space.degree_of(b1))
                tens(e_b1 * s, space.product(ea, e_b2))
            # a1 (x) a2 b and (-1)^{|a2||b|} a1 b (x) a2
            for coeff, a1, a2 in space.coproduct_word(wa):
                e_a1 = Element(space, {a1: coeff * ca})
                e_a2 = Element(space, {a2: Fraction(1)})
                tens(e_a1, space.product(e_a2, eb))
                s = (-1) ** (space.degree_of(a2) * db)
                tens(space.product(e_a1, eb) * s, e_a2)
            # - (-1)^{|a2||b1|} a1 b1 (x) a2 b2
            for c1, a1, a2 in space.coproduct_word(wa):
                for c2, b1, b2 in space.coproduct_word(wb):
                    s = (-1) ** (space.degree_of(a2) * space.degree_of(b1))
                    left = space.product(Element(space, {a1: c1 * ca}),
                                         Element(space, {b1: c2 * cb}))
                    right = space.product(Element(space, {a2: Fraction(1)}),
                                          Element(space, {b2: Fraction(1)}))
                    for wl, cl in left.terms.items():
                        for wr, cr in right.terms.items():
                            acc = acc - Element(tensor, {(wl, wr): cl * cr * s})
    return acc
