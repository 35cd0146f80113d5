"""Graded vector spaces over Q, sparse elements, and the operator calculus.

A *space* here is any object exposing

    name        : str
    degree_of(word) -> int
    weight_of(word) -> int
    basis(weight)   -> list of words
    repr_word(word) -> str

where words are hashable (tuples, strings, ...).  Elements are finite
Q-linear combinations of words; operators are degree-homogeneous maps given
by their action on words, extended linearly, with per-word memoisation.

Weight (the number of underlying generators inside a word) is the universal
truncation parameter: every operator in this package preserves or lowers
it, so all identities checked below a weight bound are exact statements.
"""

from __future__ import annotations

from fractions import Fraction


class GradedSpace:
    """A finite list of named generators with degrees and a differential.

    The differential is given generator-wise: ``differential[a][b]`` is the
    coefficient of b in d(a).  It must raise degree by exactly 1 and square
    to zero; both are checked at construction.
    """

    def __init__(self, name, generators, differential=None):
        self.name = name
        self.gen_names = [g for g, _ in generators]
        if len(set(self.gen_names)) != len(self.gen_names):
            raise ValueError("duplicate generator names")
        self.gen_degrees = {g: d for g, d in generators}
        self.index = {g: i for i, g in enumerate(self.gen_names)}
        self.differential = {}
        differential = differential or {}
        for src, row in differential.items():
            if src not in self.gen_degrees:
                raise ValueError(f"unknown generator {src!r} in differential")
            clean = {}
            for dst, coeff in row.items():
                if dst not in self.gen_degrees:
                    raise ValueError(f"unknown generator {dst!r} in differential")
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                if self.gen_degrees[dst] != self.gen_degrees[src] + 1:
                    raise ValueError(
                        f"differential entry {src!r}->{dst!r} does not raise degree by 1")
                clean[dst] = coeff
            if clean:
                self.differential[src] = clean
        self._check_d_squared()

    def _check_d_squared(self):
        for src in self.differential:
            acc = {}
            for mid, c1 in self.differential[src].items():
                for dst, c2 in self.differential.get(mid, {}).items():
                    acc[dst] = acc.get(dst, Fraction(0)) + c1 * c2
            if any(v != 0 for v in acc.values()):
                raise ValueError(f"differential does not square to zero at {src!r}")

    # -- space protocol: words are generator names ------------------------
    def degree_of(self, word):
        return self.gen_degrees[word]

    def weight_of(self, word):
        return 1

    def basis(self, weight):
        return list(self.gen_names) if weight == 1 else []

    def repr_word(self, word):
        return word

    def diff_word(self, word):
        row = self.differential.get(word, {})
        return Element(self, {g: c for g, c in row.items()})

    def zero(self):
        return Element(self, {})

    def element(self, terms):
        return Element(self, dict(terms))

    def __repr__(self):
        return f"GradedSpace({self.name})"


class Element:
    """Finite Q-linear combination of basis words of one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None):
        self.space = space
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[w] = c

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other == 0:
            return self
        if self.space is not other.space:
            raise ValueError(f"ambient mismatch: {self.space.name} vs {other.space.name}")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s == 0:
                terms.pop(w, None)
            else:
                terms[w] = s
        out = Element.__new__(Element)
        out.space, out.terms = self.space, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if scalar == 0:
            return Element(self.space, {})
        out = Element.__new__(Element)
        out.space = self.space
        out.terms = {w: c * scalar for w, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.space), frozenset(self.terms.items())))

    def coeff(self, word):
        return self.terms.get(word, Fraction(0))

    def degree(self):
        """Common degree of all words, None for 0, 'mixed' otherwise."""
        degs = {self.space.degree_of(w) for w in self.terms}
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else "mixed"

    def homogeneous_parts(self):
        parts = {}
        for w, c in self.terms.items():
            parts.setdefault(self.space.degree_of(w), {})[w] = c
        return {d: Element(self.space, t) for d, t in sorted(parts.items())}

    def map_terms(self, fn):
        """Sum fn(word) * coeff over all terms; fn returns Elements."""
        acc = None
        for w, c in self.terms.items():
            piece = fn(w) * c
            acc = piece if acc is None else acc + piece
        if acc is None:
            raise ValueError("map_terms on zero element needs a target space")
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=self.space.repr_word):
            c = self.terms[w]
            bits.append(f"{c}*{self.space.repr_word(w)}")
        return " + ".join(bits)


class LinearOperator:
    """Degree-homogeneous linear map given by its action on basis words.

    ``fn`` maps a word of the domain to an Element of the codomain; results
    are memoised per word.  weight_delta, when given, is (lo, hi) bounds on
    weight change, used only as documentation / sanity checks.
    """

    def __init__(self, domain, codomain, degree, fn, name="", weight_delta=None):
        self.domain = domain
        self.codomain = codomain
        self.degree = degree
        self.fn = fn
        self.name = name
        self.weight_delta = weight_delta
        self._cache = {}

    def on_word(self, word):
        out = self._cache.get(word)
        if out is None:
            out = self.fn(word)
            if out.space is not self.codomain:
                raise ValueError(f"operator {self.name or '?'} returned element of wrong space")
            self._cache[word] = out
        return out

    def __call__(self, x):
        if isinstance(x, Element):
            if x.space is not self.domain:
                raise ValueError(
                    f"operator {self.name or '?'}: domain {self.domain.name}, got {x.space.name}")
            acc = Element(self.codomain, {})
            for w, c in x.terms.items():
                acc = acc + self.on_word(w) * c
            return acc
        return self.on_word(x)

    def compose(self, other):
        """self after other."""
        if other.codomain is not self.domain:
            raise ValueError(
                f"cannot compose {self.name or '?'} after {other.name or '?'}: "
                f"{other.codomain.name} != {self.domain.name}")
        return LinearOperator(
            other.domain, self.codomain, self.degree + other.degree,
            lambda w: self(other.on_word(w)),
            name=f"({self.name}∘{other.name})")

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        if self.domain is not other.domain or self.codomain is not other.codomain:
            raise ValueError("operator sum needs matching spaces")
        if self.degree != other.degree:
            raise ValueError("operator sum needs matching degrees")
        return LinearOperator(
            self.domain, self.codomain, self.degree,
            lambda w: self.on_word(w) + other.on_word(w),
            name=f"({self.name}+{other.name})")

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return LinearOperator(
            self.domain, self.codomain, self.degree,
            lambda w: self.on_word(w) * scalar, name=f"({scalar}*{self.name})")

    __rmul__ = __mul__


def identity_operator(space):
    return LinearOperator(space, space, 0, lambda w: Element(space, {w: 1}), name="1")


def zero_operator(domain, codomain=None, degree=0):
    codomain = codomain or domain
    return LinearOperator(domain, codomain, degree,
                          lambda w: Element(codomain, {}), name="0")


def scalar_operator(space, scalar):
    scalar = Fraction(scalar)
    return LinearOperator(space, space, 0,
                          lambda w: Element(space, {w: scalar}), name=str(scalar))


def compose(a, b):
    """a after b, checking composability."""
    return a.compose(b)


def graded_commutator(a, b):
    """[a, b] = a b - (-1)^{|a||b|} b a."""
    sign = -1 if (a.degree % 2) and (b.degree % 2) else 1
    return a.compose(b) - (b.compose(a) * sign)


def operators_equal(a, b, words):
    """Exact equality of actions on the given words."""
    return counterexample(a, b, words) is None


def counterexample(a, b, words):
    """First word where a and b differ, or None."""
    for w in words:
        if not (a.on_word(w) - b.on_word(w)).is_zero():
            return w
    return None


# -- exact linear algebra ------------------------------------------------

def gauss_solve(rows, rhs):
    """Solve the linear system rows * x = rhs exactly over Q.

    ``rows`` is a list of lists of Fractions (possibly more rows than
    columns).  Returns one solution as a list of Fractions, or None if the
    system is inconsistent.  Free variables are set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(Fraction, r)) + [Fraction(rhs[i])] for i, r in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def nullspace(rows, n_cols):
    """Basis of the exact nullspace of the given matrix over Q."""
    m = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def matrix_rank(rows):
    """Exact rank of a matrix over Q."""
    if not rows:
        return 0
    return len(rows[0]) - len(nullspace(rows, len(rows[0])))


class SingularPieceError(ValueError):
    """Raised when an operator is not invertible on some graded piece."""

    def __init__(self, message, weight=None, degree=None):
        super().__init__(message)
        self.weight = weight
        self.degree = degree


def operator_inverse(op, weights, neumann_bound=None):
    """Exact inverse of an endomorphism on the truncated space.

    If ``neumann_bound`` is given, op is assumed to be 1 + n with n
    nilpotent under the truncation filtration and the inverse is the finite
    Neumann series, evaluated lazily per word.  Otherwise the inverse is
    computed by exact linear solves on each (weight, degree) piece spanned
    by the enumerated basis; a singular piece raises SingularPieceError
    naming it.
    """
    space = op.domain
    if space is not op.codomain or op.degree != 0:
        raise ValueError("operator_inverse needs a degree-0 endomorphism")

    if neumann_bound is not None:
        n = op - identity_operator(space)

        def apply_inverse(word):
            acc = Element(space, {word: 1})
            cur = acc
            for _ in range(neumann_bound + 1):
                cur = n(cur) * -1
                if cur.is_zero():
                    return acc
                acc = acc + cur
            raise SingularPieceError(
                f"Neumann series for {op.name or 'operator'} did not terminate "
                f"within {neumann_bound} steps")

        return LinearOperator(space, space, 0, apply_inverse, name=f"({op.name})^-1")

    solvers = {}

    def block_solver(weight, degree):
        key = (weight, degree)
        if key not in solvers:
            words = [w for w in space.basis(weight) if space.degree_of(w) == degree]
            index = {w: i for i, w in enumerate(words)}
            cols = []
            for w in words:
                img = op.on_word(w)
                col = [Fraction(0)] * len(words)
                for ww, c in img.terms.items():
                    if ww not in index:
                        raise SingularPieceError(
                            f"operator leaves the (weight={weight}, degree={degree}) piece",
                            weight, degree)
                    col[index[ww]] = c
                cols.append(col)
            rows = [[cols[j][i] for j in range(len(words))] for i in range(len(words))]
            solvers[key] = (words, index, rows)
        return solvers[key]

    def apply_inverse(word):
        weight = space.weight_of(word)
        degree = space.degree_of(word)
        words, index, rows = block_solver(weight, degree)
        rhs = [Fraction(0)] * len(words)
        rhs[index[word]] = Fraction(1)
        sol = gauss_solve(rows, rhs)
        if sol is None:
            raise SingularPieceError(
                f"{op.name or 'operator'} singular on (weight={weight}, degree={degree})",
                weight, degree)
        # verify invertibility (gauss_solve zero-fills free variables)
        check = Element(space, {w: sol[i] for i, w in enumerate(words)})
        if not (op(check) - Element(space, {word: 1})).is_zero():
            raise SingularPieceError(
                f"{op.name or 'operator'} singular on (weight={weight}, degree={degree})",
                weight, degree)
        return check

    return LinearOperator(space, space, 0, apply_inverse, name=f"({op.name})^-1")


def one_plus_inverse(x_op, bound):
    """(1 + x)^{-1} for x nilpotent under the truncation filtration."""
    space = x_op.domain

    def apply_inverse(elem_or_word):
        if isinstance(elem_or_word, Element):
            start = elem_or_word
        else:
            start = Element(space, {elem_or_word: 1})
        acc = start
        cur = start
        for _ in range(bound + 1):
            cur = x_op(cur) * -1
            if cur.is_zero():
                return acc
            acc = acc + cur
        raise SingularPieceError(
            f"Neumann series for 1+{x_op.name or 'x'} did not terminate within {bound} steps")

    return LinearOperator(space, space, 0,
                          lambda w: apply_inverse(w), name=f"(1+{x_op.name})^-1")
