"""Dev scratch: pin the slot-sign parities of nu, eps, d_eps on Omega_u."""
import itertools
from fractions import Fraction

from koszul.spaces import GradedSpace, Element, LinearOperator
from koszul.free_objects import LInfStructure
from koszul.gauss_manin import GaussManin


def run(linf, par_nu, par_eps, par_deps, K=1, N=2):
    gm = GaussManin(linf, u_bound=K, weight_bound=N)
    U, O, E = gm.U, gm.O, gm.E

    def slot_sign(letters, j, shift):
        total = sum(E.degree_of(a) + shift for a in letters[:j])
        return -1 if total % 2 else 1

    def extension(letter_op, shift):
        def fn(word):
            letters, k = word
            acc = Element(U, {})
            for j in range(1, len(letters) + 1):
                out = letter_op.on_word(letters[j - 1])
                if out.is_zero():
                    continue
                s = slot_sign(letters, j - 1, shift)
                for a, c in out.terms.items():
                    acc = acc + Element(U, {(letters[:j - 1] + (a,) + letters[j:], k): c * s})
            return acc
        return fn

    eps_op = LinearOperator(U, U, 1, extension(gm.eps_letter, par_eps), name="eps")
    deps_op = LinearOperator(U, U, -1, extension(gm.d_eps_letter, par_deps), name="deps")

    def nu_fn(word):
        letters, k = word
        if k + 1 > U.u_bound:
            return Element(U, {})
        acc = Element(U, {})
        for j in range(1, len(letters) + 1):
            s = slot_sign(letters, j - 1, par_nu)
            max_parts = E.weight_of(letters[j - 1])
            for ell in range(1, max_parts + 1):
                for coeff, parts in gm.iterated_coproduct(letters[j - 1], ell):
                    values = [gm.d_eps_letter.on_word(p) for p in parts]
                    if any(v.is_zero() for v in values):
                        continue
                    combos = [(Fraction(1), ())]
                    for v in values:
                        combos = [(c * c2, ls + (w2,)) for c, ls in combos
                                  for w2, c2 in v.terms.items()]
                    for c, ls in combos:
                        acc = acc + Element(
                            U, {(letters[:j - 1] + ls + letters[j:], k + 1): coeff * c * s})
        return acc

    def nu1_fn(word):
        letters, k = word
        if k + 1 > U.u_bound:
            return Element(U, {})
        acc = Element(U, {})
        for j in range(1, len(letters) + 1):
            s = slot_sign(letters, j - 1, par_nu)
            out = gm.d_eps_letter.on_word(letters[j - 1])
            for a, c in out.terms.items():
                acc = acc + Element(U, {(letters[:j - 1] + (a,) + letters[j:], k + 1): c * s})
        return acc

    nu = LinearOperator(U, U, 1, nu_fn, name="nu")
    nu1 = LinearOperator(U, U, 1, nu1_fn, name="nu1")
    delta_prime = gm.delta_Omega + gm.delta_1 + nu1
    delta_full = LinearOperator(U, U, 1, lambda w: gm.delta_Omega.on_word(w)
                                + gm.delta_1.on_word(w) + gm.mu.on_word(w) + nu.on_word(w))
    xi_eps = LinearOperator(U, U, -1,
                            lambda w: gm.xi.on_word(w) + eps_op(gm.du.on_word(w)))

    words = gm.check_words(N)
    # (i) delta_full squares to zero
    for w in words:
        if not delta_full(delta_full.on_word(w)).is_zero():
            return f"d_full^2 at {U.repr_word(w)}"
    # (ii) xi_eps anticommutator
    for w in words:
        lhs = delta_prime(xi_eps.on_word(w)) + xi_eps(delta_prime.on_word(w))
        udu = U.u_times(gm.du.on_word(w))
        rhs = gm.rho(udu + Element(U, {w: 1})) + eps_op(deps_op.on_word(w)) - gm.lam.on_word(w)
        if not (lhs - rhs).is_zero():
            return f"xi_eps identity at {U.repr_word(w)}"
    # (iii) homotopy identity with the implied h_eps
    def X_inv(elem, nfactors):
        blocks = {}
        for (w, k), c in elem.terms.items():
            blocks.setdefault((U.weight_of((w, k)), k), Element(U, {}))
            blocks[(U.weight_of((w, k)), k)] += Element(U, {(w, k): c})
        acc = Element(U, {})
        for (weight, k), v in blocks.items():
            t_v = eps_op(deps_op(v))
            v1 = t_v * Fraction(1, weight)
            v0 = v - v1
            base = weight * (k + 1)
            for part, eig in ((v0, base), (v1, base + weight)):
                if part.is_zero():
                    continue
                denom = Fraction(1)
                for r in range(nfactors):
                    if eig - r == 0:
                        return None
                    denom *= eig - r
                acc = acc + part * (Fraction(1) / denom)
        return acc

    def h_eps_word(word):
        cur = xi_eps.on_word(word)
        acc = Element(U, {})
        j = 0
        while not cur.is_zero():
            if j > len(word[0]) + 2:
                return None
            nxt = X_inv(cur, j + 1)
            if nxt is None:
                return None
            acc = acc + nxt
            cur = gm.lam(cur) - cur * j
            j += 1
        return acc

    h = LinearOperator(U, U, -1, lambda w: h_eps_word(w))
    for w in words:
        hw = h.on_word(w)
        if hw is None:
            return f"h singular at {U.repr_word(w)}"
        dh = delta_prime(hw) + h(delta_prime.on_word(w))
        one_minus = Element(U, {w: 1}) - gm.p_eps.on_word(w)
        if not (dh - one_minus).is_zero():
            return f"homotopy at {U.repr_word(w)}"
    return None


L2 = GradedSpace("ab2", [("p", 0), ("q", 0)])
ab2 = LInfStructure(L2, {})
Lm = GradedSpace("mix", [("p", 0), ("q", 1)])
mix = LInfStructure(Lm, {})

for par_nu, par_eps, par_deps in itertools.product([0, 1], repeat=3):
    err = run(ab2, par_nu, par_eps, par_deps)
    if err is None:
        err2 = run(mix, par_nu, par_eps, par_deps)
        tag = "OK-both" if err2 is None else f"mix-fails: {err2}"
        print(f"nu={par_nu} eps={par_eps} deps={par_deps}: ab2 OK, {tag}")
    else:
        print(f"nu={par_nu} eps={par_eps} deps={par_deps}: {err}")
