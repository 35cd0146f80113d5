"""Sign bookkeeping for graded permutations, sorts and shuffles.

Every sign in this package is ultimately one of three things:

* the suspended Koszul sign of a permutation acting on sv_1 (x) ... (x) sv_n,
  which weights each inversion by (|v_i|+1)(|v_j|+1)  (``koszul_sign``);
* a plain Koszul sort/merge sign, weighting each transposition of adjacent
  symbols of degrees p, q by (-1)^{pq}  (``sort_sign``, ``merge_sign``,
  ``unshuffle_sign``);
* an antisymmetric sort sign, which additionally flips once per
  transposition  (``antisym_sort_sign``), used for multilinear brackets.

Signs are returned as plain ints (+1 or -1) so they compose cheaply with
Fraction coefficients.
"""

from __future__ import annotations


def koszul_sign(permutation, degrees):
    """Sign of the permutation acting on the suspended word sv_1 ... sv_n.

    ``permutation`` is a sequence of 1-based values: position i of the output
    carries v_{permutation[i]}.  ``degrees`` are the unsuspended degrees of
    v_1..v_n.  Each inversion pair contributes (|v_i|+1)(|v_j|+1).
    """
    n = len(permutation)
    if sorted(permutation) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {permutation!r}")
    if len(degrees) != n:
        raise ValueError("degrees and permutation must have equal length")
    total = 0
    for i in range(n):
        di = degrees[permutation[i] - 1] + 1
        for j in range(i + 1, n):
            if permutation[i] > permutation[j]:
                total += di * (degrees[permutation[j] - 1] + 1)
    return -1 if total % 2 else 1


def sort_sign(keys, degrees):
    """Stable-sort ``keys`` accumulating (-1)^{pq} per adjacent swap.

    Returns (sign, sorted_keys, sorted_degrees).  Equal keys keep their
    relative order and contribute no sign beyond the Koszul rule, so a pair
    of equal odd-degree symbols does *not* collapse here; callers decide
    whether repeats are legal.
    """
    keys = list(keys)
    degrees = list(degrees)
    sign = 1
    # insertion sort: word lengths are tiny and stability matters
    for i in range(1, len(keys)):
        j = i
        while j > 0 and keys[j] < keys[j - 1]:
            if (degrees[j] % 2) and (degrees[j - 1] % 2):
                sign = -sign
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            degrees[j - 1], degrees[j] = degrees[j], degrees[j - 1]
            j -= 1
    return sign, keys, degrees


def antisym_sort_sign(keys, degrees):
    """Like ``sort_sign`` but with an extra -1 per transposition.

    This is the sort rule for graded antisymmetric brackets:
    swapping adjacent arguments v, w costs -(-1)^{|v||w|}.
    """
    keys = list(keys)
    degrees = list(degrees)
    sign = 1
    for i in range(1, len(keys)):
        j = i
        while j > 0 and keys[j] < keys[j - 1]:
            sign = -sign
            if (degrees[j] % 2) and (degrees[j - 1] % 2):
                sign = -sign
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            degrees[j - 1], degrees[j] = degrees[j], degrees[j - 1]
            j -= 1
    return sign, keys, degrees


def merge_sign(degrees_left, keys_left, degrees_right, keys_right):
    """Koszul sign for merging two sorted runs into one sorted run.

    Counts pairs (i from left, j from right) with key_j < key_i; each pair of
    odd degrees contributes -1.  Equal keys do not cross (left wins), which
    matches the stable behaviour of ``sort_sign``.
    """
    total = 0
    for ki, di in zip(keys_left, degrees_left):
        if di % 2 == 0:
            continue
        for kj, dj in zip(keys_right, degrees_right):
            if kj < ki and dj % 2:
                total += 1
    return -1 if total % 2 else 1


def unshuffle_sign(degrees, chosen):
    """Koszul sign for pulling the ``chosen`` positions to the front.

    ``chosen`` is an increasing tuple of positions (0-based) of a word whose
    symbols have the given degrees; relative order is preserved on both
    sides.  Pairs (i not chosen, j chosen, i < j) of odd degrees each
    contribute -1.
    """
    chosen_set = set(chosen)
    total = 0
    for j in chosen:
        if degrees[j] % 2 == 0:
            continue
        for i in range(j):
            if i not in chosen_set and degrees[i] % 2:
                total += 1
    return -1 if total % 2 else 1
