"""Independent reference implementations used only by the tests.

Nothing here imports the package's linear algebra or Lie matrices, so a
shared bug cannot make both sides agree.
"""
from fractions import Fraction
from itertools import combinations

import sympy
from hypothesis import strategies as st

from biconn import clifford


def word_product(word, signs):
    """Normal form of e_{w0} e_{w1} ... by adjacent swaps, as (sign, blade).

    ``signs[a]`` is e_a^2.  Deliberately naive: bubble sort with a sign flip
    per swap and contraction of equal neighbours.
    """
    word = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            if word[i] == word[i + 1]:
                sign *= signs[word[i]]
                del word[i:i + 2]
                changed = True
            elif word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
                i += 1
            else:
                i += 1
    return sign, tuple(word)


def dense_intertwiners(n):
    """Intertwiners W -> so(n) from a dense system over all so(n) generators.

    The algebra is modelled in Cl(n, 1) by the bivectors e_i e_j; both the
    adjoint action and the vector action are Clifford commutators.  The
    unknown psi[p][k] (bivector p, vector index k) sits in column p * n + k,
    matching the package's flattening.  Returns sympy column vectors.
    """
    sig = clifford.Signature.lorentzian(n)
    pairs = list(combinations(range(1, n + 1), 2))
    e = [clifford.basis_vector(sig, a) for a in range(n + 1)]
    biv = [clifford.blade(sig, i, j) for i, j in pairs]
    ncols = len(pairs) * n
    rows = []
    for X in biv:
        for k in range(1, n + 1):
            # vector action: [X, e_k] = sum_l act[l] e_l
            act = clifford.commutator(X, e[k])
            act = {l: act.coefficient((l,)) for l in range(1, n + 1)}
            ad = [clifford.commutator(X, B) for B in biv]
            for q, target in enumerate(pairs):
                row = [0] * ncols
                # [X, psi(e_k)]_q = sum_p psi[p][k] [X, B_p]_q
                for p in range(len(pairs)):
                    row[p * n + (k - 1)] += ad[p].coefficient(target)
                # psi([X, e_k])_q = sum_l act[l] psi[q][l]
                for l, c in act.items():
                    row[q * n + (l - 1)] -= c
                rows.append([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                             else sympy.Integer(c) for c in row])
    return sympy.Matrix(rows).nullspace()


def same_span(a, b):
    """True iff the two lists of vectors span the same space."""
    if not a and not b:
        return True
    A = sympy.Matrix.hstack(*a) if a else None
    B = sympy.Matrix.hstack(*b) if b else None
    if A is None or B is None:
        return False
    return A.rank() == B.rank() == sympy.Matrix.hstack(A, B).rank()


def to_sympy(vec):
    return sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in map(Fraction, vec)])


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
