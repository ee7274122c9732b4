"""Independent reference computations used by the tests.

Nothing here calls the engine's algorithms: Laurent arithmetic goes through
sympy, matchings are filtered by stack reduction, functor images are built
as dense sympy Kronecker products, and invariant factors come from gcds of
minors.
"""

from functools import lru_cache
from itertools import combinations

import sympy

a = sympy.Symbol("A")


def to_sympy(p):
    return sum((c * a ** k for k, c in p.terms()), sympy.Integer(0))


def laurent_from_sympy(expr, LaurentPoly):
    expr = sympy.expand(expr)
    terms = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        c, rest = term.as_coeff_Mul()
        k = 0 if rest == 1 else sympy.degree(rest, a) if rest.is_polynomial(a) else -sympy.degree(1 / rest, a)
        terms[int(k)] = terms.get(int(k), 0) + int(c)
    return LaurentPoly(terms)


@lru_cache(maxsize=None)
def catalan(k):
    if k == 0:
        return 1
    return sum(catalan(i) * catalan(k - 1 - i) for i in range(k))


def _perfect_matchings(points):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, p in enumerate(rest):
        for m in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield ((first, p),) + m


def noncrossing_by_stack(order, pairs):
    """A matching is planar iff scanning the boundary pushes and pops like parentheses."""
    partner = {}
    for x, y in pairs:
        partner[x], partner[y] = y, x
    stack = []
    for p in order:
        if stack and stack[-1] == partner[p]:
            stack.pop()
        else:
            stack.append(p)
    return not stack


def brute_matchings(m, n):
    """All planar m -> n matchings as frozensets of pairs (bottom 0..m-1, top m..m+n-1)."""
    points = list(range(m + n))
    order = list(range(m)) + list(range(m + n - 1, m - 1, -1))
    out = []
    for pm in _perfect_matchings(points):
        if noncrossing_by_stack(order, pm):
            out.append(frozenset(tuple(sorted(p)) for p in pm))
    return out


def count_all_perfect_matchings(k):
    return sum(1 for _ in _perfect_matchings(list(range(k))))


# ---------------------------------------------------------- dense functor


def dense_generators(B):
    """sympy matrices for id, cup, cap, x+, x- of the form B (entries in A)."""
    B = sympy.Matrix(B)
    r = B.shape[0]
    Bi = B.inv()
    cap = sympy.Matrix(1, r * r, lambda _, k: B[k // r, k % r])
    cup = sympy.Matrix(r * r, 1, lambda k, _: Bi[k // r, k % r])
    e = cup * cap
    eye = sympy.eye(r * r)
    return {
        "id": sympy.eye(r),
        "cup": cup,
        "cap": cap,
        "x+": a * eye + e / a,
        "x-": eye / a + a * e,
    }


def dense_word(B, w):
    """F(w) by kron of whole slices, multiplied in diagrammatic order."""
    gens = dense_generators(B)
    r = sympy.Matrix(B).shape[0]
    out = sympy.eye(r ** w.source)
    for s in w.slices:
        m = sympy.Matrix([[1]])
        for g in s:
            m = sympy.kronecker_product(m, gens[g.symbol])
        out = m * out
    return out.applyfunc(sympy.simplify)


def engine_matrix_to_sympy(M):
    def conv(v):
        if hasattr(v, "terms"):
            return to_sympy(v)
        if hasattr(v, "re"):
            return sympy.Rational(v.re) + sympy.I * sympy.Rational(v.im)
        return sympy.nsimplify(v)

    return sympy.Matrix(M.shape[0], M.shape[1], lambda i, j: conv(M[(i, j)]))


# ------------------------------------------------------- invariant factors


x = sympy.Symbol("x")


def invariant_factors_by_minors(rows):
    """Monic invariant factors of a rational matrix: d_k / d_(k-1), d_k = gcd of k-minors."""
    M = sympy.Matrix(rows)
    n = M.shape[0]
    C = x * sympy.eye(n) - M
    d = [sympy.Integer(1)]
    for k in range(1, n + 1):
        g = sympy.Integer(0)
        for rs in combinations(range(n), k):
            for cs in combinations(range(n), k):
                g = sympy.gcd(g, C.extract(list(rs), list(cs)).det())
                if g == 1:
                    break
            if g == 1:
                break
        d.append(sympy.Poly(g, x).monic().as_expr())
    out = []
    for k in range(1, n + 1):
        f = sympy.Poly(sympy.cancel(d[k] / d[k - 1]), x)
        if f.degree() > 0:
            out.append([sympy.Rational(c) for c in reversed(f.monic().all_coeffs())])
    return out
