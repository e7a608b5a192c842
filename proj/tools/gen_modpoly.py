#!/usr/bin/env python3
"""Generate classical modular polynomials Phi_l(X, Y) in the isocycles text format.

Solves Phi_l(j(q), j(q^l)) = 0 for the unknown coefficients by exact linear
algebra over Q on truncated q-expansions of j.

    python3 tools/gen_modpoly.py 5 > tests/data/phi_5.txt
"""
import sys
from fractions import Fraction


def j_series(n_terms):
    """Coefficients of q*j(q) = 1 + 744 q + ..., as a list of length n_terms."""
    sigma3 = [0] * (n_terms + 1)
    for d in range(1, n_terms + 1):
        for m in range(d, n_terms + 1, d):
            sigma3[m] += d ** 3
    e4 = [1] + [240 * sigma3[n] for n in range(1, n_terms)]

    def mul(a, b):
        out = [0] * n_terms
        for i, x in enumerate(a):
            if x == 0:
                continue
            for k in range(n_terms - i):
                out[i + k] += x * b[k]
        return out

    # prod (1 - q^n)^24
    eta = [0] * n_terms
    eta[0] = 1
    for n in range(1, n_terms):
        for _ in range(24):
            for k in range(n_terms - 1, n - 1, -1):
                eta[k] -= eta[k - n]
    # 1 / eta
    inv = [0] * n_terms
    inv[0] = 1
    for k in range(1, n_terms):
        inv[k] = -sum(eta[i] * inv[k - i] for i in range(1, k + 1))
    e4c = mul(mul(e4, e4), e4)
    return mul(e4c, inv)


def modpoly(ell):
    deg = ell + 1
    pole = ell * deg
    extra = 2 * deg * deg + 20
    n_terms = 4 * pole + 3 * deg + extra + 10
    qj = j_series(n_terms)  # j(q) = q^-1 * sum qj[k] q^k

    # Laurent series as dict exponent -> coeff, truncated at exponent <= top
    top = extra

    def laurent_from(shift_pow):
        # j(q^shift_pow)
        out = {}
        for k, c in enumerate(qj):
            e = shift_pow * (k - 1)
            if e > top + 3 * pole + 2 * deg:
                break
            out[e] = c
        return out

    def lmul(a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                if e > top + 2 * pole + 2 * deg:
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return out

    jx = laurent_from(1)
    jy = laurent_from(ell)
    px = [{0: 1}]
    py = [{0: 1}]
    for _ in range(deg):
        px.append(lmul(px[-1], jx))
        py.append(lmul(py[-1], jy))

    unknowns = [(i, k) for i in range(deg) for k in range(i + 1)]
    columns = []
    for (i, k) in unknowns:
        s = lmul(px[i], py[k])
        if i != k:
            t = lmul(px[k], py[i])
            for e, c in t.items():
                s[e] = s.get(e, 0) + c
        columns.append(s)
    # known part: X^deg + Y^deg
    rhs = {}
    for s in (px[deg], py[deg]):
        for e, c in s.items():
            rhs[e] = rhs.get(e, 0) - c
    exps = sorted(set().union(*[set(c) for c in columns]) | set(rhs))
    exps = [e for e in exps if e <= top]
    rows = [[Fraction(col.get(e, 0)) for col in columns] + [Fraction(rhs.get(e, 0))] for e in exps]
    n = len(unknowns)
    # Gaussian elimination
    r = 0
    piv_cols = []
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if r != n:
        raise SystemExit("rank deficient: %d of %d" % (r, n))
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            raise SystemExit("inconsistent system at row %d" % i)
    coeffs = {(deg, 0): 1}
    for idx, c in enumerate(piv_cols):
        v = rows[idx][n]
        assert v.denominator == 1
        if v != 0:
            coeffs[unknowns[c]] = int(v)
    return coeffs


def main():
    ell = int(sys.argv[1])
    coeffs = modpoly(ell)
    lines = ["ell=%d" % ell]
    for (i, k) in sorted(coeffs, reverse=True):
        lines.append("%d %d %d" % (i, k, coeffs[(i, k)]))
    sys.stdout.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
