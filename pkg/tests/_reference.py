"""Standalone brute-force reference, sharing no code with the package.

Field elements are coefficient tuples modulo a fixed primitive polynomial;
sums are tallied as exponent histograms and reduced by hand to the
``1, z, ..., z^{p-2}`` basis.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

# x^3 - x + 1 (i.e. x^3 + 2x + 1) is primitive over F_3
MODULUS_3_3 = (1, 2, 0, 1)


class TinyField:
    def __init__(self, p, modulus):
        self.p = p
        self.mod = modulus
        self.n = len(modulus) - 1
        self.elements = list(product(range(p), repeat=self.n))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, n = self.p, self.n
        raw = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    raw[i + j] += x * y
        for deg in range(2 * n - 2, n - 1, -1):
            c = raw[deg] % p
            if c:
                for j in range(n + 1):
                    raw[deg - n + j] -= c * self.mod[j]
        return tuple(c % p for c in raw[:n])

    def pow(self, a, e):
        out = tuple([1] + [0] * (self.n - 1))
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def trace(self, a):
        acc = a
        y = a
        for _ in range(self.n - 1):
            y = self.pow(y, self.p)
            acc = self.add(acc, y)
        assert all(c == 0 for c in acc[1:])
        return acc[0]


def reduce_hist(p, hist):
    top = hist[p - 1]
    return tuple(h - top for h in hist[: p - 1])


def t_table(F, e1, e2):
    """{reduced exponent histogram: count} of T over every pair."""
    p = F.p
    X1 = [F.pow(x, e1) for x in F.elements]
    X2 = [F.pow(x, e2) for x in F.elements]
    tr = {a: F.trace(a) for a in F.elements}
    out = Counter()
    for a in F.elements:
        ta = [tr[F.mul(a, y)] for y in X1]
        for b in F.elements:
            hist = [0] * p
            for i, y in enumerate(X2):
                hist[(ta[i] + tr[F.mul(b, y)]) % p] += 1
            out[reduce_hist(p, hist)] += 1
    return out


def s_table(F, e1, e2):
    p = F.p
    X1 = [F.pow(x, e1) for x in F.elements]
    X2 = [F.pow(x, e2) for x in F.elements]
    tr = {a: F.trace(a) for a in F.elements}
    lin = {g: [tr[F.mul(g, x)] for x in F.elements] for g in F.elements}
    out = Counter()
    for a in F.elements:
        ta = [tr[F.mul(a, y)] for y in X1]
        for b in F.elements:
            base = [(ta[i] + tr[F.mul(b, y)]) % p for i, y in enumerate(X2)]
            for g in F.elements:
                hist = [0] * p
                for i, c in enumerate(base):
                    hist[(c + lin[g][i]) % p] += 1
                out[reduce_hist(p, hist)] += 1
    return out


def weight_table(F, exponents):
    """Hamming weights of ``(Tr(sum_i a_i pi^{lambda e_i}))_lambda`` over all coefficient tuples (t = 1)."""
    pi = tuple([0, 1] + [0] * (F.n - 2))
    order = F.p**F.n - 1
    powers = [F.pow(pi, j) for j in range(order)]
    cols = [[powers[(lam * e) % order] for e in exponents] for lam in range(order)]
    tr = {a: F.trace(a) for a in F.elements}
    out = Counter()
    for coefs in product(F.elements, repeat=len(exponents)):
        w = 0
        for col in cols:
            acc = tuple([0] * F.n)
            for c, x in zip(coefs, col):
                acc = F.add(acc, F.mul(c, x))
            w += tr[acc] != 0
        out[w] += 1
    return out


if __name__ == "__main__":
    F = TinyField(3, MODULUS_3_3)
    e1, e2 = 3**3 + 1, 3 + 1
    print("T", sorted(t_table(F, e1, e2).items()))
    print("S", sorted(s_table(F, e1, e2).items()))
    print("C1", sorted(weight_table(F, (e1, e2)).items()))
    print("C2", sorted(weight_table(F, (1, e1, e2)).items()))
