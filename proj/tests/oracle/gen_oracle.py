#!/usr/bin/env python3
"""Independent reference values for the test suite, written to tests/data/oracle.json.

Pure Python: forms are enumerated and composed directly, series are expanded
from their definitions, constants come from mpmath at 40 digits.
"""
import json
import math
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40


def reduced_forms(D, primitive_only=True):
    """(a, b, c) reduced with b^2 - 4ac = -D."""
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if primitive_only and math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def hurwitz12(n):
    if n == 0 or n % 4 in (1, 2):
        return 0
    s = 0
    for a, b, c in reduced_forms(n, primitive_only=False):
        if a == b == c:
            s += 4
        elif b == 0 and a == c:
            s += 6
        else:
            s += 12
    return s


def is_fundamental(D):
    def squarefree(m):
        p = 2
        while p * p <= m:
            if m % (p * p) == 0:
                return False
            p += 1
        return True

    if D % 4 == 3:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (1, 2) and squarefree(m)
    return False


def reduce_form(f):
    a, b, c = f
    while True:
        if b > a or b <= -a:
            # bring b into (-a, a]
            k = (a - b) // (2 * a)
            b2 = b + 2 * a * k
            c = (b2 * b2 + 4 * a * c - b * b) // (4 * a)
            b = b2
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return (a, b, c)


def compose(f, g):
    """Dirichlet composition through united forms."""
    a1, b1, c1 = f
    a2, b2, c2 = g
    D = b1 * b1 - 4 * a1 * c1
    beta = (b1 + b2) // 2
    e, x, y = egcd3(a1, a2, beta)
    # x a1 + y a2 + z beta = e
    z = y[1]
    x, y = x, y[0]
    A = a1 * a2 // (e * e)
    B = (x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + D) // 2) // e
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return reduce_form((A, B, C))


def egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = egcd(b, a % b)
    return g, y, x - (a // b) * y


def egcd3(a, b, c):
    g1, u1, v1 = egcd(a, b)
    g, u2, v2 = egcd(g1, c)
    return g, u2 * u1, (u2 * v1, v2)


def group_structure(D):
    forms = reduced_forms(D)
    h = len(forms)
    ident = reduce_form((1, D % 2, (D % 2 + D) // 4))
    order = {}
    for f in forms:
        k, g = 1, f
        while g != ident:
            g = compose(g, f)
            k += 1
        order[f] = k
    # |G[m]| = number of elements with order dividing m
    divs = []
    m = h
    primes = []
    p = 2
    while p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    per_prime = {}
    for p in primes:
        e = 0
        while h % p ** (e + 1) == 0:
            e += 1
        tors = [sum(1 for o in order.values() if (p ** t) % o == 0 and all(o % q for q in primes if q != p))
                for t in range(e + 1)]
        # number of cyclic factors of order >= p^t is log_p(|G[p^t]| / |G[p^(t-1)]|)
        ranks = [round(math.log(tors[t] // tors[t - 1], p)) for t in range(1, e + 1)]
        exps = []
        for t in range(1, e + 1):
            nxt = ranks[t] if t < e else 0
            exps += [t] * (ranks[t - 1] - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    k = max((len(v) for v in per_prime.values()), default=0)
    chain = []
    for i in range(k):
        d = 1
        for p, v in per_prime.items():
            if i < len(v):
                d *= p ** v[i]
        chain.append(d)
    chain.sort()
    assert math.prod(chain) == h
    return h, chain


def series(kind, n):
    out = [0] * n
    if kind == "theta3":
        out[0] = 1
        k = 1
        while k * k < n:
            out[k * k] += 2
            k += 1
    elif kind in ("nabla", "nabla_q2"):
        step = 2 if kind == "nabla_q2" else 1
        j = 0
        while step * j * (j + 1) // 2 < n:
            out[step * j * (j + 1) // 2] += 1
            j += 1
    return out


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def main(path):
    data = {}
    n3 = 2000
    r3 = [0] * n3
    lim = int(math.isqrt(n3)) + 1
    for x in range(-lim, lim + 1):
        for y in range(-lim, lim + 1):
            for z in range(-lim, lim + 1):
                s = x * x + y * y + z * z
                if s < n3:
                    r3[s] += 1
    data["theta3_cubed"] = r3

    L = 400
    base = {k: series(k, L) for k in ("theta3", "nabla", "nabla_q2")}
    sq = {k + "_sq": mul(v, v, L) for k, v in base.items()}
    data["series"] = {**base, **sq}
    data["products"] = {
        "8mod16": mul(sq["nabla_q2_sq"], base["theta3"], L),
        "12mod16": mul(sq["theta3_sq"], base["nabla_q2"], L),
        "5mod8": mul(sq["nabla_sq"], base["nabla"], L),
    }

    H = 20000
    data["class_numbers"] = {str(D): len(reduced_forms(D)) for D in range(3, H) if D % 4 in (0, 3)}
    data["hurwitz12"] = [hurwitz12(n) for n in range(5000)]
    fund = [D for D in range(3, 100001) if is_fundamental(D)]
    data["fundamental_count"] = {str(x): sum(1 for D in fund if D < x) for x in (8, 1000, 10000, 100000)}

    groups = {}
    for D in fund:
        if D >= 6000:
            break
        h, chain = group_structure(D)
        groups[str(D)] = chain
    data["groups"] = groups
    # a few larger non-fundamental and fundamental groups
    data["groups_extra"] = {str(D): group_structure(D)[1] for D in (7392, 5280, 3299, 4027, 11199, 12451, 15188)}

    eg = mp.exp(mp.euler)
    def lw(D):
        h = len(reduced_forms(D))
        Lv = 2 * mp.pi * h / (2 * mp.sqrt(D))
        c1 = (8 if D % 2 == 0 else 12) * eg / mp.pi ** 2
        c2 = (1 if D % 2 == 0 else 2) * eg
        ll = mp.log(mp.log(D))
        return [float(Lv), float(Lv / (c2 * ll)), float(Lv * c1 * ll)]
    data["littlewood"] = {str(D): lw(D) for D in (8, 232, 7, 163, 15)}

    c_inf = mp.nprod(lambda i: mp.zeta(i), [2, mp.inf])
    eta_inf = lambda l: mp.qp(mp.mpf(1) / l, mp.mpf(1) / l)
    eta = lambda l, k: mp.fprod(1 - mp.mpf(l) ** -i for i in range(1, k + 1))
    data["constants"] = {
        "c_infinity": float(c_inf),
        "pr_cyclic": float(315 * mp.zeta(3) / (6 * mp.pi ** 4 * eta_inf(2) * c_inf)),
        "eta_infinity": {str(l): float(eta_inf(l)) for l in (2, 3, 5, 7, 11, 13)},
        "pr_rank": {f"{l}_{r}": float(eta_inf(l) / (mp.mpf(l) ** (r * r) * eta(l, r) ** 2))
                    for l in (3, 5, 7, 11, 13) for r in (2, 3)},
    }

    def bound(N, even):
        a, b = (mp.mpf(1) / 4, mp.mpf(5) / 4 - mp.log(3) / 2) if even else (mp.mpf(1) / 2, mp.mpf(5) / 2 - mp.log(6))
        return int(mp.floor(mp.mpf(1209) / 275 / mp.pi * mp.sqrt(N) * (a * mp.log(N) + b)))
    data["bounds"] = {f"{N}_{p}": bound(N, p == "even") for N in (2 ** 20, 10 ** 6, 2 ** 30) for p in ("even", "odd")}

    Path(path).write_text(json.dumps(data, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "oracle.json")
