"""Independent oracle for the exact self-duality searches.

Enumerates every ray -> facet bijection of a small polyhedral cone with sympy
and classifies the linear system G r_i = mu_i n_sigma(i) for symmetric G
(strong) or arbitrary T (weak). Run it to regenerate the frozen constants in
tests/unit/test_axioms.cpp:

    python3 tests/oracles/self_duality_oracle.py
"""

import itertools
from collections import Counter

import sympy as sp

CONES = {
    "square": [(1, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1)],
    "pentagon": [(2, 0, 1), (1, 2, 1), (-1, 2, 1), (-2, 0, 1), (0, -2, 1)],
    "hexagon": [(1, 0, 1), (1, 1, 1), (0, 1, 1), (-1, 0, 1), (-1, -1, 1), (0, -1, 1)],
}


def facets(rays):
    d = len(rays[0])
    out = []
    for subset in itertools.combinations(rays, d - 1):
        ns = sp.Matrix(subset).nullspace()
        if len(ns) != 1:
            continue
        n = ns[0]
        vals = [(sp.Matrix([r]) * n)[0] for r in rays]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            n = -n
        else:
            continue
        n = n / sp.gcd(list(n))
        if all(n != f for f in out):
            out.append(n)
    return out


def classify(rays, normals, sigma, symmetric):
    d = len(rays[0])
    m = len(rays)
    if symmetric:
        syms = {}
        entries = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                s = sp.Symbol(f"g{i}{j}")
                entries[i][j] = entries[j][i] = s
                syms[(i, j)] = s
        t = sp.Matrix(entries)
        tvars = list(syms.values())
    else:
        tvars = sp.symbols(f"t0:{d * d}")
        t = sp.Matrix(d, d, tvars)
    mus = sp.symbols(f"mu0:{m}")
    eqs = []
    for i, r in enumerate(rays):
        eqs.extend(list(t * sp.Matrix(r) - mus[i] * normals[sigma[i]]))
    unknowns = list(tvars) + list(mus)
    a, _ = sp.linear_eq_to_matrix(eqs, unknowns)
    ns = a.nullspace()
    if not ns:
        return "no-solution", 0, None
    if len(ns) > 1:
        return "multi", len(ns), None
    v = ns[0]
    mu = v[len(tvars):]
    if all(x < 0 for x in mu):
        v = -v
        mu = v[len(tvars):]
    if not all(x > 0 for x in mu):
        return "sign-infeasible", 1, None
    tm = t.subs(dict(zip(tvars, v[: len(tvars)])))
    if symmetric:
        ok = all(tm[:k, :k].det() > 0 for k in range(1, d + 1))
        return ("found" if ok else "indefinite"), 1, tm
    return ("found" if tm.det() != 0 else "singular"), 1, tm


def run(name, symmetric):
    rays = [tuple(r) for r in CONES[name]]
    normals = facets(rays)
    counts = Counter()
    dims = Counter()
    maps = []
    for sigma in itertools.permutations(range(len(normals))):
        outcome, k, tm = classify(rays, normals, sigma, symmetric)
        counts[outcome] += 1
        dims[k] += 1
        if tm is not None and outcome == "found":
            maps.append(tm)
    return len(normals), counts, dims, maps


if __name__ == "__main__":
    for name in CONES:
        for symmetric in (True, False):
            nf, counts, dims, maps = run(name, symmetric)
            kind = "spd" if symmetric else "weak"
            print(f"{name} {kind}: facets={nf} outcomes={dict(sorted(counts.items()))} "
                  f"solution_dims={dict(sorted(dims.items()))}")
            if maps:
                print(f"  first map: {maps[0].tolist()}")
