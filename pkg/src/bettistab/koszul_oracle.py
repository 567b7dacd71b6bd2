"""Brute-force multigraded Betti numbers via Koszul strand homology.

For a monomial ideal I in n variables and a multidegree a, the strand of
the Koszul complex tensored with S/I has, in homological degree i, one
basis element per subset sigma of {1..n} with |sigma| = i such that
a - e_sigma is nonnegative and x^(a - e_sigma) lies outside I (the quotient
has a monomial basis, so each summand is either one-dimensional or zero).
The differential sends sigma to the signed sum of its facets that survive
the same test:

    d(sigma) = sum_{l in sigma} (-1)^{#{t in sigma : t < l}} (sigma - {l})

All matrix entries are -1, 0, or +1 and d(d(x)) = 0.  The homology dimension
in degree i equals the multigraded Betti number of the quotient,

    dim H_i = nullity(d_i) - rank(d_{i+1}) = beta_{i,a}(S/I),

computed here by exact integer rank.  Aggregating dim H_i into (i, |a|) over
all candidate multidegrees yields the graded Betti diagram.  Candidates are
the exponent vectors bounded componentwise by the lcm of the generators
(Betti multidegrees of a monomial ideal lie in its lcm lattice); a cheap
necessary condition prunes further: every positive coordinate of a must be
attained by some generator dividing x^a.  The `use_lcm_filter` flag exists
so audits can rerun without the pruning.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product

from .diagram import BettiDiagram
from .errors import InputError
from .exact_arith import matrix_rank
from .monomial_ideal import MonomialIdeal, monomial_divides


def _strand_bases(ideal: MonomialIdeal, a):
    """Per homological degree, the surviving subsets sigma (sorted tuples)."""
    n = ideal.num_vars
    outside = {}

    def survives(b):
        if b not in outside:
            outside[b] = not ideal.contains(b)
        return outside[b]

    bases = []
    for i in range(n + 1):
        level = []
        for sigma in combinations(range(n), i):
            b = list(a)
            ok = True
            for t in sigma:
                b[t] -= 1
                if b[t] < 0:
                    ok = False
                    break
            if ok and survives(tuple(b)):
                level.append(sigma)
        bases.append(level)
    return bases


def _boundary_matrix(target, source):
    """Matrix of the differential from `source` (columns) to `target` (rows)."""
    index = {sigma: r for r, sigma in enumerate(target)}
    rows = [[0] * len(source) for _ in target]
    for c, sigma in enumerate(source):
        for pos, l in enumerate(sigma):
            face = sigma[:pos] + sigma[pos + 1 :]
            r = index.get(face)
            if r is not None:
                rows[r][c] = -1 if pos % 2 else 1
    return rows


def strand_homology(ideal: MonomialIdeal, a) -> tuple:
    """Homology dimensions (h_0, ..., h_n) of the strand in multidegree a."""
    a = tuple(int(x) for x in a)
    if len(a) != ideal.num_vars:
        raise InputError("multidegree length does not match num_vars")
    if any(x < 0 for x in a):
        raise InputError("multidegree must be componentwise nonnegative")
    bases = _strand_bases(ideal, a)
    n = ideal.num_vars
    ranks = [0] * (n + 2)
    for i in range(1, n + 1):
        if bases[i] and bases[i - 1]:
            ranks[i] = matrix_rank(_boundary_matrix(bases[i - 1], bases[i]))
    return tuple(len(bases[i]) - ranks[i] - ranks[i + 1] for i in range(n + 1))


def _attained_everywhere(ideal: MonomialIdeal, a) -> bool:
    """Every positive coordinate of a is hit exactly by a dividing generator."""
    for t, at in enumerate(a):
        if at == 0:
            continue
        if not any(g[t] == at and monomial_divides(g, a) for g in ideal.generators):
            return False
    return True


def betti_oracle(
    ideal: MonomialIdeal,
    degree_bound: int | None = None,
    use_lcm_filter: bool = True,
    threads: int = 1,
) -> BettiDiagram:
    """Graded Betti diagram of S/I, complete up to the degree bound.

    The default bound (total degree of the generators' lcm) never truncates,
    because every Betti multidegree divides that lcm.  A smaller explicit
    bound silently yields a diagram complete only up to it.
    """
    cap = ideal.exponent_lcm()
    bound = sum(cap) if degree_bound is None else int(degree_bound)

    candidates = [
        a
        for a in product(*(range(c + 1) for c in cap))
        if sum(a) <= bound and (not use_lcm_filter or _attained_everywhere(ideal, a))
    ]
    candidates.sort()

    def job(a):
        return a, strand_homology(ideal, a)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, candidates))
    else:
        results = [job(a) for a in candidates]

    totals = {}
    for a, hs in results:
        d = sum(a)
        for i, h in enumerate(hs):
            if h:
                totals[(i, d)] = totals.get((i, d), 0) + h
    return BettiDiagram(totals)
