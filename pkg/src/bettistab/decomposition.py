"""Decompositions of Betti diagrams into pure diagrams.

`greedy_decompose` runs the classical elimination: repeatedly read off the
minimal-shift degree sequence, subtract the largest multiple of its pure
diagram that keeps the residual nonnegative, and record the weight.  Each
step zeroes at least one support position, so the loop terminates.

The polytope of all decompositions fixes a candidate list of degree
sequences and collects every nonnegative weight vector w with A w = b, where
column c of A holds the pure diagram values of candidate c at the support
positions of the source diagram.  Because every candidate is normalized to
1 at its first position, the (0, 0) row forces sum(w) = beta_{0,0} and the
polytope is bounded.  Vertices are enumerated exactly as basic feasible
solutions over column subsets of size rank(A).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

from .diagram import BettiDiagram, pure_diagram, validate_cyclic
from .errors import ConeError, InputError
from .exact_arith import format_rational, solve_exact, matrix_rank


@dataclass(frozen=True)
class Decomposition:
    """Weighted pure diagrams summing exactly to a source diagram."""

    terms: tuple  # of (weight: Fraction, degrees: tuple[int, ...])

    def weight_for(self, degrees) -> Fraction:
        d = tuple(degrees)
        return next((w for w, s in self.terms if s == d), Fraction(0))

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"weight": format_rational(w), "degrees": list(d)}
                for w, d in self.terms
            ]
        }


def greedy_decompose(diagram: BettiDiagram) -> Decomposition:
    """Decompose by minimal-shift elimination; fails off the cone."""
    if diagram.is_zero():
        raise InputError("cannot decompose the zero diagram")
    entries = {pos: v for pos, v in diagram.items()}
    terms = []
    max_steps = len(entries)
    for _ in range(max_steps + 1):
        if not entries:
            return Decomposition(tuple(terms))
        columns = sorted({i for i, _ in entries})
        if columns != list(range(len(columns))):
            raise ConeError(
                f"column gap at {set(range(max(columns) + 1)) - set(columns)}: "
                "diagram not in the cone of pure diagrams"
            )
        degrees = tuple(
            min(j for (i2, j) in entries if i2 == i) for i in columns
        )
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise ConeError(
                f"minimal shifts {degrees} not strictly increasing: "
                "diagram not in the cone of pure diagrams"
            )
        pure = pure_diagram(degrees)
        weight = min(
            entries[(i, d)] / v for i, (d, v) in enumerate(zip(degrees, pure.values))
        )
        for i, (d, v) in enumerate(zip(degrees, pure.values)):
            residual = entries[(i, d)] - weight * v
            if residual < 0:
                raise ConeError("negative residual: diagram not in the cone")
            if residual == 0:
                del entries[(i, d)]
            else:
                entries[(i, d)] = residual
        terms.append((weight, degrees))
    raise ConeError("elimination did not terminate: diagram not in the cone")


def verify_decomposition(diagram: BettiDiagram, weights, candidates) -> bool:
    """Exact check that sum(w_c * pure(candidates[c])) equals the diagram."""
    if len(weights) != len(candidates):
        raise InputError("weights and candidates differ in length")
    total = {}
    for w, degrees in zip(weights, candidates):
        w = Fraction(w)
        if w < 0:
            return False
        if w == 0:
            continue
        for i, (d, v) in enumerate(zip(degrees, pure_diagram(degrees).values)):
            key = (i, d)
            total[key] = total.get(key, Fraction(0)) + w * v
    return {k: v for k, v in total.items() if v} == dict(diagram.items())


def candidate_degree_sequences(diagram: BettiDiagram) -> list:
    """All sequences 0 = d_0 < ... < d_s, s >= 1, with (i, d_i) in the support.

    Nonnegative weights and entries force the support of any contributing
    pure diagram into the support of the source, so these chains exhaust the
    possible candidates for a cyclic quotient.
    """
    if not validate_cyclic(diagram):
        raise InputError("candidate enumeration needs a cyclic-quotient diagram")
    by_column = {}
    for i, j in diagram.support():
        by_column.setdefault(i, []).append(j)
    out = []

    def extend(chain):
        level = len(chain)
        for j in by_column.get(level, []):
            if j > chain[-1]:
                longer = chain + (j,)
                out.append(longer)
                extend(longer)

    extend((0,))
    return sorted(out)


@dataclass(frozen=True)
class DecompositionPolytope:
    """Exact system {A w = b, w >= 0} over candidate pure diagrams."""

    candidates: tuple  # degree sequences, lexicographically sorted
    support: tuple  # row labels: the source diagram's support positions
    matrix: tuple  # rows of Fractions, one per support position
    rhs: tuple
    rank: int
    vertices: tuple | None = None

    @property
    def dimension(self) -> int:
        return len(self.candidates) - self.rank

    def to_json_dict(self) -> dict:
        if self.vertices is None:
            raise InputError("vertices not enumerated")
        return {
            "candidates": [list(c) for c in self.candidates],
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
            "rank": self.rank,
            "dimension": self.dimension,
        }


def build_polytope(diagram: BettiDiagram, candidates) -> DecompositionPolytope:
    """Set up the equality system; vertices stay unset until enumerated."""
    cands = sorted({tuple(c) for c in candidates})
    if not cands:
        raise InputError("no candidate degree sequences")
    support = diagram.support()
    values = {c: pure_diagram(c) for c in cands}
    matrix = []
    for pos in support:
        i, j = pos
        row = []
        for c in cands:
            v = Fraction(0)
            if i < len(c) and c[i] == j:
                v = values[c].values[i]
            row.append(v)
        matrix.append(tuple(row))
    rhs = tuple(diagram.get(i, j) for i, j in support)
    return DecompositionPolytope(
        candidates=tuple(cands),
        support=support,
        matrix=tuple(matrix),
        rhs=rhs,
        rank=matrix_rank([list(r) for r in matrix]),
    )


def enumerate_vertices(polytope: DecompositionPolytope) -> DecompositionPolytope:
    """All vertices of {w >= 0 : A w = b} as basic feasible solutions.

    Scans column subsets of size rank(A); a subset contributes when its
    columns are independent and the restricted system is consistent with a
    nonnegative solution.  Returns an empty vertex list iff infeasible.
    """
    m = len(polytope.candidates)
    r = polytope.rank
    found = set()
    if r == 0:
        if all(x == 0 for x in polytope.rhs):
            found.add(tuple(Fraction(0) for _ in range(m)))
    for subset in combinations(range(m), r):
        sub = [[row[c] for c in subset] for row in polytope.matrix]
        solution, nullspace = solve_exact(sub, list(polytope.rhs))
        if solution is None or nullspace:
            continue
        if any(x < 0 for x in solution):
            continue
        full = [Fraction(0)] * m
        for c, x in zip(subset, solution):
            full[c] = x
        found.add(tuple(full))
    return replace(polytope, vertices=tuple(sorted(found)))


def prune(polytope: DecompositionPolytope) -> DecompositionPolytope:
    """Drop coordinates that vanish at every vertex; reindex everything.

    Valid because the polytope is bounded, hence the hull of its vertices.
    Idempotent; the vertex set only changes by coordinate projection.  A
    polytope with no vertices is returned unchanged (nothing to prune
    against).
    """
    if polytope.vertices is None:
        raise InputError("vertices not enumerated")
    if not polytope.vertices:
        return polytope
    m = len(polytope.candidates)
    keep = [c for c in range(m) if any(v[c] != 0 for v in polytope.vertices)]
    if len(keep) == m:
        return polytope
    matrix = tuple(tuple(row[c] for c in keep) for row in polytope.matrix)
    return DecompositionPolytope(
        candidates=tuple(polytope.candidates[c] for c in keep),
        support=polytope.support,
        matrix=matrix,
        rhs=polytope.rhs,
        rank=matrix_rank([list(r) for r in matrix]),
        vertices=tuple(sorted(tuple(v[c] for c in keep) for v in polytope.vertices)),
    )
