"""Exact arithmetic utilities.

Everything in this package computes over the rationals, represented as
`fractions.Fraction` (always in lowest terms with positive denominator).
This module supplies the shared numeric machinery:

* `binom` -- binomial coefficients with a fixed out-of-range convention,
* `solve_exact` / `matrix_rank` -- fraction-free Gaussian elimination,
* integer polynomials as coefficient tuples (lowest degree first),
* `fit_rational_function` / `fit_polynomial` -- exact interpolation.

Serialized forms: a rational is the string "num/den" ("n" when integral);
a polynomial is its coefficient list, lowest degree first, with no trailing
zeros (the zero polynomial is the empty list).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError

Rational = Fraction


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the convention used throughout this package.

    C(a, 0) = 1 for every integer a (negative included); C(a, b) = 0 when
    b < 0 or when b > 0 and a < b; otherwise the ordinary value.
    """
    if b < 0:
        return 0
    if b == 0:
        return 1
    if a < b:
        return 0
    return math.comb(a, b)


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or a plain integer string into a Fraction."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    """Inverse of parse_rational; integers render without a denominator."""
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Exact linear algebra (fraction-free elimination)
# ---------------------------------------------------------------------------


def _integer_rows(matrix, rhs):
    """Clear denominators row by row, returning integer augmented rows."""
    rows = []
    for i, row in enumerate(matrix):
        frs = [Fraction(x) for x in row]
        frs.append(Fraction(rhs[i]) if rhs is not None else Fraction(0))
        scale = math.lcm(*(f.denominator for f in frs)) if frs else 1
        rows.append([int(f * scale) for f in frs])
    return rows


def _echelon(rows, ncols):
    """Fraction-free (Bareiss) row echelon form of integer augmented rows.

    Only the first `ncols` columns are eligible as pivots; the remaining
    columns (the right-hand side) are carried along.  Returns the list of
    pivot (row, column) pairs; `rows` is reduced in place.
    """
    m = len(rows)
    pivots = []
    r = 0
    denom = 1
    width = len(rows[0]) if rows else 0
    for c in range(ncols):
        if r >= m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, m):
            f = rows[i][c]
            for j in range(c, width):
                num = pivot * rows[i][j] - f * rows[r][j]
                q, rem = divmod(num, denom)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                rows[i][j] = q
        pivots.append((r, c))
        denom = pivot
        r += 1
    return pivots


def solve_exact(matrix, rhs=None):
    """Solve A x = b exactly over the rationals.

    Returns (particular, nullspace) where `particular` is one exact solution
    (free variables set to zero) or None when the system is inconsistent, and
    `nullspace` is a basis of ker(A) as lists of Fractions.  With rhs=None
    the system is treated as homogeneous.
    """
    m = len(matrix)
    if m == 0:
        raise InputError("empty system: variable count is undetermined")
    n = len(matrix[0])
    for row in matrix:
        if len(row) != n:
            raise InputError("inconsistent row lengths")
    if rhs is not None and len(rhs) != m:
        raise InputError("right-hand side length does not match row count")

    rows = _integer_rows(matrix, rhs)
    pivots = _echelon(rows, n)
    rank = len(pivots)

    consistent = all(rows[i][n] == 0 for i in range(rank, m))
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in pivot_cols]

    def back_substitute(target_col, unit_col=None):
        x = [Fraction(0)] * n
        if unit_col is not None:
            x[unit_col] = Fraction(1)
        for r, c in reversed(pivots):
            s = Fraction(rows[r][target_col]) if target_col is not None else Fraction(0)
            for j in range(c + 1, n):
                if x[j]:
                    s -= rows[r][j] * x[j]
            x[c] = s / rows[r][c]
        return x

    particular = back_substitute(n) if consistent else None
    nullspace = [back_substitute(None, unit_col=f) for f in free_cols]
    return particular, nullspace


def matrix_rank(matrix) -> int:
    """Exact rank of a rational matrix."""
    if not matrix:
        return 0
    rows = _integer_rows(matrix, None)
    return len(_echelon(rows, len(matrix[0])))


# ---------------------------------------------------------------------------
# Integer polynomials (coefficient tuples, lowest degree first)
# ---------------------------------------------------------------------------


def poly_trim(coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(p) -> int:
    """Degree of the polynomial; the zero polynomial has degree -1."""
    return len(p) - 1


def poly_eval(p, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p, q) -> tuple:
    out = [Fraction(0)] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_scale(p, s) -> tuple:
    if s == 0:
        return ()
    return poly_trim([c * s for c in p])


def poly_mul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    """Polynomial division over the rationals; q must be nonzero."""
    if not q:
        raise InputError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(rem) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    for i in range(len(rem) - len(q), -1, -1):
        factor = rem[i + len(q) - 1] / lead
        if factor:
            quot[i] = factor
            for j, c in enumerate(q):
                rem[i + j] -= factor * c
    return poly_trim(quot), poly_trim(rem)


def poly_content(p) -> int:
    return math.gcd(*(abs(int(c)) for c in p)) if p else 0


def poly_primitive(p) -> tuple:
    """Divide out the integer content and force a positive leading coefficient."""
    p = poly_trim(p)
    if not p:
        return ()
    c = poly_content(p)
    out = [int(x) // c for x in p]
    if out[-1] < 0:
        out = [-x for x in out]
    return tuple(out)


def poly_gcd(p, q) -> tuple:
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return ()
    scale = math.lcm(*(Fraction(c).denominator for c in a))
    return poly_primitive([int(Fraction(c) * scale) for c in a])


@dataclass(frozen=True)
class RationalFunctionFit:
    """A rational function p/q in canonical form.

    Both polynomials have integer coefficients with joint content 1 and no
    common polynomial factor; the denominator has a positive leading
    coefficient.  The zero function is ()/(1,).
    """

    numerator: tuple
    denominator: tuple

    @staticmethod
    def make(num, den) -> "RationalFunctionFit":
        """Canonicalize arbitrary rational coefficient sequences."""
        num, den = poly_trim(num), poly_trim(den)
        if not den:
            raise InputError("zero denominator polynomial")
        if not num:
            return RationalFunctionFit((), (1,))
        scale = math.lcm(*(Fraction(c).denominator for c in list(num) + list(den)))
        pn = [int(Fraction(c) * scale) for c in num]
        pd = [int(Fraction(c) * scale) for c in den]
        g = poly_gcd(pn, pd)
        if poly_degree(g) > 0:
            pn = [int(c) for c in poly_divmod(pn, g)[0]]
            pd = [int(c) for c in poly_divmod(pd, g)[0]]
        c = math.gcd(poly_content(pn), poly_content(pd))
        pn = [x // c for x in pn]
        pd = [x // c for x in pd]
        if pd[-1] < 0:
            pn = [-x for x in pn]
            pd = [-x for x in pd]
        return RationalFunctionFit(tuple(pn), tuple(pd))

    def evaluate(self, x) -> Fraction:
        q = poly_eval(self.denominator, Fraction(x))
        if q == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return poly_eval(self.numerator, Fraction(x)) / q

    def is_zero(self) -> bool:
        return not self.numerator

    def to_json_dict(self) -> dict:
        return {
            "numerator": [int(c) for c in self.numerator],
            "denominator": [int(c) for c in self.denominator],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "RationalFunctionFit":
        return RationalFunctionFit.make(data["numerator"], data["denominator"])

    def __str__(self) -> str:
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for e in range(len(p) - 1, -1, -1):
                c = p[e]
                if c == 0:
                    continue
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append("k" if c == 1 else f"{c}*k")
                else:
                    parts.append(f"k^{e}" if c == 1 else f"{c}*k^{e}")
            return " + ".join(parts).replace("+ -", "- ")

        if self.denominator == (1,):
            return fmt(self.numerator)
        return f"({fmt(self.numerator)}) / ({fmt(self.denominator)})"


def fit_rational_function(
    samples: Sequence[tuple], deg_num: int, deg_den: int
) -> Optional[RationalFunctionFit]:
    """Exact rational interpolation of integer-abscissa samples.

    Solves the homogeneous system p(k) - v*q(k) = 0 over the samples with
    deg p <= deg_num, deg q <= deg_den.  At least deg_num + deg_den + 1
    samples are required; at that count any two interpolants agree as
    functions, so the result is well defined.  Returns None when no such
    function interpolates every sample with a nonvanishing denominator.
    """
    if deg_num < 0 or deg_den < 0:
        raise InputError("negative degree bound")
    ks = [k for k, _ in samples]
    if len(set(ks)) != len(ks):
        raise InputError("duplicate sample abscissae")
    if len(samples) < deg_num + deg_den + 1:
        raise InputError(
            f"need at least {deg_num + deg_den + 1} samples for degrees "
            f"({deg_num}, {deg_den}), got {len(samples)}"
        )
    rows = []
    for k, v in samples:
        v = Fraction(v)
        row = [Fraction(k) ** e for e in range(deg_num + 1)]
        row += [-v * Fraction(k) ** e for e in range(deg_den + 1)]
        rows.append(row)
    _, nullspace = solve_exact(rows)
    if not nullspace:
        return None
    vec = nullspace[0]
    num, den = vec[: deg_num + 1], vec[deg_num + 1 :]
    if not poly_trim(den):
        return None
    fit = RationalFunctionFit.make(num, den)
    for k, v in samples:
        q = poly_eval(fit.denominator, Fraction(k))
        if q == 0 or poly_eval(fit.numerator, Fraction(k)) != Fraction(v) * q:
            return None
    return fit


def fit_polynomial(samples: Sequence[tuple], deg: int) -> Optional[RationalFunctionFit]:
    """Exact polynomial interpolation: fit_rational_function with deg_den = 0.

    The result has a constant positive denominator, so rational-coefficient
    polynomials like C(k+4,4) stay representable with integer tuples.
    """
    return fit_rational_function(samples, deg, 0)
