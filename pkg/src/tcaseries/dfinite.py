"""Exact guessing of linear ODEs with polynomial coefficients.

Given a truncated coefficient series, search for the lexicographically
minimal (order, degree) annihilating operator sum_i p_i(t) y^(i) over the
rationals, with enough surplus equations to make a miss trustworthy.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polyutil import Poly, falling, ptrim
from .seriesforms import OdeOperator

__all__ = [
    "CoeffSeries",
    "apply_ode",
    "guess_ode",
    "hadamard",
    "needed_length",
    "ode_to_text",
]

CoeffSeries = list[Fraction]


def needed_length(max_order: int, max_degree: int, margin: int = 10) -> int:
    """Coefficients required before a failed search may return None."""
    return (max_order + 1) * (max_degree + 1) + max_order + margin


def apply_ode(op: OdeOperator, coeffs: CoeffSeries) -> list[Fraction]:
    """Residual coefficients of sum_i p_i(t) y^(i) at t^m for every m where
    the truncation of y determines them (m = 0 .. len(coeffs)-1-order)."""
    r = op.order
    out = []
    for m in range(len(coeffs) - r):
        acc = Fraction(0)
        for i, p in enumerate(op.coeffs):
            for j, c in enumerate(p):
                if c and j <= m:
                    acc += c * coeffs[m - j + i] * falling(m - j + i, i)
        out.append(acc)
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of the matrix, by reduced row echelon."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for rix, pc in enumerate(pivots):
            vec[pc] = -mat[rix][fc]
        basis.append(vec)
    return basis


def _frobenius_lift(polys: list[Poly]) -> list[Poly]:
    """When the leading polynomial vanishes at the origin, multiply by the
    least power of t that makes every p_i divisible by t^i, so the operator
    is a polynomial in t*d/dt (Frobenius form at the singular point)."""
    def ord_t(p: Poly) -> int:
        return next(i for i, c in enumerate(p) if c)

    if polys[-1][0]:
        return polys
    k = max(0, max(i - ord_t(p) for i, p in enumerate(polys) if p))
    if k == 0:
        return polys
    return [(Fraction(0),) * k + tuple(p) if p else p for p in polys]


def _normalize(polys: list[Poly]) -> tuple[Poly, ...]:
    denom_lcm = 1
    for p in polys:
        for c in p:
            if c:
                denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    num_gcd = 0
    for p in polys:
        for c in p:
            if c:
                num_gcd = math.gcd(num_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
    scale = Fraction(denom_lcm, num_gcd)
    lead = polys[-1]
    if lead[-1] * scale < 0:
        scale = -scale
    return tuple(tuple(c * scale for c in p) for p in polys)


def guess_ode(coeffs: CoeffSeries, max_order: int = 6, max_degree: int = 8,
              margin: int = 10) -> OdeOperator | None:
    """Search orders 1..max_order, degrees 0..max_degree in lexicographic
    order for an operator annihilating the series; None means no operator
    within the caps fits the data. Raises ValueError when the series is too
    short for a None to be meaningful.

    Output normalization: integer coefficients of content 1, positive leading
    coefficient of the leading polynomial; operators singular at the origin
    are returned in cleared Frobenius form (a polynomial in t*d/dt), which may
    raise the reported degree above that of the raw minimal solution."""
    if max_order < 1 or max_degree < 0:
        raise ValueError("need max_order >= 1 and max_degree >= 0")
    L = len(coeffs)
    need = needed_length(max_order, max_degree, margin)
    if L < need:
        raise ValueError(
            f"need at least {need} coefficients for caps "
            f"({max_order}, {max_degree}), got {L}")
    coeffs = [Fraction(c) for c in coeffs]
    for r in range(1, max_order + 1):
        rows_full = []
        for m in range(L - r):
            row = []
            for i in range(r + 1):
                for j in range(max_degree + 1):
                    if j <= m:
                        row.append(coeffs[m - j + i] * falling(m - j + i, i))
                    else:
                        row.append(Fraction(0))
            rows_full.append(row)
        width = max_degree + 1
        for d in range(max_degree + 1):
            cols = [i * width + j for i in range(r + 1) for j in range(d + 1)]
            rows = [[row[c] for c in cols] for row in rows_full]
            for vec in _nullspace(rows, len(cols)):
                polys = [ptrim(tuple(vec[i * (d + 1) + j] for j in range(d + 1)))
                         for i in range(r + 1)]
                if not polys[-1]:
                    continue
                op = OdeOperator(_normalize(_frobenius_lift(polys)))
                if any(apply_ode(op, coeffs)):
                    continue
                return op
    return None


def hadamard(a: CoeffSeries, b: CoeffSeries) -> CoeffSeries:
    return [Fraction(x) * Fraction(y) for x, y in zip(a, b)]


def _poly_text(p: Poly) -> tuple[str, bool]:
    """Render ascending-coefficient poly in t, descending powers; the flag
    says whether the rendering needs parentheses before '*'."""
    pieces = []
    for j in range(len(p) - 1, -1, -1):
        c = p[j]
        if not c:
            continue
        if j == 0:
            body = str(abs(c))
        else:
            t = "t" if j == 1 else f"t^{j}"
            body = t if abs(c) == 1 else f"{abs(c)}*{t}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    text = "".join(pieces)
    return text, len([c for c in p if c]) > 1


def _y_name(i: int) -> str:
    return "y" + "'" * i if i <= 3 else f"y^({i})"


def ode_to_text(op: OdeOperator) -> str:
    parts = []
    for i in range(op.order, -1, -1):
        p = ptrim(op.coeffs[i])
        if not p:
            continue
        text, multi = _poly_text(p)
        y = _y_name(i)
        if multi:
            term, negative = f"({text})*{y}", False
        elif text == "1":
            term, negative = y, False
        elif text == "-1":
            term, negative = y, True
        elif text.startswith("-"):
            term, negative = f"{text[1:]}*{y}", True
        else:
            term, negative = f"{text}*{y}", False
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f" - {term}" if negative else f" + {term}")
    return "".join(parts) if parts else "0"
