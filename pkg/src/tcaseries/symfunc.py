"""Symmetric functions with explicit basis tags and truncation metadata.

A SymFunc is a finite Fraction-linear combination of basis elements indexed
by partitions, in one of three bases: schur "s", powersum "p", monomial "m".
``truncation=N`` means coefficients are only meaningful in degrees <= N
(None marks an exact, untruncated element). Operations propagate the minimum
truncation of their inputs and never silently extend precision.

Products are computed through the powersum basis, where multiplication is
concatenation of indexing partitions; the Littlewood-Richardson rule exists
only as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .partitions import (
    Partition,
    as_partition,
    canonical_key,
    enumerate_partitions,
    kostka_and_inverse,
    sym_character,
    transpose,
    z_of,
)

SCHUR = "s"
POWERSUM = "p"
MONOMIAL = "m"
_BASES = (SCHUR, POWERSUM, MONOMIAL)

__all__ = [
    "MONOMIAL",
    "POWERSUM",
    "SCHUR",
    "SymFunc",
    "add",
    "change_basis",
    "dagger",
    "ddag",
    "degree_slice",
    "max_degree",
    "multiply",
    "plethysm_power",
    "scale",
    "schur_derivative",
    "sym_algebra_character",
]


@dataclass(frozen=True)
class SymFunc:
    basis: str
    terms: dict[Partition, Fraction] = field(default_factory=dict)
    truncation: int | None = None

    def __post_init__(self):
        if self.basis not in _BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean: dict[Partition, Fraction] = {}
        for lam, c in self.terms.items():
            lam = as_partition(lam)
            c = Fraction(c)
            if c == 0:
                continue
            if self.truncation is not None and sum(lam) > self.truncation:
                continue
            clean[lam] = clean.get(lam, Fraction(0)) + c
        clean = {lam: c for lam, c in sorted(clean.items(), key=lambda kv: canonical_key(kv[0])) if c}
        object.__setattr__(self, "terms", clean)

    def coeff(self, lam) -> Fraction:
        return self.terms.get(as_partition(lam), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms


def _min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def max_degree(f: SymFunc) -> int:
    return max((sum(lam) for lam in f.terms), default=0)


def degree_slice(f: SymFunc, n: int) -> dict[Partition, Fraction]:
    return {lam: c for lam, c in f.terms.items() if sum(lam) == n}


def add(f: SymFunc, g: SymFunc) -> SymFunc:
    if f.basis != g.basis:
        g = change_basis(g, f.basis)
    terms = dict(f.terms)
    for lam, c in g.terms.items():
        terms[lam] = terms.get(lam, Fraction(0)) + c
    return SymFunc(f.basis, terms, _min_trunc(f.truncation, g.truncation))


def scale(f: SymFunc, c) -> SymFunc:
    c = Fraction(c)
    return SymFunc(f.basis, {lam: v * c for lam, v in f.terms.items()}, f.truncation)


def change_basis(f: SymFunc, target: str) -> SymFunc:
    if target not in _BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if f.basis == SCHUR and target == POWERSUM:
        terms = _s_to_p(f.terms)
    elif f.basis == POWERSUM and target == SCHUR:
        terms = _p_to_s(f.terms)
    elif f.basis == SCHUR and target == MONOMIAL:
        terms = _kostka_apply(f.terms, inverse=False)
    elif f.basis == MONOMIAL and target == SCHUR:
        terms = _kostka_apply(f.terms, inverse=True)
    else:
        via = change_basis(SymFunc(f.basis, f.terms, f.truncation), SCHUR)
        return change_basis(via, target)
    return SymFunc(target, terms, f.truncation)


def _s_to_p(terms) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for lam, c in terms.items():
        for mu in enumerate_partitions(sum(lam)):
            v = c * Fraction(sym_character(lam, mu), z_of(mu))
            if v:
                out[mu] = out.get(mu, Fraction(0)) + v
    return out


def _p_to_s(terms) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for mu, c in terms.items():
        for lam in enumerate_partitions(sum(mu)):
            v = c * sym_character(lam, mu)
            if v:
                out[lam] = out.get(lam, Fraction(0)) + v
    return out


def _kostka_apply(terms, inverse: bool) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for lam, c in terms.items():
        order, K, Kinv = kostka_and_inverse(sum(lam))
        M = Kinv if inverse else K
        i = order.index(lam)
        for j, mu in enumerate(order):
            v = c * M[i][j]
            if v:
                out[mu] = out.get(mu, Fraction(0)) + v
    return out


def _p_mul_terms(a: dict[Partition, Fraction], b: dict[Partition, Fraction],
                 trunc: int | None) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for la, ca in a.items():
        wa = sum(la)
        for lb, cb in b.items():
            if trunc is not None and wa + sum(lb) > trunc:
                continue
            key = tuple(sorted(la + lb, reverse=True))
            v = ca * cb
            cur = out.get(key)
            out[key] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if v}


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product in the ring of symmetric functions, via the powersum basis."""
    trunc = _min_trunc(f.truncation, g.truncation)
    fp = change_basis(f, POWERSUM)
    gp = change_basis(g, POWERSUM)
    prod = _p_mul_terms(fp.terms, gp.terms, trunc)
    return change_basis(SymFunc(POWERSUM, prod, trunc), f.basis)


def plethysm_power(k: int, f: SymFunc) -> SymFunc:
    """p_k ∘ f: substitute p_j -> p_{jk} on the powersum expansion."""
    if k < 1:
        raise ValueError("k must be >= 1")
    fp = change_basis(f, POWERSUM)
    terms = {tuple(k * part for part in mu): c for mu, c in fp.terms.items()}
    trunc = None if f.truncation is None else k * f.truncation
    return change_basis(SymFunc(POWERSUM, terms, trunc), f.basis)


def sym_algebra_character(f: SymFunc, N: int) -> SymFunc:
    """Character of Sym(V) truncated at degree N, for V with character f.

    Computes exp(sum_{k>=1} (p_k ∘ f)/k) in the powersum basis; f must have
    no degree-0 term. Returns a schur-basis SymFunc truncated at N.
    """
    fp = change_basis(f, POWERSUM)
    if () in fp.terms:
        raise ValueError("character has a degree-0 term")
    if fp.truncation is not None and fp.truncation < N:
        raise ValueError(f"input truncated at {fp.truncation} < {N}")
    if not fp.terms:
        return SymFunc(SCHUR, {(): Fraction(1)}, N)
    mindeg = min(sum(mu) for mu in fp.terms)
    log_terms: dict[Partition, Fraction] = {}
    k = 1
    while k * mindeg <= N:
        for mu, c in fp.terms.items():
            key = tuple(k * part for part in mu)
            if sum(key) <= N:
                log_terms[key] = log_terms.get(key, Fraction(0)) + c / k
        k += 1
    out: dict[Partition, Fraction] = {(): Fraction(1)}
    power: dict[Partition, Fraction] = {(): Fraction(1)}
    fact = 1
    j = 0
    while (j + 1) * mindeg <= N:
        j += 1
        fact *= j
        power = _p_mul_terms(power, log_terms, N)
        for mu, c in power.items():
            v = c / fact
            out[mu] = out.get(mu, Fraction(0)) + v
    return change_basis(SymFunc(POWERSUM, out, N), SCHUR)


def dagger(f: SymFunc) -> SymFunc:
    """Transpose every indexing partition (schur basis)."""
    fs = change_basis(f, SCHUR)
    return SymFunc(SCHUR, {transpose(lam): c for lam, c in fs.terms.items()}, f.truncation)


def ddag(f: SymFunc) -> SymFunc:
    """s_lam -> (-1)^{|lam|} s_{lam'}: the involution behind sigma inversion."""
    fs = change_basis(f, SCHUR)
    terms = {transpose(lam): (-1) ** sum(lam) * c for lam, c in fs.terms.items()}
    return SymFunc(SCHUR, terms, f.truncation)


def schur_derivative(f: SymFunc) -> SymFunc:
    """d/dp_1: the shift functor's effect on characters (degree drops by 1)."""
    fp = change_basis(f, POWERSUM)
    out: dict[Partition, Fraction] = {}
    for mu, c in fp.terms.items():
        m1 = sum(1 for part in mu if part == 1)
        if m1 == 0:
            continue
        key = mu[:-1]  # parts sorted descending: drop one trailing 1
        out[key] = out.get(key, Fraction(0)) + m1 * c
    trunc = None if f.truncation is None else max(f.truncation - 1, 0)
    return change_basis(SymFunc(POWERSUM, out, trunc), f.basis)


def to_json(f: SymFunc) -> dict:
    from .partitions import format_partition
    return {
        "basis": f.basis,
        "truncation": f.truncation,
        "terms": {format_partition(lam): str(c) for lam, c in f.terms.items()},
    }


def from_json(obj: dict) -> SymFunc:
    from .partitions import parse_partition
    terms = {parse_partition(k): Fraction(v) for k, v in obj["terms"].items()}
    return SymFunc(obj["basis"], terms, obj.get("truncation"))
