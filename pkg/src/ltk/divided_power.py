"""Divided power algebra on s degree-one generators, as a right module
over the Steenrod squares.

A monomial is the exponent tuple (t_1, ..., t_s); an element is a
frozenset of equal-length tuples (presence = coefficient 1).  The right
action of a square on one divided power is

    a^(j) Sq^i = C(j-i, i) a^(j-i),

extended over products by the Cartan formula, i.e. by summing over all
ways to distribute i among the factors.  A factor absorbs Sq^i only when
2i <= j, so the whole action vanishes whenever 2i exceeds the degree.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional

from . import f2core
from .f2core import BitMatrix, binom_mod2

GammaMonomial = tuple[int, ...]
GammaElement = frozenset  # of GammaMonomial

ZERO: GammaElement = frozenset()


def element(*monomials: Iterable[int]) -> GammaElement:
    """Build an element from exponent tuples; duplicates cancel mod 2."""
    acc: set[GammaMonomial] = set()
    ranks = set()
    for m in monomials:
        t = tuple(m)
        if any(x < 0 for x in t):
            raise ValueError(f"negative exponent in {t}")
        ranks.add(len(t))
        acc ^= {t}
    if len(ranks) > 1:
        raise ValueError("monomials of mixed rank")
    return frozenset(acc)


def rank_of(e: GammaElement) -> Optional[int]:
    ranks = {len(m) for m in e}
    if not ranks:
        return None
    if len(ranks) > 1:
        raise ValueError("element has mixed rank")
    return ranks.pop()


def degree_of(e: GammaElement) -> Optional[int]:
    degs = {sum(m) for m in e}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def is_homogeneous(e: GammaElement) -> bool:
    return len({sum(m) for m in e}) <= 1


def _sq_monomial(m: GammaMonomial, i: int) -> frozenset:
    """Cartan expansion of one monomial under Sq^i, as a parity set."""
    # states: partial exponent tuple -> remaining square degree, folded
    # left to right; parity handled by symmetric difference.
    states: set[tuple[GammaMonomial, int]] = {((), i)}
    for t in m:
        nxt: set[tuple[GammaMonomial, int]] = set()
        for partial, rem in states:
            for ik in range(min(rem, t // 2) + 1):
                if binom_mod2(t - ik, ik):
                    nxt ^= {(partial + (t - ik,), rem - ik)}
        states = nxt
    return frozenset(partial for partial, rem in states if rem == 0)


def sq_right(e: GammaElement, i: int) -> GammaElement:
    """The right action of Sq^i, extended linearly."""
    if i < 0:
        raise ValueError("square degree must be non-negative")
    if i == 0:
        return e
    acc: set[GammaMonomial] = set()
    for m in e:
        acc ^= _sq_monomial(m, i)
    return frozenset(acc)


@dataclass(frozen=True)
class PrimitivityEvidence:
    """Outcome of the annihilation test, square by square."""

    holds: bool
    checked: tuple[tuple[int, GammaElement], ...]  # (square degree, image)

    def __bool__(self) -> bool:
        return self.holds


def _generator_squares(d: int) -> list[int]:
    # Sq^(2^k) generate the whole algebra of squares, and any square of
    # degree above d/2 acts as zero on degree d, so these suffice.
    squares = []
    i = 1
    while 2 * i <= d:
        squares.append(i)
        i *= 2
    return squares


def is_primitive(e: GammaElement) -> PrimitivityEvidence:
    """Whether every positive-degree square annihilates e."""
    if not is_homogeneous(e):
        raise ValueError("element is not homogeneous")
    d = degree_of(e)
    if d is None:
        return PrimitivityEvidence(True, ())
    checked = tuple((i, sq_right(e, i)) for i in _generator_squares(d))
    return PrimitivityEvidence(all(not img for _, img in checked), checked)


@functools.cache
def gamma_basis(s: int, d: int) -> tuple[GammaMonomial, ...]:
    """All exponent tuples of length s summing to d, descending lex order."""
    if s < 1:
        raise ValueError("rank must be at least 1")
    if d < 0:
        raise ValueError("degree must be non-negative")

    def extend(prefix: GammaMonomial, remaining: int, slots: int,
               out: list[GammaMonomial]) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for t in range(remaining, -1, -1):
            extend(prefix + (t,), remaining - t, slots - 1, out)

    monomials: list[GammaMonomial] = []
    extend((), d, s, monomials)
    return tuple(monomials)


def primitive_basis(s: int, d: int) -> list[GammaElement]:
    """A basis of the joint kernel of the generator squares at (s, d)."""
    basis = gamma_basis(s, d)
    squares = _generator_squares(d)
    if not squares:
        return [frozenset({m}) for m in basis]
    rows = []
    for i in squares:
        codomain = gamma_basis(s, d - i)
        index = {m: j for j, m in enumerate(codomain)}
        images = []
        for m in basis:
            bits = 0
            for w in _sq_monomial(m, i):
                bits |= 1 << index[w]
            images.append(bits)
        rows.append(BitMatrix.from_rows(len(codomain), images).transpose())
    stacked = BitMatrix.from_rows(
        len(basis), [r for mat in rows for r in mat.data]
    )
    kernel = f2core.kernel_basis(stacked)
    out = []
    for v in kernel:
        candidate = frozenset(basis[j] for j in v.support())
        evidence = is_primitive(candidate)
        if not evidence:
            raise AssertionError("kernel vector failed the primitivity re-check")
        out.append(candidate)
    return out


def _divided_multiply(m1: GammaMonomial, m2: GammaMonomial) -> GammaElement:
    """Product of two same-rank monomials; test oracle only.

    a^(i) a^(j) = C(i+j, i) a^(i+j) in each coordinate.
    """
    if len(m1) != len(m2):
        raise ValueError("rank mismatch")
    for a, b in zip(m1, m2):
        if not binom_mod2(a + b, a):
            return ZERO
    return frozenset({tuple(a + b for a, b in zip(m1, m2))})
