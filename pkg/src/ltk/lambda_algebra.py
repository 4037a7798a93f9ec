"""The bigraded mod-2 Lambda algebra.

Monomials are words in the generators, modeled as tuples of non-negative
indices; the empty tuple is the unit.  Elements are frozensets of words
(presence = coefficient 1), so addition is symmetric difference.

A word is admissible when every adjacent index pair (a, b) satisfies
b <= 2a.  The defining relations rewrite each violating pair

    lam_k lam_m  =  sum_j C(s-j-1, j) lam_{k+s-j} lam_{2k+1+j},
    m = 2k+s+1, s >= 0,

strictly increasing the left index, so repeated expansion terminates in
the admissible normal form.
"""

from __future__ import annotations

import functools
from typing import Iterable, NamedTuple, Optional

from .f2core import binom_mod2

LambdaMonomial = tuple[int, ...]
LambdaElement = frozenset  # of LambdaMonomial

ZERO: LambdaElement = frozenset()
UNIT: LambdaElement = frozenset({()})


class Bidegree(NamedTuple):
    s: int  # homological length
    d: int  # internal degree

    @property
    def topological(self) -> int:
        return self.s + self.d


def element(*words: Iterable[int]) -> LambdaElement:
    """Build an element from words; repeated words cancel mod 2."""
    acc: set[LambdaMonomial] = set()
    for w in words:
        t = tuple(w)
        if any(i < 0 for i in t):
            raise ValueError(f"negative index in {t}")
        acc ^= {t}
    return frozenset(acc)


def monomial_bidegree(m: LambdaMonomial) -> Bidegree:
    return Bidegree(len(m), sum(m))


def bidegree(e: LambdaElement) -> Optional[Bidegree]:
    """The common bidegree of all terms, or None for the zero element."""
    degs = {monomial_bidegree(m) for m in e}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"element is not homogeneous: bidegrees {sorted(degs)}")
    return degs.pop()


def is_homogeneous(e: LambdaElement) -> bool:
    return len({monomial_bidegree(m) for m in e}) <= 1


def is_admissible(m: LambdaMonomial) -> bool:
    """True iff every adjacent pair (a, b) of indices satisfies b <= 2a."""
    return all(b <= 2 * a for a, b in zip(m, m[1:]))


@functools.cache
def _pair_expansion(k: int, m: int) -> tuple[tuple[int, int], ...]:
    s = m - 2 * k - 1
    return tuple(
        (k + s - j, 2 * k + 1 + j)
        for j in range((s - 1) // 2 + 1)
        if binom_mod2(s - j - 1, j)
    )


def adem_expand_pair(k: int, m: int) -> LambdaElement:
    """Rewrite the inadmissible two-letter word (k, m), m >= 2k + 1."""
    if m < 2 * k + 1:
        raise ValueError(f"pair ({k}, {m}) is admissible; nothing to expand")
    return frozenset(_pair_expansion(k, m))


def _first_bad(w: LambdaMonomial) -> Optional[int]:
    for i in range(len(w) - 1):
        if w[i + 1] > 2 * w[i]:
            return i
    return None


def _last_bad(w: LambdaMonomial) -> Optional[int]:
    for i in range(len(w) - 2, -1, -1):
        if w[i + 1] > 2 * w[i]:
            return i
    return None


def normalize(e: LambdaElement, strategy: str = "leftmost") -> LambdaElement:
    """Admissible normal form of e under the defining relations.

    The strategy picks which violating pair of each word is expanded per
    sweep; both orders reach the same normal form (this is exercised by
    the test suite) but "leftmost" is the canonical evaluation order.
    """
    try:
        find = {"leftmost": _first_bad, "rightmost": _last_bad}[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    current: set[LambdaMonomial] = set(e)
    done: set[LambdaMonomial] = set()
    while current:
        nxt: set[LambdaMonomial] = set()
        for w in current:
            i = find(w)
            if i is None:
                done ^= {w}
                continue
            head, tail = w[:i], w[i + 2:]
            for pair in _pair_expansion(w[i], w[i + 1]):
                word = head + pair + tail
                if word in nxt:
                    nxt.discard(word)
                else:
                    nxt.add(word)
        current = nxt
    return frozenset(done)


def product(e1: LambdaElement, e2: LambdaElement) -> LambdaElement:
    """Bilinear concatenation, normalized."""
    raw: set[LambdaMonomial] = set()
    for w1 in e1:
        for w2 in e2:
            raw ^= {w1 + w2}
    return normalize(frozenset(raw))


@functools.cache
def _generator_differential(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (n - j, j - 1) for j in range(1, n // 2 + 1) if binom_mod2(n - j, j)
    )


def differential(e: LambdaElement) -> LambdaElement:
    """The differential, extended to words by the mod-2 Leibniz rule.

    Sends bidegree (s, d) to (s+1, d-1); squares to zero.
    """
    raw: set[LambdaMonomial] = set()
    for w in e:
        for i, n in enumerate(w):
            head, tail = w[:i], w[i + 1:]
            for pair in _generator_differential(n):
                raw ^= {head + pair + tail}
    return normalize(frozenset(raw))


def sq0(e: LambdaElement) -> LambdaElement:
    """The squaring endomorphism: every index t becomes 2t + 1.

    Sends bidegree (s, d) to (s, 2d + s); commutes with the differential
    and with products.
    """
    raw: set[LambdaMonomial] = set()
    for w in e:
        raw ^= {tuple(2 * t + 1 for t in w)}
    return normalize(frozenset(raw))


@functools.cache
def admissible_basis(s: int, d: int) -> tuple[LambdaMonomial, ...]:
    """All admissible words of length s and degree d, in ascending lex order."""
    if s < 0 or d < 0:
        raise ValueError("bidegree components must be non-negative")

    def extend(prefix: tuple[int, ...], cap: Optional[int], remaining: int,
               slots: int, out: list[LambdaMonomial]) -> None:
        if slots == 0:
            if remaining == 0:
                out.append(prefix)
            return
        hi = remaining if cap is None else min(cap, remaining)
        for t in range(hi + 1):
            rest = remaining - t
            # max degree the remaining slots can still reach: 2t + 4t + ...
            if rest > 2 * t * ((1 << (slots - 1)) - 1):
                continue
            extend(prefix + (t,), 2 * t, rest, slots - 1, out)

    words: list[LambdaMonomial] = []
    extend((), None, d, s, words)
    return tuple(words)
