"""Independent oracles shared by the test modules.

Everything here is deliberately written from scratch against the
defining formulas (Pascal's recurrence, stars-and-bars enumeration,
polynomial-side duality) so it shares no code path with the package.
"""

from __future__ import annotations

import functools

PASCAL_LIMIT = 300


@functools.lru_cache(maxsize=1)
def pascal_mod2_table(limit: int = PASCAL_LIMIT) -> list[list[int]]:
    """C(n, k) mod 2 for 0 <= k <= n <= limit via the additive recurrence."""
    rows = [[1]]
    for n in range(1, limit + 1):
        prev = rows[-1]
        row = [1]
        for k in range(1, n):
            row.append((prev[k - 1] + prev[k]) % 2)
        row.append(1)
        rows.append(row)
    return rows


def binom2(n: int, k: int) -> int:
    """Pascal-table binomial mod 2, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return pascal_mod2_table()[n][k]


def adem_rhs(k: int, m: int) -> set[tuple[int, int]]:
    """The two-letter rewriting of (k, m), m >= 2k+1, by direct summation."""
    s = m - 2 * k - 1
    out = set()
    for j in range(0, s + 1):
        if binom2(s - j - 1, j):
            out.add((k + s - j, 2 * k + 1 + j))
    return out


def generator_diff(n: int) -> set[tuple[int, int]]:
    """Differential of a single generator by direct summation."""
    out = set()
    for j in range(1, n + 1):
        if binom2(n - j, j):
            out.add((n - j, j - 1))
    return out


def all_words(s: int, d: int):
    """Every length-s word of total degree d (no admissibility filter)."""
    if s == 0:
        if d == 0:
            yield ()
        return
    for head in range(d + 1):
        for tail in all_words(s - 1, d - head):
            yield (head,) + tail


def admissible_words_brute(s: int, d: int) -> list[tuple[int, ...]]:
    return sorted(
        w for w in all_words(s, d)
        if all(b <= 2 * a for a, b in zip(w, w[1:]))
    )


def compositions(s: int, d: int):
    """Exponent tuples of length s summing to d."""
    yield from all_words(s, d)


# --- polynomial-side oracle for the right Steenrod action -----------------
#
# The degree-d part of the divided power algebra is dual to degree-d
# polynomials; the right action on homology is dual to the left action
# Sq^i(x^a) = C(a, i) x^(a+i) extended by the Cartan formula.  So
# <(e)Sq^i, x^A> = <e, Sq^i(x^A)>.

def poly_sq_monomial(exps: tuple[int, ...], i: int) -> set[tuple[int, ...]]:
    """Sq^i of a polynomial monomial, as a parity set of exponent tuples."""
    states = {((), i)}
    for a in exps:
        nxt = set()
        for partial, rem in states:
            for ia in range(rem + 1):
                if binom2(a, ia):
                    key = (partial + (a + ia,), rem - ia)
                    if key in nxt:
                        nxt.discard(key)
                    else:
                        nxt.add(key)
        states = nxt
    return {partial for partial, rem in states if rem == 0}


def sq_right_dual_oracle(e: frozenset, i: int) -> frozenset:
    """(e)Sq^i computed through the polynomial duality."""
    if not e:
        return frozenset()
    rank = len(next(iter(e)))
    degree = sum(next(iter(e)))
    out = set()
    for a in compositions(rank, degree - i):
        pairing = 0
        for m in poly_sq_monomial(tuple(a), i):
            if m in e:
                pairing ^= 1
        if pairing:
            out.add(tuple(a))
    return frozenset(out)


def psi_rank2_oracle(t1: int, t2: int) -> set[tuple[int, int]]:
    """Raw two-letter words of the transfer image of a^(t1) a^(t2).

    Peeling the first exponent: sum over j >= t1 of the lowered second
    exponent followed by the peeled letter.
    """
    out = set()
    for j in range(t1, t1 + t2 // 2 + 1):
        i = j - t1
        if binom2(t2 - i, i):
            w = (t2 - i, j)
            out ^= {w}
    return out
