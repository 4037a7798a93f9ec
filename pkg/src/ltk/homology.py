"""Cohomology of the Lambda algebra differential in a fixed bidegree.

Each bidegree slice carries the admissible basis and the differential
matrices in and out of it; every class-level question (is this a
boundary, are these two cycles homologous, what is the Ext dimension)
reduces to rank or solve calls on those matrices.  Witnesses are always
re-verified by applying the differential before they are returned.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from . import f2core, lambda_algebra as la
from .f2core import BitMatrix, BitVector
from .lambda_algebra import LambdaElement, LambdaMonomial


class NotACycleError(ValueError):
    """Raised when an operation defined on cycles receives a non-cycle."""


@dataclass(frozen=True)
class BidegreeSlice:
    """The chain data at one bidegree (s, d).

    Both matrices use column-vector convention: columns are indexed by
    the domain basis, rows by the codomain basis.  diff_out maps this
    slice to (s+1, d-1); diff_in maps (s-1, d+1) into this slice.
    """

    s: int
    d: int
    basis: tuple[LambdaMonomial, ...]
    prev_basis: tuple[LambdaMonomial, ...]
    next_basis: tuple[LambdaMonomial, ...]
    diff_out: BitMatrix
    diff_in: BitMatrix


def _coords(e: LambdaElement, index: dict[LambdaMonomial, int], length: int) -> BitVector:
    bits = 0
    for w in e:
        bits |= 1 << index[w]
    return BitVector(length, bits)


def _from_coords(v: BitVector, basis: tuple[LambdaMonomial, ...]) -> LambdaElement:
    return frozenset(basis[i] for i in v.support())


def _diff_matrix(domain: tuple[LambdaMonomial, ...],
                 codomain: tuple[LambdaMonomial, ...]) -> BitMatrix:
    index = {w: i for i, w in enumerate(codomain)}
    images = []
    for w in domain:
        image = la.differential(frozenset({w}))
        images.append(_coords(image, index, len(codomain)).bits)
    return BitMatrix.from_rows(len(codomain), images).transpose()


@functools.cache
def slice_at(s: int, d: int) -> BidegreeSlice:
    """Build (and cache) the chain slice at bidegree (s, d)."""
    basis = la.admissible_basis(s, d)
    next_basis = la.admissible_basis(s + 1, d - 1) if d >= 1 else ()
    prev_basis = la.admissible_basis(s - 1, d + 1) if s >= 1 else ()
    return BidegreeSlice(
        s=s,
        d=d,
        basis=basis,
        prev_basis=prev_basis,
        next_basis=next_basis,
        diff_out=_diff_matrix(basis, next_basis),
        diff_in=_diff_matrix(prev_basis, basis),
    )


def _require_homogeneous(e: LambdaElement) -> None:
    if not la.is_homogeneous(e):
        raise ValueError("element is not homogeneous")


def is_cycle(e: LambdaElement) -> bool:
    """True iff the differential of e vanishes."""
    _require_homogeneous(e)
    return not la.differential(e)


def boundary_witness(r: LambdaElement) -> Optional[LambdaElement]:
    """An element b with differential(b) = normalize(r), or None.

    The returned witness is re-verified before being handed back; the
    zero element is its own (empty) witness.
    """
    _require_homogeneous(r)
    r = la.normalize(r)
    if not r:
        return la.ZERO
    s, d = la.bidegree(r)
    if s == 0:
        return None
    sl = slice_at(s, d)
    index = {w: i for i, w in enumerate(sl.basis)}
    target = _coords(r, index, len(sl.basis))
    x = f2core.solve(sl.diff_in, target)
    if x is None:
        return None
    witness = _from_coords(x, sl.prev_basis)
    if la.differential(witness) != r:
        raise AssertionError("witness failed re-verification")
    return witness


def is_boundary(r: LambdaElement) -> bool:
    return boundary_witness(r) is not None


@functools.cache
def ext_dimension(s: int, d: int) -> int:
    """dim of the cohomology at (s, d): cycles modulo boundaries."""
    if s < 0 or d < 0:
        raise ValueError("bidegree components must be non-negative")
    sl = slice_at(s, d)
    cycles = len(sl.basis) - f2core.rank(sl.diff_out)
    boundaries = f2core.rank(sl.diff_in)
    return cycles - boundaries


def _require_cycle(e: LambdaElement) -> LambdaElement:
    e = la.normalize(e)
    if not is_cycle(e):
        raise NotACycleError("element is not a cycle")
    return e


def same_class(e1: LambdaElement, e2: LambdaElement) -> tuple[bool, Optional[LambdaElement]]:
    """Whether two cycles are homologous; on success also the witness b
    with differential(b) = e1 + e2."""
    e1 = _require_cycle(e1)
    e2 = _require_cycle(e2)
    if e1 and e2 and la.bidegree(e1) != la.bidegree(e2):
        raise ValueError("cycles live in different bidegrees")
    witness = boundary_witness(e1 ^ e2)
    return (witness is not None), witness


def class_nonzero(e: LambdaElement) -> bool:
    """True iff the cycle e is not a boundary."""
    e = _require_cycle(e)
    return boundary_witness(e) is None
