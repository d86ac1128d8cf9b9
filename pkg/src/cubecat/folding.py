"""Elementary and partial folding, and the thinness predicates.

The elementary folding in direction i bends the two faces transverse to
direction i+1 around so they abut the direction-i faces, and composes:

    psi_i(x) = G+_i(d-_{i+1} x)  o_{i+1}  x  o_{i+1}  G-_i(d+_{i+1} x)

Applying psi_{n-1} first and psi_1 last accumulates all negative (and all
positive) faces of x into the two direction-1 faces of the result; every
other face of the folded cube is degenerate in direction 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MINUS, PLUS, SIGNS, CubeSystem, is_degenerate_at
from .errors import BoundaryMismatch, IndexOutOfRange, PostconditionViolated


def psi(system: CubeSystem, x, i: int):
    """Fold x in direction i (valid for 1 <= i <= dim-1)."""
    n = system.dim(x)
    if n < 2 or not 1 <= i <= n - 1:
        raise IndexOutOfRange("psi", i, n)
    left = system.connection(system.face(x, i + 1, MINUS), i, PLUS)
    right = system.connection(system.face(x, i + 1, PLUS), i, MINUS)
    return system.compose(system.compose(left, x, i + 1), right, i + 1)


def fold_through(system: CubeSystem, x, j: int):
    """psi_1 psi_2 ... psi_j applied to x (the j-fold partial folding)."""
    for i in range(j, 0, -1):
        x = psi(system, x, i)
    return x


@dataclass(frozen=True)
class FoldResult:
    """Fully folded cube with its two embodied boundary composites."""

    folded: object
    n_face: object
    p_face: object


def big_psi(system: CubeSystem, x, *, verify: bool = True) -> FoldResult:
    """Apply the full chain psi_1 ... psi_{n-1}; empty at dimension 1.

    Postconditions are re-checked unless ``verify`` is disabled: every face
    of the folded cube beyond direction 1 must be degenerate in direction 1,
    and the two direction-1 faces must share their whole boundary.
    """
    n = system.dim(x)
    if n < 1:
        raise IndexOutOfRange("big_psi", 1, n)
    folded = fold_through(system, x, n - 1)
    n_face = system.face(folded, 1, MINUS)
    p_face = system.face(folded, 1, PLUS)
    if verify:
        for i in range(2, n + 1):
            for sign in SIGNS:
                if not is_degenerate_at(system, system.face(folded, i, sign), 1):
                    raise PostconditionViolated(
                        f"face ({i},{sign}) of the folded cube is not degenerate"
                    )
        for i in range(1, n):
            for sign in SIGNS:
                if system.face(n_face, i, sign) != system.face(p_face, i, sign):
                    raise PostconditionViolated(
                        f"folded boundary composites disagree at face ({i},{sign})"
                    )
    return FoldResult(folded, n_face, p_face)


def reconstruct_folded_shell(system: CubeSystem, n_face, p_face):
    """The boundary a fully folded cube must have, given its two main faces.

    Faces beyond direction 1 are forced: each is the first degeneracy of the
    corresponding face of ``n_face``.
    """
    from .shells import make_shell  # local import; shells builds on folding

    d = system.dim(n_face)
    if system.dim(p_face) != d:
        raise BoundaryMismatch("main faces have different dimensions")
    for i in range(1, d + 1):
        for sign in SIGNS:
            if system.face(n_face, i, sign) != system.face(p_face, i, sign):
                raise BoundaryMismatch(
                    f"main faces disagree on their ({i},{sign}) face"
                )
    faces = {(1, MINUS): n_face, (1, PLUS): p_face}
    for i in range(2, d + 2):
        for sign in SIGNS:
            faces[(i, sign)] = system.degeneracy(
                system.face(n_face, i - 1, sign), 1
            )
    return make_shell(system, d + 1, faces)


def is_thin(system: CubeSystem, x) -> bool:
    """Thin elements fold to a first-direction degeneracy."""
    n = system.dim(x)
    if n < 1:
        raise IndexOutOfRange("is_thin", 1, n)
    folded = fold_through(system, x, n - 1)
    return is_degenerate_at(system, folded, 1)


def is_j_thin(system: CubeSystem, x, j: int) -> bool:
    """Partial thinness: the j-fold partial folding is already degenerate.

    j = 0 asks whether x itself is a first degeneracy; j = dim-1 is full
    thinness.
    """
    n = system.dim(x)
    if not 0 <= j <= n - 1:
        raise IndexOutOfRange("is_j_thin", j, n)
    return is_degenerate_at(system, fold_through(system, x, j), 1)
