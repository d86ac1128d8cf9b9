"""Shells (cube boundaries without fillers) and the shell extension system.

An n-shell over a system is a family of 2n elements of dimension n-1
satisfying the incidence relations.  Attaching the set of all n-shells on
top of dimensions 0..n-1 yields a new cube system whose top-dimensional
operations are transcribed face-by-face from the composition, degeneracy
and connection face laws; iterating this construction above a nerve gives
the tower models.
"""

from __future__ import annotations

from typing import Iterator, Optional

from . import folding
from .core import MINUS, PLUS, SIGNS, CubeSystem, Sign
from .errors import (
    BoundaryMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    NotComposable,
    ParseError,
)


def _slot(i: int, sign: Sign) -> int:
    return 2 * (i - 1) + (0 if sign == MINUS else 1)


class Shell:
    """Immutable family of faces indexed by (direction, sign)."""

    __slots__ = ("dim", "faces", "_hash")

    def __init__(self, dim: int, faces: tuple):
        self.dim = dim
        self.faces = faces  # slot order: (1,-), (1,+), (2,-), (2,+), ...
        self._hash = hash((dim, faces))

    def face(self, i: int, sign: Sign):
        if not 1 <= i <= self.dim:
            raise IndexOutOfRange("shell face", i, self.dim)
        return self.faces[_slot(i, sign)]

    def items(self):
        for i in range(1, self.dim + 1):
            for sign in SIGNS:
                yield (i, sign), self.faces[_slot(i, sign)]

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Shell)
            and self._hash == other._hash
            and self.dim == other.dim
            and self.faces == other.faces
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Shell(dim={self.dim})"


def _shell_from_dict(dim: int, faces: dict) -> Shell:
    return Shell(dim, tuple(faces[(i, s)] for i in range(1, dim + 1) for s in SIGNS))


def check_incidence(system: CubeSystem, shell: Shell) -> None:
    """Faces of faces must agree across the shell."""
    n = shell.dim
    for i in range(2, n + 1):
        for j in range(1, i):
            for a in SIGNS:
                for b in SIGNS:
                    lhs = system.face(shell.face(i, a), j, b)
                    rhs = system.face(shell.face(j, b), i - 1, a)
                    if lhs != rhs:
                        raise BoundaryMismatch(
                            f"incidence fails between faces ({i},{a}) and ({j},{b})"
                        )


def make_shell(system: CubeSystem, dim: int, faces: dict) -> Shell:
    """Validating constructor from a {(direction, sign): element} mapping."""
    if dim < 1:
        raise IndexOutOfRange("make_shell", dim, dim)
    missing = [(i, s) for i in range(1, dim + 1) for s in SIGNS if (i, s) not in faces]
    if missing:
        raise BoundaryMismatch(f"shell misses faces {missing}")
    for (i, s), f in faces.items():
        if system.dim(f) != dim - 1:
            raise BoundaryMismatch(f"face ({i},{s}) has dimension {system.dim(f)}")
    shell = _shell_from_dict(dim, faces)
    check_incidence(system, shell)
    return shell


def boundary(system: CubeSystem, x) -> Shell:
    """The shell of all faces of x (incidence holds automatically)."""
    n = system.dim(x)
    if n < 1:
        raise IndexOutOfRange("boundary", 1, n)
    return Shell(
        n, tuple(system.face(x, i, s) for i in range(1, n + 1) for s in SIGNS)
    )


# ---------------------------------------------------------------------------
# formal shell operations (faces transcribed from the corresponding laws)


def shell_compose(system: CubeSystem, s: Shell, t: Shell, i: int) -> Shell:
    n = s.dim
    if t.dim != n or not 1 <= i <= n:
        raise IndexOutOfRange("shell_compose", i, n)
    if s.face(i, PLUS) != t.face(i, MINUS):
        raise NotComposable(
            i,
            system.describe(s.face(i, PLUS)),
            system.describe(t.face(i, MINUS)),
            "shell_compose",
        )
    faces = {(i, MINUS): s.face(i, MINUS), (i, PLUS): t.face(i, PLUS)}
    for j in range(1, n + 1):
        if j == i:
            continue
        i2 = i - 1 if j < i else i
        for a in SIGNS:
            faces[(j, a)] = system.compose(s.face(j, a), t.face(j, a), i2)
    return _shell_from_dict(n, faces)


def shell_degeneracy(system: CubeSystem, a, j: int) -> Shell:
    n = system.dim(a) + 1
    if not 1 <= j <= n:
        raise IndexOutOfRange("shell_degeneracy", j, n - 1)
    faces = {}
    for i in range(1, n + 1):
        for s in SIGNS:
            if i == j:
                faces[(i, s)] = a
            elif i < j:
                faces[(i, s)] = system.degeneracy(system.face(a, i, s), j - 1)
            else:
                faces[(i, s)] = system.degeneracy(system.face(a, i - 1, s), j)
    return _shell_from_dict(n, faces)


def shell_connection(system: CubeSystem, a, j: int, sign: Sign) -> Shell:
    n = system.dim(a) + 1
    if system.dim(a) == 0 or not 1 <= j <= n - 1:
        raise IndexOutOfRange("shell_connection", j, n - 1)
    faces = {}
    for i in range(1, n + 1):
        for s in SIGNS:
            if i in (j, j + 1):
                if s == sign:
                    faces[(i, s)] = a
                else:
                    faces[(i, s)] = system.degeneracy(system.face(a, j, s), j)
            elif i < j:
                faces[(i, s)] = system.connection(system.face(a, i, s), j - 1, sign)
            else:
                faces[(i, s)] = system.connection(system.face(a, i - 1, s), j, sign)
    return _shell_from_dict(n, faces)


# ---------------------------------------------------------------------------
# the extension system


class ShellExtension(CubeSystem):
    """Cube system whose top dimension is the set of shells over the base.

    Dimensions below ``top`` delegate to the base system; the base is only
    consulted up to dimension top-1, so a taller base is silently truncated.
    Nothing above ``top`` is representable, hence the operation ceiling.
    """

    def __init__(self, base: CubeSystem, top: Optional[int] = None):
        if top is None:
            top = base.max_dim + 1
        if top < 1:
            raise ValueError("shell extension needs top >= 1")
        self.base = base
        self.top = top
        self.max_dim = top
        self.op_ceiling = top
        self._pool: Optional[tuple] = None
        self._intern: dict = {}
        self._deg_memo: dict = {}
        self._conn_memo: dict = {}
        self._comp_memo: dict = {}
        self._profile_index: Optional[list] = None

    def _canon(self, shell: Shell) -> Shell:
        return self._intern.setdefault(shell, shell)

    def _is_top(self, x) -> bool:
        return isinstance(x, Shell) and x.dim == self.top

    def dim(self, x) -> int:
        if isinstance(x, Shell):
            return x.dim
        return self.base.dim(x)

    def face(self, x, i: int, sign: Sign):
        if self._is_top(x):
            return x.face(i, sign)
        return self.base.face(x, i, sign)

    def degeneracy(self, x, i: int):
        d = self.dim(x)
        if d == self.top - 1:
            key = (x, i)
            out = self._deg_memo.get(key)
            if out is None:
                out = self._canon(shell_degeneracy(self.base, x, i))
                self._deg_memo[key] = out
            return out
        if d >= self.top:
            raise DimensionTooLarge(
                f"degeneracy from dimension {d} exceeds the extension top {self.top}"
            )
        return self.base.degeneracy(x, i)

    def connection(self, x, i: int, sign: Sign):
        d = self.dim(x)
        if d == self.top - 1:
            key = (x, i, sign)
            out = self._conn_memo.get(key)
            if out is None:
                out = self._canon(shell_connection(self.base, x, i, sign))
                self._conn_memo[key] = out
            return out
        if d >= self.top:
            raise DimensionTooLarge(
                f"connection from dimension {d} exceeds the extension top {self.top}"
            )
        return self.base.connection(x, i, sign)

    def compose(self, x, y, i: int):
        d = self.dim(x)
        if self.dim(y) != d:
            raise IndexOutOfRange("compose", i, d)
        if d == self.top:
            if not (self._is_top(x) and self._is_top(y)):
                raise DimensionTooLarge(
                    f"dimension-{d} base elements are not part of this extension"
                )
            key = (x, y, i)
            out = self._comp_memo.get(key)
            if out is None:
                out = self._canon(shell_compose(self.base, x, y, i))
                self._comp_memo[key] = out
            return out
        return self.base.compose(x, y, i)

    def cubes(self, n: int) -> tuple:
        if n < 0 or n > self.top:
            raise DimensionTooLarge(f"dimension {n} exceeds cap {self.top}")
        if n < self.top:
            return self.base.cubes(n)
        if self._pool is None:
            self._pool = tuple(
                self._canon(s) for s in enumerate_shells(self.base, self.top)
            )
        return self._pool

    def describe(self, x):
        if isinstance(x, Shell):
            return {
                "dim": x.dim,
                "faces": {
                    f"{i}{s}": self.describe(f) for (i, s), f in x.items()
                },
            }
        return self.base.describe(x)

    # -- seeded sampling without full enumeration -----------------------
    #
    # The top dimension of a tall tower can be far too large to enumerate,
    # so random top shells are assembled face pair by face pair with
    # backtracking; pinned faces support building composable mates.

    def _indexes(self) -> list:
        if self._profile_index is None:
            self._profile_index = _profile_indexes(self.base, self.top)
        return self._profile_index

    def random_top_shell(
        self, rng, pinned: Optional[dict] = None, node_budget: int = 4000
    ) -> Optional[Shell]:
        base, n = self.base, self.top
        profile_index = self._indexes()
        chosen: dict = {}
        budget = [node_budget]
        pins = pinned or {}

        def fits_pins(c, i: int, sign: Sign) -> bool:
            for (pi, ps), pv in pins.items():
                if pi > i and base.face(c, pi - 1, ps) != base.face(pv, i, sign):
                    return False
            return True

        def requirement(i: int, sign: Sign) -> tuple:
            return tuple(
                base.face(chosen[(j, b)], i - 1, sign)
                for j in range(1, i)
                for b in SIGNS
            )

        def place(i: int, sign_idx: int) -> Optional[Shell]:
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            if i > n:
                return self._canon(_shell_from_dict(n, chosen))
            sign = SIGNS[sign_idx]
            nxt = (i, 1) if sign_idx == 0 else (i + 1, 0)
            req = requirement(i, sign)
            if (i, sign) in pins:
                pv = pins[(i, sign)]
                cands = [pv] if req == tuple(
                    base.face(pv, j, b) for j in range(1, i) for b in SIGNS
                ) else []
            else:
                cands = [
                    c
                    for c in profile_index[i - 1].get(req, ())
                    if fits_pins(c, i, sign)
                ]
                rng.shuffle(cands)
            for c in cands:
                chosen[(i, sign)] = c
                result = place(*nxt)
                if result is not None:
                    return result
            chosen.pop((i, sign), None)
            return None

        return place(1, 0)

    def _assembled_sampling(self, n: int) -> bool:
        return n == self.top and self._pool is None

    def sample_element(self, n, rng):
        if self._assembled_sampling(n):
            return self.random_top_shell(rng)
        return super().sample_element(n, rng)

    def sample_pair(self, n, i, rng):
        if not self._assembled_sampling(n):
            return super().sample_pair(n, i, rng)
        x = self.random_top_shell(rng)
        if x is None:
            return None
        y = self.random_top_shell(rng, pinned={(i, MINUS): x.face(i, PLUS)})
        if y is None:
            return None
        return x, y

    def sample_triple(self, n, i, rng):
        if not self._assembled_sampling(n):
            return super().sample_triple(n, i, rng)
        y = self.random_top_shell(rng)
        if y is None:
            return None
        x = self.random_top_shell(rng, pinned={(i, PLUS): y.face(i, MINUS)})
        z = self.random_top_shell(rng, pinned={(i, MINUS): y.face(i, PLUS)})
        if x is None or z is None:
            return None
        return x, y, z

    def sample_grid(self, n, i, j, rng):
        if not self._assembled_sampling(n):
            return super().sample_grid(n, i, j, rng)
        x = self.random_top_shell(rng)
        if x is None:
            return None
        y = self.random_top_shell(rng, pinned={(i, MINUS): x.face(i, PLUS)})
        z = self.random_top_shell(rng, pinned={(j, MINUS): x.face(j, PLUS)})
        if y is None or z is None:
            return None
        w = self.random_top_shell(
            rng,
            pinned={(i, MINUS): z.face(i, PLUS), (j, MINUS): y.face(j, PLUS)},
        )
        if w is None:
            return None
        return x, y, z, w

    def parse(self, doc: dict):
        if "faces" not in doc:
            return self.base.parse(doc)
        try:
            n = int(doc["dim"])
            raw = dict(doc["faces"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed shell document: {exc}") from exc
        faces = {}
        for key, sub in raw.items():
            i, s = key[:-1], key[-1]
            if s not in SIGNS or not i.isdigit():
                raise ParseError(f"bad face key {key!r}; use e.g. '1-' or '2+'")
            faces[(int(i), s)] = self.parse(sub)
        return make_shell(self, n, faces)


def _profile_indexes(system: CubeSystem, n: int) -> list:
    """For each depth d < n, index (n-1)-elements by their first d face pairs."""
    elements = system.cubes(n - 1)
    profile_index: list[dict] = []
    for depth in range(n):
        index: dict = {}
        for x in elements:
            key = tuple(
                system.face(x, j, b) for j in range(1, depth + 1) for b in SIGNS
            )
            index.setdefault(key, []).append(x)
        profile_index.append(index)
    return profile_index


def enumerate_shells(system: CubeSystem, n: int) -> Iterator[Shell]:
    """All n-shells over the system, assembled face pair by face pair.

    When face (i, sign) is placed, its first i-1 face pairs are pinned by
    incidence with the faces already chosen, so candidates come from an
    index keyed on leading face profiles.
    """
    profile_index = _profile_indexes(system, n)
    chosen: dict = {}

    def requirement(i: int, sign: Sign) -> tuple:
        return tuple(
            system.face(chosen[(j, b)], i - 1, sign)
            for j in range(1, i)
            for b in SIGNS
        )

    def place(i: int) -> Iterator[Shell]:
        if i > n:
            yield _shell_from_dict(n, chosen)
            return
        for lower in profile_index[i - 1].get(requirement(i, MINUS), ()):
            chosen[(i, MINUS)] = lower
            for upper in profile_index[i - 1].get(requirement(i, PLUS), ()):
                chosen[(i, PLUS)] = upper
                yield from place(i + 1)
        chosen.pop((i, MINUS), None)
        chosen.pop((i, PLUS), None)

    yield from place(1)


_EXTENSIONS: dict = {}


def shell_system(base: CubeSystem, n: int) -> ShellExtension:
    """Memoized extension of ``base`` by its n-shells (base used below n only).

    An extension whose top already is n is its own shell system: its
    dimension-n elements are exactly the n-shells over its lower part.
    """
    if isinstance(base, ShellExtension) and base.top == n:
        return base
    key = (id(base), n)
    if key not in _EXTENSIONS:
        _EXTENSIONS[key] = ShellExtension(base, n)
    return _EXTENSIONS[key]


# ---------------------------------------------------------------------------
# folding shells, commutativity


def shell_fold(system: CubeSystem, s: Shell, j: int) -> Shell:
    """The elementary folding applied to a shell via the extension system."""
    return folding.psi(shell_system(system, s.dim), s, j)


def shell_big_fold(system: CubeSystem, s: Shell):
    """Full folding of a shell; returns (folded shell, N, P)."""
    result = folding.big_psi(shell_system(system, s.dim), s)
    return result.folded, result.n_face, result.p_face


def is_commutative(system: CubeSystem, s: Shell) -> bool:
    """A shell commutes when its two folded boundary composites agree."""
    if s.dim == 1:
        return s.face(1, MINUS) == s.face(1, PLUS)
    _, n_face, p_face = shell_big_fold(system, s)
    return n_face == p_face
