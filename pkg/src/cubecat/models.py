"""Finite executable models: category presentations and their cubical nerves.

A nerve n-cube is a functor from the n-fold product of the arrow poset into
a finite category: an assignment of objects to lattice vertices and
morphisms to lattice edges with every square face commuting.  Lattice
vertices are bitmasks (bit k is coordinate k+1); lattice edges are a base
vertex plus a 0-based direction whose bit is unset.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Iterator

from . import core
from .core import MINUS, PLUS, CubeSystem, Sign
from .errors import (
    CategoryLawViolation,
    DimensionTooLarge,
    IndexOutOfRange,
    NotComposable,
    ParseError,
)


# ---------------------------------------------------------------------------
# finite category presentations


class FinCatPresentation:
    """Finite category given by object list, morphism table and composition table.

    ``compose(g, f)`` is "g after f" (f applied first); the composition
    table is validated eagerly for closure, units and associativity.
    """

    def __init__(self, objects, morphisms, identities, compose_table):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)  # name -> (src, tgt)
        self.identities = dict(identities)  # object -> name
        self.table = dict(compose_table)  # (g, f) -> name
        self._hom: dict = {}
        self._fill_identity_compositions()
        self._validate()
        for name, (s, t) in self.morphisms.items():
            self._hom.setdefault((s, t), []).append(name)

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def id_of(self, obj: str) -> str:
        return self.identities[obj]

    def is_identity(self, m: str) -> bool:
        s, t = self.morphisms[m]
        return s == t and self.identities[s] == m

    def hom(self, a: str, b: str) -> tuple:
        return tuple(self._hom.get((a, b), ()))

    def compose(self, g: str, f: str) -> str:
        return self.table[(g, f)]

    def compose_path(self, path) -> str:
        """Compose a nonempty sequence of morphisms listed in application order."""
        out = path[0]
        for m in path[1:]:
            out = self.compose(m, out)
        return out

    def _fill_identity_compositions(self) -> None:
        for name, (s, t) in self.morphisms.items():
            for key, value in (
                ((self.identities.get(t), name), name),
                ((name, self.identities.get(s)), name),
            ):
                if None in key:
                    continue
                if key in self.table and self.table[key] != value:
                    raise CategoryLawViolation(
                        f"identity law broken: {key[0]} o {key[1]} = "
                        f"{self.table[key]}, expected {value}"
                    )
                self.table[key] = value

    def _validate(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise ParseError("duplicate object names")
        for obj in self.objects:
            ident = self.identities.get(obj)
            if ident is None or ident not in self.morphisms:
                raise ParseError(f"object {obj!r} lacks an identity morphism")
            if self.morphisms[ident] != (obj, obj):
                raise ParseError(f"identity of {obj!r} is not an endomorphism")
        for name, (s, t) in self.morphisms.items():
            if s not in self.objects or t not in self.objects:
                raise ParseError(f"morphism {name!r} has unknown endpoint")
        for (g, f), gf in self.table.items():
            if g not in self.morphisms or f not in self.morphisms or gf not in self.morphisms:
                raise ParseError(f"composition entry ({g}, {f}) -> {gf} names unknown morphisms")
            if self.tgt(f) != self.src(g):
                raise CategoryLawViolation(f"entry ({g}, {f}) is not composable")
            if self.morphisms[gf] != (self.src(f), self.tgt(g)):
                raise CategoryLawViolation(
                    f"composite {gf} of ({g}, {f}) has wrong endpoints"
                )
        for g in self.morphisms:
            for f in self.morphisms:
                if self.tgt(f) == self.src(g) and (g, f) not in self.table:
                    raise CategoryLawViolation(f"composition table misses ({g}, {f})")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt(f) != self.src(g):
                    continue
                gf = self.table[(g, f)]
                for h in self.morphisms:
                    if self.tgt(g) != self.src(h):
                        continue
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise CategoryLawViolation(
                            f"associativity fails on ({h}, {g}, {f})"
                        )


def _free_category(graph: dict) -> FinCatPresentation:
    """Close a finite acyclic graph under path composition."""
    try:
        vertices = list(graph["vertices"])
        edges = [(e["name"], e["src"], e["tgt"]) for e in graph["edges"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph document: {exc}") from exc
    outgoing: dict = {v: [] for v in vertices}
    for name, s, t in edges:
        if s not in outgoing or t not in outgoing:
            raise ParseError(f"edge {name!r} has unknown endpoint")
        outgoing[s].append((name, t))

    # paths are stored in application order; acyclicity keeps them finite
    paths: list[tuple] = []

    def walk(v: str, trail: tuple, seen: frozenset) -> None:
        for name, t in outgoing[v]:
            if t in seen:
                raise ParseError("graph has a cycle; free category would be infinite")
            paths.append(trail + ((name, t),))
            walk(t, trail + ((name, t),), seen | {t})

    for v in vertices:
        walk(v, ((None, v),), frozenset({v}))

    def path_name(p) -> str:
        steps = [name for name, _ in p[1:]]
        if not steps:
            return f"id:{p[0][1]}"
        return "∘".join(reversed(steps))  # "g∘f" means f first

    morphisms = {}
    identities = {}
    for v in vertices:
        ident = f"id:{v}"
        morphisms[ident] = (v, v)
        identities[v] = ident
    named: dict[tuple, str] = {}
    for p in paths:
        name = path_name(p)
        morphisms[name] = (p[0][1], p[-1][1])
        named[tuple(step[0] for step in p[1:])] = name
    named[()] = None
    table = {}
    all_paths = [((None, v),) for v in vertices] + paths
    for p in all_paths:
        for q in all_paths:
            if p[-1][1] != q[0][1]:
                continue
            combined = tuple(s[0] for s in p[1:]) + tuple(s[0] for s in q[1:])
            f = path_name(p)
            g = path_name(q)
            if not combined:
                gf = identities[p[0][1]]
            else:
                gf = named.get(combined)
                if gf is None:
                    gf = "∘".join(reversed(list(combined)))
            table[(g, f)] = gf
    return FinCatPresentation(vertices, morphisms, identities, table)


def load_fincat(document: dict) -> FinCatPresentation:
    """Build a validated presentation from a parsed JSON document.

    Two document shapes are accepted: an explicit presentation with
    "objects"/"morphisms"/"identities"/"compose" keys, or {"graph": ...}
    for the free category on a finite acyclic graph.
    """
    if not isinstance(document, dict):
        raise ParseError("category document must be a JSON object")
    if "graph" in document:
        return _free_category(document["graph"])
    try:
        objects = list(document["objects"])
        morphisms = {m["name"]: (m["src"], m["tgt"]) for m in document["morphisms"]}
        identities = dict(document["identities"])
        table = {(g, f): gf for g, f, gf in document.get("compose", [])}
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed category document: {exc}") from exc
    return FinCatPresentation(objects, morphisms, identities, table)


def load_fincat_path(path: str) -> FinCatPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return load_fincat(doc)


BUNDLED = ("terminal", "poset22", "free_square", "parallel_pair")


@lru_cache(maxsize=None)
def bundled_category(name: str) -> FinCatPresentation:
    if name not in BUNDLED:
        raise ParseError(f"unknown bundled category {name!r}; have {BUNDLED}")
    text = resources.files("cubecat.data").joinpath(f"{name}.json").read_text("utf-8")
    return load_fincat(json.loads(text))


def bundled_path(name: str) -> str:
    if name not in BUNDLED:
        raise ParseError(f"unknown bundled category {name!r}; have {BUNDLED}")
    return str(resources.files("cubecat.data").joinpath(f"{name}.json"))


# ---------------------------------------------------------------------------
# lattice bit helpers


def insert_bit(mask: int, pos: int, value: int) -> int:
    low = mask & ((1 << pos) - 1)
    high = mask >> pos
    return low | (value << pos) | (high << (pos + 1))


def remove_bit(mask: int, pos: int) -> int:
    low = mask & ((1 << pos) - 1)
    high = mask >> (pos + 1)
    return low | (high << pos)


def edge_slot(n: int, base: int, k: int) -> int:
    """Canonical index of the lattice edge at ``base`` in 0-based direction ``k``."""
    return k * (1 << (n - 1)) + remove_bit(base, k)


def edge_bases(n: int) -> Iterator[tuple]:
    """(base, direction) pairs in canonical slot order."""
    for k in range(n):
        for compact in range(1 << (n - 1)):
            yield insert_bit(compact, k, 0), k


# Index tables shared by all nerve systems: operations become pure tuple
# reindexing, with edge entries tagged ("e", slot) for a copied edge and
# ("v", vertex) for a fresh identity.


@lru_cache(maxsize=None)
def _face_tables(n: int, pos: int, bit: int):
    vmap = tuple(insert_bit(v, pos, bit) for v in range(1 << (n - 1)))
    emap = []
    for base, k in edge_bases(n - 1):
        old_k = k if k < pos else k + 1
        emap.append(edge_slot(n, insert_bit(base, pos, bit), old_k))
    return vmap, tuple(emap)


@lru_cache(maxsize=None)
def _degeneracy_tables(n: int, pos: int):
    big = n + 1
    vmap = tuple(remove_bit(v, pos) for v in range(1 << big))
    emap = []
    for base, k in edge_bases(big):
        if k == pos:
            emap.append(("v", remove_bit(base, pos)))
        else:
            old_k = k if k < pos else k - 1
            emap.append(("e", edge_slot(n, remove_bit(base, pos), old_k)))
    return vmap, tuple(emap)


@lru_cache(maxsize=None)
def _connection_tables(n: int, pos: int, sign: Sign):
    big = n + 1
    pick = min if sign == PLUS else max

    def collapse(v: int) -> int:
        merged = pick((v >> pos) & 1, (v >> (pos + 1)) & 1)
        return insert_bit(remove_bit(remove_bit(v, pos + 1), pos), pos, merged)

    vmap = tuple(collapse(v) for v in range(1 << big))
    emap = []
    for base, k in edge_bases(big):
        a, b = collapse(base), collapse(base | (1 << k))
        if a == b:
            emap.append(("v", a))
        else:
            d = (a ^ b).bit_length() - 1
            emap.append(("e", edge_slot(n, a, d)))
    return vmap, tuple(emap)


@lru_cache(maxsize=None)
def _compose_tables(n: int, pos: int):
    vmap = tuple((v >> pos) & 1 for v in range(1 << n))
    emap = []
    for base, k in edge_bases(n):
        if k == pos:
            emap.append(("j", edge_slot(n, base, pos)))
        else:
            emap.append(((base >> pos) & 1, edge_slot(n, base, k)))
    return vmap, tuple(emap)


def mask_to_bits(mask: int, n: int) -> str:
    return "".join("1" if mask & (1 << k) else "0" for k in range(n))


def bits_to_mask(bits: str) -> int:
    return sum(1 << k for k, c in enumerate(bits) if c == "1")


class NerveCube:
    """An n-cube of the nerve: vertex objects plus edge morphisms, immutable.

    The full assignment is stored (not just generating data) so equality,
    hashing and face extraction are direct.
    """

    __slots__ = ("n", "vertices", "edges", "_hash")

    def __init__(self, n: int, vertices: tuple, edges: tuple):
        self.n = n
        self.vertices = vertices
        self.edges = edges
        self._hash = hash((n, vertices, edges))

    def vertex(self, mask: int) -> str:
        return self.vertices[mask]

    def edge(self, base: int, k: int) -> str:
        return self.edges[edge_slot(self.n, base, k)]

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, NerveCube)
            and self._hash == other._hash
            and self.n == other.n
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NerveCube(dim={self.n}, vertices={self.vertices})"

    @staticmethod
    def build(n: int, vertex_fn, edge_fn) -> "NerveCube":
        vertices = tuple(vertex_fn(v) for v in range(1 << n))
        edges = []
        for k in range(n):
            for compact in range(1 << (n - 1)):
                edges.append(edge_fn(insert_bit(compact, k, 0), k))
        return NerveCube(n, vertices, tuple(edges))

    def validate(self, cat: FinCatPresentation) -> None:
        """Endpoint agreement plus commutativity of every square face."""
        n = self.n
        for base in range(1 << n):
            for k in range(n):
                if base & (1 << k):
                    continue
                m = self.edge(base, k)
                if m not in cat.morphisms:
                    raise ParseError(f"unknown morphism {m!r}")
                if cat.src(m) != self.vertex(base) or cat.tgt(m) != self.vertex(base | (1 << k)):
                    raise ParseError(
                        f"edge {m!r} at {mask_to_bits(base, n)} direction {k + 1} "
                        "does not match its endpoint objects"
                    )
        for base in range(1 << n):
            for k in range(n):
                if base & (1 << k):
                    continue
                for l in range(k + 1, n):
                    if base & (1 << l):
                        continue
                    one = cat.compose(self.edge(base | (1 << k), l), self.edge(base, k))
                    two = cat.compose(self.edge(base | (1 << l), k), self.edge(base, l))
                    if one != two:
                        raise ParseError(
                            f"square at {mask_to_bits(base, n)} in directions "
                            f"{k + 1},{l + 1} does not commute: {one} != {two}"
                        )


class NerveSystem(CubeSystem):
    """Cube system of functors from the arrow-poset powers into a finite category.

    Connections reparametrize by min (positive) or max (negative) of two
    adjacent coordinates; the orientation is pinned by the face laws, which
    the law suite re-validates on every bundled category.
    """

    op_ceiling = None

    def __init__(self, cat: FinCatPresentation, max_dim: int = 4):
        if max_dim < 1:
            raise ValueError("max_dim must be at least 1")
        self.cat = cat
        self.max_dim = max_dim
        self._pools: dict[int, tuple] = {}
        self._intern: dict = {}
        self._face_memo: dict = {}
        self._deg_memo: dict = {}
        self._conn_memo: dict = {}
        self._comp_memo: dict = {}

    def _canon(self, cube: NerveCube) -> NerveCube:
        # one canonical object per value makes equality an identity check
        return self._intern.setdefault(cube, cube)

    # -- signature ----------------------------------------------------

    def dim(self, x: NerveCube) -> int:
        return x.n

    def face(self, x: NerveCube, i: int, sign: Sign) -> NerveCube:
        key = (x, i, sign)
        out = self._face_memo.get(key)
        if out is not None:
            return out
        n = x.n
        if n == 0:
            raise IndexOutOfRange("face", i, 0)
        if not 1 <= i <= n:
            raise IndexOutOfRange("face", i, n)
        vmap, emap = _face_tables(n, i - 1, 0 if sign == MINUS else 1)
        xv, xe = x.vertices, x.edges
        out = self._canon(NerveCube(
            n - 1,
            tuple(xv[m] for m in vmap),
            tuple(xe[m] for m in emap),
        ))
        self._face_memo[key] = out
        return out

    def degeneracy(self, x: NerveCube, i: int) -> NerveCube:
        key = (x, i)
        out = self._deg_memo.get(key)
        if out is not None:
            return out
        n = x.n
        if not 1 <= i <= n + 1:
            raise IndexOutOfRange("degeneracy", i, n)
        vmap, emap = _degeneracy_tables(n, i - 1)
        xv, xe = x.vertices, x.edges
        ident = self.cat.id_of
        out = self._canon(NerveCube(
            n + 1,
            tuple(xv[m] for m in vmap),
            tuple(xe[m] if tag == "e" else ident(xv[m]) for tag, m in emap),
        ))
        self._deg_memo[key] = out
        return out

    def connection(self, x: NerveCube, i: int, sign: Sign) -> NerveCube:
        key = (x, i, sign)
        out = self._conn_memo.get(key)
        if out is not None:
            return out
        n = x.n
        if n == 0 or not 1 <= i <= n:
            raise IndexOutOfRange("connection", i, n)
        vmap, emap = _connection_tables(n, i - 1, sign)
        xv, xe = x.vertices, x.edges
        ident = self.cat.id_of
        out = self._canon(NerveCube(
            n + 1,
            tuple(xv[m] for m in vmap),
            tuple(xe[m] if tag == "e" else ident(xv[m]) for tag, m in emap),
        ))
        self._conn_memo[key] = out
        return out

    def compose(self, x: NerveCube, y: NerveCube, i: int) -> NerveCube:
        key = (x, y, i)
        out = self._comp_memo.get(key)
        if out is not None:
            return out
        n = x.n
        if n == 0 or not 1 <= i <= n or y.n != n:
            raise IndexOutOfRange("compose", i, n)
        left, right = self.face(x, i, PLUS), self.face(y, i, MINUS)
        if left != right:
            raise NotComposable(i, self.describe(left), self.describe(right), "compose")
        vmap, emap = _compose_tables(n, i - 1)
        xv, xe = x.vertices, x.edges
        yv, ye = y.vertices, y.edges
        table = self.cat.table
        out = self._canon(NerveCube(
            n,
            tuple(yv[v] if side else xv[v] for v, side in enumerate(vmap)),
            tuple(
                table[(ye[m], xe[m])]
                if tag == "j"
                else (ye[m] if tag else xe[m])
                for tag, m in emap
            ),
        ))
        self._comp_memo[key] = out
        return out

    # -- enumeration ----------------------------------------------------

    def cubes(self, n: int) -> tuple:
        if n < 0 or n > self.max_dim:
            raise DimensionTooLarge(f"dimension {n} exceeds cap {self.max_dim}")
        if n not in self._pools:
            self._pools[n] = tuple(self._canon(c) for c in self._enumerate(n))
        return self._pools[n]

    def _enumerate(self, n: int) -> Iterator[NerveCube]:
        if n == 0:
            for obj in self.cat.objects:
                yield NerveCube(0, (obj,), ())
            return
        lower = self.cubes(n - 1)
        for bottom in lower:
            for top in lower:
                yield from self._stacks(bottom, top, n)

    def _stacks(self, bottom: NerveCube, top: NerveCube, n: int) -> Iterator[NerveCube]:
        """All cubes whose direction-n lower/upper faces are bottom/top."""
        cat = self.cat
        m = n - 1
        size = 1 << m
        component: list = [None] * size

        def extend(v: int) -> Iterator[NerveCube]:
            if v == size:
                yield self._assemble(bottom, top, tuple(component), n)
                return
            for cand in cat.hom(bottom.vertex(v), top.vertex(v)):
                ok = True
                for k in range(m):
                    if not v & (1 << k):
                        continue
                    u = v & ~(1 << k)
                    if cat.compose(cand, bottom.edge(u, k)) != cat.compose(
                        top.edge(u, k), component[u]
                    ):
                        ok = False
                        break
                if ok:
                    component[v] = cand
                    yield from extend(v + 1)
            component[v] = None

        yield from extend(0)

    @staticmethod
    def _assemble(bottom: NerveCube, top: NerveCube, component: tuple, n: int) -> NerveCube:
        pos = n - 1

        def edge(v, k):
            if k == pos:
                return component[remove_bit(v, pos)]
            half = top if v & (1 << pos) else bottom
            return half.edge(remove_bit(v, pos), k)

        return NerveCube.build(
            n,
            lambda v: (top if v & (1 << pos) else bottom).vertex(remove_bit(v, pos)),
            edge,
        )

    # -- serialization ----------------------------------------------------

    def describe(self, x) -> dict:
        if not isinstance(x, NerveCube):
            raise TypeError(f"not an element of this nerve: {x!r}")
        n = x.n
        edges = {}
        for k in range(n):
            for compact in range(1 << (n - 1)):
                base = insert_bit(compact, k, 0)
                bits = list(mask_to_bits(base, n))
                bits[k] = "*"
                edges["".join(bits)] = x.edge(base, k)
        return {
            "dim": n,
            "vertices": {mask_to_bits(v, n): x.vertex(v) for v in range(1 << n)},
            "edges": edges,
        }

    def parse(self, doc: dict) -> NerveCube:
        try:
            n = int(doc["dim"])
            vdoc = dict(doc["vertices"])
            edoc = dict(doc.get("edges", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed cube document: {exc}") from exc
        if n < 0:
            raise ParseError("cube dimension must be non-negative")
        try:
            vertices = tuple(vdoc[mask_to_bits(v, n)] for v in range(1 << n))
        except KeyError as exc:
            raise ParseError(f"missing vertex entry {exc}") from exc
        edges = []
        for k in range(n):
            for compact in range(1 << (n - 1)):
                base = insert_bit(compact, k, 0)
                bits = list(mask_to_bits(base, n))
                bits[k] = "*"
                key = "".join(bits)
                if key not in edoc:
                    raise ParseError(f"missing edge entry {key!r}")
                edges.append(edoc[key])
        cube = NerveCube(n, vertices, tuple(edges))
        cube.validate(self.cat)
        return cube


class BrokenNerveSystem(NerveSystem):
    """Negative-control fixture: the second degeneracy of an edge is wired wrong.

    Every operation still returns well-formed cubes, but the degeneracy
    retraction law fails, so the law suite must flag it.
    """

    def degeneracy(self, x: NerveCube, i: int) -> NerveCube:
        if x.n == 1 and i == 2:
            return super().degeneracy(x, 1)
        return super().degeneracy(x, i)


def nerve(cat: FinCatPresentation, max_dim: int = 4) -> NerveSystem:
    return NerveSystem(cat, max_dim)


def enumerate_cubes(system: CubeSystem, n: int) -> tuple:
    """Exhaustive, duplicate-free, deterministic enumeration of dimension n."""
    return core.pool(system, n)
