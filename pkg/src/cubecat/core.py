"""Abstract cube-system signature and the registry of checkable laws.

A cube system packages indexed sets of elements ("cubes") of dimensions
0..max_dim together with faces, degeneracies, connections and partial
compositions.  Everything downstream (folding, shells, fillers) is written
against this signature, so finite models and the shell extension plug in
interchangeably.

Direction indices are 1-based everywhere.  Signs are the two strings "-"
and "+".
"""

from __future__ import annotations

import itertools
import random
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Optional

from .errors import (
    DimensionTooLarge,
    MalformedSample,
    UnknownLaw,
)

MINUS = "-"
PLUS = "+"
SIGNS = (MINUS, PLUS)

Sign = str


def check_sign(sign: Sign) -> None:
    if sign not in SIGNS:
        raise ValueError(f"sign must be '-' or '+', got {sign!r}")


class CubeSystem(ABC):
    """Signature every model must provide.

    ``max_dim`` bounds enumeration; ``op_ceiling`` bounds the dimension of
    elements an operation may construct (None means unbounded).  The shell
    extension cannot represent anything above its top dimension, so its
    ceiling equals its top; nerve models can build cubes of any dimension
    on demand.

    All elements are immutable values with structural (decidable) equality,
    and every operation is a pure function of its inputs, so instances are
    safe to share across threads.
    """

    max_dim: int
    op_ceiling: Optional[int] = None

    @abstractmethod
    def dim(self, x) -> int: ...

    @abstractmethod
    def face(self, x, i: int, sign: Sign): ...

    @abstractmethod
    def degeneracy(self, x, i: int): ...

    @abstractmethod
    def connection(self, x, i: int, sign: Sign): ...

    @abstractmethod
    def compose(self, x, y, i: int): ...

    @abstractmethod
    def cubes(self, n: int) -> tuple:
        """Exhaustive, duplicate-free, deterministically ordered dimension-n elements."""

    @abstractmethod
    def describe(self, x) -> Any:
        """JSON-serializable rendering of an element, for reports."""

    def within_ceiling(self, n: int) -> bool:
        return self.op_ceiling is None or n <= self.op_ceiling

    # -- seeded sampling hooks (defaults draw from the enumerated pool) ----

    def _minus_index(self, n: int, i: int) -> dict:
        cache = getattr(self, "_sample_idx_cache", None)
        if cache is None:
            cache = self._sample_idx_cache = {}
        key = (n, i)
        if key not in cache:
            index: dict = {}
            for x in pool(self, n):
                index.setdefault(self.face(x, i, MINUS), []).append(x)
            cache[key] = index
        return cache[key]

    def sample_element(self, n: int, rng):
        elements = pool(self, n)
        return rng.choice(elements) if elements else None

    def sample_pair(self, n: int, i: int, rng):
        x = self.sample_element(n, rng)
        if x is None:
            return None
        ys = self._minus_index(n, i).get(self.face(x, i, PLUS))
        if not ys:
            return None
        return x, rng.choice(ys)

    def sample_triple(self, n: int, i: int, rng):
        pair = self.sample_pair(n, i, rng)
        if pair is None:
            return None
        x, y = pair
        zs = self._minus_index(n, i).get(self.face(y, i, PLUS))
        if not zs:
            return None
        return x, y, rng.choice(zs)

    def sample_grid(self, n: int, i: int, j: int, rng):
        pair = self.sample_pair(n, i, rng)
        if pair is None:
            return None
        x, y = pair
        zs = self._minus_index(n, j).get(self.face(x, j, PLUS))
        if not zs:
            return None
        z = rng.choice(zs)
        fy = self.face(y, j, PLUS)
        ws = [
            w
            for w in self._minus_index(n, i).get(self.face(z, i, PLUS), ())
            if self.face(w, j, MINUS) == fy
        ]
        if not ws:
            return None
        return x, y, z, rng.choice(ws)


def is_degenerate_at(system: CubeSystem, x, i: int) -> bool:
    """True iff x lies in the image of the i-th degeneracy.

    Uses the retraction test x == eps_i(face_i^- x), which avoids asking
    models for a degeneracy-image oracle.
    """
    return x == system.degeneracy(system.face(x, i, MINUS), i)


# ---------------------------------------------------------------------------
# pools, composability indexes, sampling


def pool(system: CubeSystem, n: int) -> tuple:
    if n < 0 or n > system.max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds cap {system.max_dim}")
    return system.cubes(n)


def pair_index(system: CubeSystem, elements: Iterable, i: int):
    """Index elements by their lower/upper face in direction i."""
    by_plus: dict = {}
    by_minus: dict = {}
    for x in elements:
        by_plus.setdefault(system.face(x, i, PLUS), []).append(x)
        by_minus.setdefault(system.face(x, i, MINUS), []).append(x)
    return by_plus, by_minus


def composable_pairs(system: CubeSystem, elements, i: int) -> Iterator[tuple]:
    by_plus, by_minus = pair_index(system, elements, i)
    for f, lefts in by_plus.items():
        rights = by_minus.get(f)
        if not rights:
            continue
        for x in lefts:
            for y in rights:
                yield x, y


def composable_triples(system: CubeSystem, elements, i: int) -> Iterator[tuple]:
    by_plus, by_minus = pair_index(system, elements, i)
    for x, y in composable_pairs(system, elements, i):
        for z in by_minus.get(system.face(y, i, PLUS), ()):
            yield x, y, z


def interchange_grids(system: CubeSystem, elements, i: int, j: int) -> Iterator[tuple]:
    """(x, y, z, w) with x,y and z,w i-composable and x,z and y,w j-composable."""
    _, i_minus = pair_index(system, elements, i)
    _, j_minus = pair_index(system, elements, j)
    by_both: dict = {}
    for w in elements:
        key = (system.face(w, i, MINUS), system.face(w, j, MINUS))
        by_both.setdefault(key, []).append(w)
    for x in elements:
        ys = i_minus.get(system.face(x, i, PLUS), ())
        if not ys:
            continue
        zs = j_minus.get(system.face(x, j, PLUS), ())
        if not zs:
            continue
        for y in ys:
            fy = system.face(y, j, PLUS)
            for z in zs:
                key = (system.face(z, i, PLUS), fy)
                for w in by_both.get(key, ()):
                    yield x, y, z, w


# ---------------------------------------------------------------------------
# law registry


@dataclass(frozen=True)
class Law:
    """One named, closed identity of the signature.

    ``kind`` fixes the binding shape: "element" laws bind one cube and range
    over all internal indices themselves; "pair"/"triple" laws bind
    composable tuples plus the composition direction; "grid" laws bind a
    2x2 composable grid plus the two directions.  ``lift`` is how far above
    the bound dimension the law's terms climb, used to skip instantiations
    a bounded model cannot represent.  ``note`` records which routine in
    this package leans on the law.  ``bulk`` optionally replaces the
    generic exhaustive loop with a fused one (grid counts grow fast).
    """

    law_id: str
    kind: str
    min_dim: int
    lift: int
    note: str
    equations: Callable
    bulk: Optional[Callable] = None


def _eq_face_face(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for i in range(2, n + 1):
        for j in range(1, i):
            for a, bt in itertools.product(SIGNS, SIGNS):
                yield (
                    f"d{bt}{j} d{a}{i}",
                    sys.face(sys.face(x, i, a), j, bt),
                    sys.face(sys.face(x, j, bt), i - 1, a),
                )


def _eq_eps_face(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for j in range(1, n + 2):
        ex = sys.degeneracy(x, j)
        for i in range(1, n + 2):
            for a in SIGNS:
                lhs = sys.face(ex, i, a)
                if i == j:
                    rhs = x
                elif i < j:
                    rhs = sys.degeneracy(sys.face(x, i, a), j - 1)
                else:
                    rhs = sys.degeneracy(sys.face(x, i - 1, a), j)
                yield (f"d{a}{i} e{j}", lhs, rhs)


def _eq_eps_eps(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for j in range(1, n + 2):
        for i in range(1, j + 1):
            yield (
                f"e{i} e{j}",
                sys.degeneracy(sys.degeneracy(x, j), i),
                sys.degeneracy(sys.degeneracy(x, i), j + 1),
            )


def _eq_eps_unit(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for i in range(1, n + 1):
        left = sys.degeneracy(sys.face(x, i, MINUS), i)
        right = sys.degeneracy(sys.face(x, i, PLUS), i)
        yield (f"left unit o{i}", sys.compose(left, x, i), x)
        yield (f"right unit o{i}", sys.compose(x, right, i), x)


def _eq_comp_face(sys: CubeSystem, b) -> Iterator:
    x, y, i = b["x"], b["y"], b["i"]
    n = sys.dim(x)
    z = sys.compose(x, y, i)
    yield (f"d-{i} (x o{i} y)", sys.face(z, i, MINUS), sys.face(x, i, MINUS))
    yield (f"d+{i} (x o{i} y)", sys.face(z, i, PLUS), sys.face(y, i, PLUS))
    for j in range(1, n + 1):
        if j == i:
            continue
        i2 = i - 1 if j < i else i
        for a in SIGNS:
            yield (
                f"d{a}{j} (x o{i} y)",
                sys.face(z, j, a),
                sys.compose(sys.face(x, j, a), sys.face(y, j, a), i2),
            )


def _eq_assoc(sys: CubeSystem, b) -> Iterator:
    x, y, z, i = b["x"], b["y"], b["z"], b["i"]
    yield (
        f"assoc o{i}",
        sys.compose(sys.compose(x, y, i), z, i),
        sys.compose(x, sys.compose(y, z, i), i),
    )


def _eq_interchange(sys: CubeSystem, b) -> Iterator:
    x, y, z, w, i, j = b["x"], b["y"], b["z"], b["w"], b["i"], b["j"]
    yield (
        f"interchange o{i}/o{j}",
        sys.compose(sys.compose(x, y, i), sys.compose(z, w, i), j),
        sys.compose(sys.compose(x, z, j), sys.compose(y, w, j), i),
    )


def _eq_eps_comp(sys: CubeSystem, b) -> Iterator:
    x, y, i = b["x"], b["y"], b["i"]
    n = sys.dim(x)
    z = sys.compose(x, y, i)
    for j in range(1, n + 2):
        i2 = i + 1 if j <= i else i
        yield (
            f"e{j} (x o{i} y)",
            sys.degeneracy(z, j),
            sys.compose(sys.degeneracy(x, j), sys.degeneracy(y, j), i2),
        )


def _eq_gamma_face(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for i in range(1, n + 1):
        for g in SIGNS:
            cx = sys.connection(x, i, g)
            for m in range(1, n + 2):
                for a in SIGNS:
                    lhs = sys.face(cx, m, a)
                    if m in (i, i + 1):
                        if a == g:
                            rhs = x
                        else:
                            rhs = sys.degeneracy(sys.face(x, i, a), i)
                    elif m < i:
                        rhs = sys.connection(sys.face(x, m, a), i - 1, g)
                    else:
                        rhs = sys.connection(sys.face(x, m - 1, a), i, g)
                    yield (f"d{a}{m} G{g}{i}", lhs, rhs)


def _eq_gamma_eps(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for j in range(1, n + 2):
        ex = sys.degeneracy(x, j)
        for i in range(1, n + 2):
            for g in SIGNS:
                lhs = sys.connection(ex, i, g)
                if j == i:
                    rhs = sys.degeneracy(sys.degeneracy(x, i), i)
                elif j < i:
                    rhs = sys.degeneracy(sys.connection(x, i - 1, g), j)
                else:
                    rhs = sys.degeneracy(sys.connection(x, i, g), j + 1)
                yield (f"G{g}{i} e{j}", lhs, rhs)


def _eq_gamma_gamma(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for j in range(1, n + 1):
        for bt in SIGNS:
            cx = sys.connection(x, j, bt)
            for i in range(1, n + 2):
                for a in SIGNS:
                    # mixed signs at equal or upper-adjacent index have no plain law
                    if i in (j, j + 1) and a != bt:
                        continue
                    lhs = sys.connection(cx, i, a)
                    if i == j:
                        rhs = sys.connection(cx, i + 1, a)
                    elif i == j + 1:
                        rhs = sys.connection(cx, j, bt)
                    elif i < j:
                        rhs = sys.connection(sys.connection(x, i, a), j + 1, bt)
                    else:
                        rhs = sys.connection(sys.connection(x, i - 1, a), j, bt)
                    yield (f"G{a}{i} G{bt}{j}", lhs, rhs)


def _eq_gamma_comp(sys: CubeSystem, b) -> Iterator:
    x, y, i = b["x"], b["y"], b["i"]
    n = sys.dim(x)
    z = sys.compose(x, y, i)
    for j in range(1, n + 1):
        if j == i:
            continue
        i2 = i + 1 if j < i else i
        for g in SIGNS:
            yield (
                f"G{g}{j} (x o{i} y)",
                sys.connection(z, j, g),
                sys.compose(sys.connection(x, j, g), sys.connection(y, j, g), i2),
            )


def _eq_transport(sys: CubeSystem, b) -> Iterator:
    a, bb, i = b["x"], b["y"], b["i"]
    top = sys.compose(sys.connection(a, i, PLUS), sys.degeneracy(a, i + 1), i + 1)
    bottom = sys.compose(sys.degeneracy(a, i), sys.connection(bb, i, PLUS), i + 1)
    yield (
        f"G+{i} of o{i}-composite",
        sys.connection(sys.compose(a, bb, i), i, PLUS),
        sys.compose(top, bottom, i),
    )


def _eq_transport_minus(sys: CubeSystem, b) -> Iterator:
    a, bb, i = b["x"], b["y"], b["i"]
    top = sys.compose(sys.connection(a, i, MINUS), sys.degeneracy(bb, i), i + 1)
    bottom = sys.compose(sys.degeneracy(bb, i + 1), sys.connection(bb, i, MINUS), i + 1)
    yield (
        f"G-{i} of o{i}-composite",
        sys.connection(sys.compose(a, bb, i), i, MINUS),
        sys.compose(top, bottom, i),
    )


def _eq_gamma_cancel(sys: CubeSystem, b) -> Iterator:
    x = b["x"]
    n = sys.dim(x)
    for i in range(1, n + 1):
        plus = sys.connection(x, i, PLUS)
        minus = sys.connection(x, i, MINUS)
        yield (f"G+{i} o{i+1} G-{i}", sys.compose(plus, minus, i + 1), sys.degeneracy(x, i))
        yield (f"G+{i} o{i} G-{i}", sys.compose(plus, minus, i), sys.degeneracy(x, i + 1))


def _bulk_interchange(system: CubeSystem, elements, n: int, report) -> bool:
    compose = system.compose
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for x, y, z, w in interchange_grids(system, elements, i, j):
                report.instances += 1
                lhs = compose(compose(x, y, i), compose(z, w, i), j)
                rhs = compose(compose(x, z, j), compose(y, w, j), i)
                if lhs is not rhs and lhs != rhs:
                    report.passed = False
                    report.counterexample = {
                        "binding": _describe_binding(
                            system,
                            {"x": x, "y": y, "z": z, "w": w, "i": i, "j": j},
                        ),
                        "equation": f"interchange o{i}/o{j}",
                        "lhs": system.describe(lhs),
                        "rhs": system.describe(rhs),
                    }
                    return False
    return True


LAWS = (
    Law("FACE-FACE", "element", 2, 0,
        "shell incidence and boundary extraction assume faces commute",
        _eq_face_face),
    Law("EPS-FACE", "element", 0, 1,
        "unit rows of the unfold partition need faces of degeneracies",
        _eq_eps_face),
    Law("EPS-EPS", "element", 0, 2,
        "doubly degenerate corner cells of identity arrays",
        _eq_eps_eps),
    Law("EPS-UNIT", "element", 1, 0,
        "spanning cells in partitions absorb their unit paddings",
        _eq_eps_unit),
    Law("COMP-FACE", "pair", 1, 0,
        "shell composition transcribes these face formulas",
        _eq_comp_face),
    Law("ASSOC", "triple", 1, 0,
        "triple rows in folding composites are written without brackets",
        _eq_assoc),
    Law("INTERCHANGE", "grid", 2, 0,
        "row-first and column-first array evaluation agree",
        _eq_interchange, bulk=_bulk_interchange),
    Law("EPS-COMP", "pair", 1, 1,
        "thinness closure pushes degeneracies through composites",
        _eq_eps_comp),
    Law("GAMMA-FACE", "element", 1, 1,
        "composability of the elementary folding row",
        _eq_gamma_face),
    Law("GAMMA-EPS", "element", 0, 2,
        "folding a degenerate cube collapses to a double degeneracy",
        _eq_gamma_eps),
    Law("GAMMA-GAMMA", "element", 1, 2,
        "folding a connection twice, as in nested thinness checks",
        _eq_gamma_gamma),
    Law("GAMMA-COMP", "pair", 1, 1,
        "connections distribute over composites in other directions",
        _eq_gamma_comp),
    Law("TRANSPORT", "pair", 1, 1,
        "expands a connection of a composite into a 2x2 array",
        _eq_transport),
    Law("TRANSPORT-MINUS", "pair", 1, 1,
        "mirror form fixed by model validation, used for symmetry checks",
        _eq_transport_minus),
    Law("GAMMA-CANCEL", "element", 1, 1,
        "collapses the folded row around a cube to a degeneracy",
        _eq_gamma_cancel),
)

REGISTRY = {law.law_id: law for law in LAWS}


@dataclass
class LawReport:
    """Outcome of checking one law or theorem suite over a sample."""

    law_id: str
    instances: int = 0
    passed: bool = True
    counterexample: Optional[dict] = None
    wall_ms: float = 0.0  # informational; excluded from canonical reports

    def as_dict(self) -> dict:
        return {
            "id": self.law_id,
            "instances": self.instances,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def _describe_binding(system: CubeSystem, binding: dict) -> dict:
    out = {}
    for k, v in binding.items():
        out[k] = v if isinstance(v, int) else system.describe(v)
    return out


def _run_instances(system, law, bindings, report):
    from .errors import CubicalError

    for binding in bindings:
        report.instances += 1
        try:
            for label, lhs, rhs in law.equations(system, binding):
                if lhs != rhs:
                    report.passed = False
                    report.counterexample = {
                        "binding": _describe_binding(system, binding),
                        "equation": label,
                        "lhs": system.describe(lhs),
                        "rhs": system.describe(rhs),
                    }
                    return False
        except CubicalError as exc:
            # a law-abiding model never raises here; treat as a failure
            report.passed = False
            report.counterexample = {
                "binding": _describe_binding(system, binding),
                "error": type(exc).__name__,
                "message": str(exc),
            }
            return False
    return True


def _exhaustive_bindings(system, law, n) -> Iterator[dict]:
    elements = pool(system, n)
    if law.kind == "element":
        for x in elements:
            yield {"x": x}
    elif law.kind == "pair":
        for i in range(1, n + 1):
            for x, y in composable_pairs(system, elements, i):
                yield {"x": x, "y": y, "i": i}
    elif law.kind == "triple":
        for i in range(1, n + 1):
            for x, y, z in composable_triples(system, elements, i):
                yield {"x": x, "y": y, "z": z, "i": i}
    elif law.kind == "grid":
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                for x, y, z, w in interchange_grids(system, elements, i, j):
                    yield {"x": x, "y": y, "z": z, "w": w, "i": i, "j": j}
    else:  # pragma: no cover
        raise ValueError(law.kind)


def _sampled_bindings(system, law, n, count, rng) -> Iterator[dict]:
    """Seeded random bindings via the system's sampling hooks.

    Yields fewer than ``count`` when composable mates are too scarce; the
    report's instance count records what was actually checked.
    """
    produced, attempts = 0, 0
    limit = count * 20
    while produced < count and attempts < limit:
        attempts += 1
        if law.kind == "element":
            x = system.sample_element(n, rng)
            if x is None:
                return
            yield {"x": x}
            produced += 1
            continue
        i = rng.randint(1, n)
        if law.kind == "pair":
            got = system.sample_pair(n, i, rng)
            if got is None:
                continue
            yield {"x": got[0], "y": got[1], "i": i}
        elif law.kind == "triple":
            got = system.sample_triple(n, i, rng)
            if got is None:
                continue
            yield {"x": got[0], "y": got[1], "z": got[2], "i": i}
        else:
            j = rng.choice([d for d in range(1, n + 1) if d != i])
            got = system.sample_grid(n, i, j, rng)
            if got is None:
                continue
            yield {
                "x": got[0],
                "y": got[1],
                "z": got[2],
                "w": got[3],
                "i": i,
                "j": j,
            }
        produced += 1


def law_dim_range(system: CubeSystem, law: Law, max_dim: int):
    """Dimensions at which the law can be instantiated in this system."""
    top = min(max_dim, system.max_dim)
    for n in range(law.min_dim, top + 1):
        if system.within_ceiling(n + law.lift):
            yield n


def run_law(
    system: CubeSystem,
    law: Law,
    *,
    max_dim: int,
    exhaustive_dim: int = 3,
    samples: int = 500,
    seed: int = 0,
) -> LawReport:
    report = LawReport(law_id=law.law_id)
    start = time.perf_counter()
    from .errors import CubicalError

    for n in law_dim_range(system, law, max_dim):
        if n <= exhaustive_dim:
            if law.bulk is not None:
                try:
                    ok = law.bulk(system, pool(system, n), n, report)
                except CubicalError as exc:
                    report.passed = False
                    report.counterexample = {
                        "error": type(exc).__name__,
                        "message": str(exc),
                    }
                    ok = False
                if not ok:
                    break
                continue
            bindings = _exhaustive_bindings(system, law, n)
        else:
            rng = random.Random((seed, law.law_id, n).__repr__())
            bindings = _sampled_bindings(system, law, n, samples, rng)
        if not _run_instances(system, law, bindings, report):
            break
    report.wall_ms = (time.perf_counter() - start) * 1000.0
    return report


def run_axiom_suite(
    system: CubeSystem,
    *,
    max_dim: Optional[int] = None,
    exhaustive_dim: int = 3,
    samples: int = 500,
    seed: int = 0,
    law_ids: Optional[Iterable[str]] = None,
) -> list[LawReport]:
    """Check registry laws over the system; results ordered by law id position."""
    if max_dim is None:
        max_dim = system.max_dim
    selected = list(LAWS)
    if law_ids is not None:
        unknown = set(law_ids) - set(REGISTRY)
        if unknown:
            raise UnknownLaw(", ".join(sorted(unknown)))
        selected = [law for law in LAWS if law.law_id in set(law_ids)]
    return [
        run_law(
            system,
            law,
            max_dim=max_dim,
            exhaustive_dim=exhaustive_dim,
            samples=samples,
            seed=seed,
        )
        for law in selected
    ]


def _bind_sample(system: CubeSystem, law: Law, sample: list) -> list[dict]:
    arity = {"element": 1, "pair": 2, "triple": 3, "grid": 4}[law.kind]
    if len(sample) != arity:
        raise MalformedSample(
            f"{law.law_id} binds {arity} element(s), got {len(sample)}"
        )
    dims = {system.dim(x) for x in sample}
    if len(dims) != 1:
        raise MalformedSample(f"{law.law_id}: sample elements have mixed dimensions {dims}")
    n = dims.pop()
    if n < law.min_dim:
        raise MalformedSample(f"{law.law_id} needs dimension >= {law.min_dim}, got {n}")
    if law.kind == "element":
        return [{"x": sample[0]}]
    bindings = []
    if law.kind == "pair":
        x, y = sample
        for i in range(1, n + 1):
            if system.face(x, i, PLUS) == system.face(y, i, MINUS):
                bindings.append({"x": x, "y": y, "i": i})
    elif law.kind == "triple":
        x, y, z = sample
        for i in range(1, n + 1):
            if system.face(x, i, PLUS) == system.face(y, i, MINUS) and system.face(
                y, i, PLUS
            ) == system.face(z, i, MINUS):
                bindings.append({"x": x, "y": y, "z": z, "i": i})
    else:
        x, y, z, w = sample
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                if (
                    system.face(x, i, PLUS) == system.face(y, i, MINUS)
                    and system.face(z, i, PLUS) == system.face(w, i, MINUS)
                    and system.face(x, j, PLUS) == system.face(z, j, MINUS)
                    and system.face(y, j, PLUS) == system.face(w, j, MINUS)
                ):
                    bindings.append({"x": x, "y": y, "z": z, "w": w, "i": i, "j": j})
    if not bindings:
        raise MalformedSample(f"{law.law_id}: sample admits no composable instantiation")
    return bindings


def check_axiom(system: CubeSystem, law_id: str, sample: list) -> LawReport:
    """Check one named law against user-supplied bound elements."""
    law = REGISTRY.get(law_id)
    if law is None:
        raise UnknownLaw(law_id)
    bindings = _bind_sample(system, law, list(sample))
    if not system.within_ceiling(system.dim(sample[0]) + law.lift):
        raise MalformedSample(
            f"{law_id}: instantiation would exceed the model's dimension ceiling"
        )
    report = LawReport(law_id=law_id)
    start = time.perf_counter()
    _run_instances(system, law, bindings, report)
    report.wall_ms = (time.perf_counter() - start) * 1000.0
    return report
