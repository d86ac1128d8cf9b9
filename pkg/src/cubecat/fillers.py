"""Unique fillers, thin fillers, thin decompositions, and thin structures.

The central mechanism: a cube is recoverable from its boundary together
with any of its elementary foldings, as the rows-first composite of a
three-row partition whose outer rows are degeneracies and connections of
the boundary faces.  Iterating that step inverts the full folding, yields
the unique thin filler of a commutative shell, and rewrites any thin
element as a composite of degeneracies and connections only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import folding
from .core import MINUS, PLUS, SIGNS, CubeSystem, Sign, check_sign
from .errors import (
    MorphismViolation,
    NotCommutative,
    NotThin,
    ParseError,
    PreconditionFailed,
    PostconditionViolated,
)
from .shells import (
    Shell,
    boundary,
    enumerate_shells,
    is_commutative,
    shell_big_fold,
    shell_connection,
    shell_fold,
)

SIGN_CHARS = {MINUS: "−", PLUS: "+"}  # emitted sign strings
SIGN_PARSE = {"-": MINUS, "−": MINUS, "minus": MINUS, "+": PLUS, "plus": PLUS}


def _first_mismatch(s: Shell, t: Shell):
    for (i, sign), f in s.items():
        if t.face(i, sign) != f:
            return (i, sign)
    return None


def unfold_step(system: CubeSystem, a, s: Shell, j: int):
    """The unique x with boundary s whose direction-j folding is a.

    Built as the rows-first composite of

        [ eps_j s(j,-)    | G+_j s(j+1,+) ]
        [       a  (spanning)             ]
        [ G-_j s(j+1,-)   | eps_j s(j,+)  ]

    with direction j vertical and j+1 horizontal; the result is re-checked
    against both defining equations before being returned.
    """
    n = system.dim(a)
    if s.dim != n or not 1 <= j <= n - 1:
        raise PreconditionFailed(f"unfold_step needs dim(a) = dim(s) and 1 <= j < {n}")
    folded_shell = shell_fold(system, s, j)
    mismatch = _first_mismatch(boundary(system, a), folded_shell)
    if mismatch is not None:
        raise PreconditionFailed(
            f"boundary of a differs from the folded shell at face {mismatch}"
        )
    top = system.compose(
        system.degeneracy(s.face(j, MINUS), j),
        system.connection(s.face(j + 1, PLUS), j, PLUS),
        j + 1,
    )
    bottom = system.compose(
        system.connection(s.face(j + 1, MINUS), j, MINUS),
        system.degeneracy(s.face(j, PLUS), j),
        j + 1,
    )
    x = system.compose(system.compose(top, a, j), bottom, j)
    if folding.psi(system, x, j) != a:
        raise PostconditionViolated("unfold_step: folding the result does not give a")
    if boundary(system, x) != s:
        raise PostconditionViolated("unfold_step: result has the wrong boundary")
    return x


def filler_from_fold(system: CubeSystem, a, s: Shell):
    """The unique x with boundary s and full folding a; exists iff the
    folded shell of s equals the boundary of a."""
    n = s.dim
    if system.dim(a) != n:
        raise PreconditionFailed("filler_from_fold needs dim(a) = dim(s)")
    # sigma[j] is s folded through directions n-1 .. j+1
    sigma = [None] * n
    sigma[n - 1] = s
    for j in range(n - 1, 0, -1):
        sigma[j - 1] = shell_fold(system, sigma[j], j)
    mismatch = _first_mismatch(boundary(system, a), sigma[0])
    if mismatch is not None:
        raise PreconditionFailed(
            f"boundary of a differs from the fully folded shell at face {mismatch}"
        )
    x = a
    for j in range(1, n):
        x = unfold_step(system, x, sigma[j], j)
    if boundary(system, x) != s:
        raise PostconditionViolated("filler_from_fold: result has the wrong boundary")
    if n > 1 and folding.big_psi(system, x).folded != a:
        raise PostconditionViolated("filler_from_fold: result folds to the wrong cube")
    return x


def thin_filler(system: CubeSystem, s: Shell):
    """The unique thin element whose boundary is the commutative shell s."""
    if not is_commutative(system, s):
        raise NotCommutative(f"shell of dimension {s.dim} has distinct folded composites")
    _, u, _ = shell_big_fold(system, s)
    x = filler_from_fold(system, system.degeneracy(u, 1), s)
    if not folding.is_thin(system, x):
        raise PostconditionViolated("thin_filler produced a non-thin element")
    return x


# ---------------------------------------------------------------------------
# generator expressions


@dataclass(frozen=True)
class Eps:
    dir: int
    cube: object


@dataclass(frozen=True)
class Gamma:
    dir: int
    sign: Sign
    cube: object


@dataclass(frozen=True)
class Base:
    cube: object


@dataclass(frozen=True)
class Compose:
    dir: int
    left: "GeneratorExpression"
    right: "GeneratorExpression"


GeneratorExpression = Union[Eps, Gamma, Base, Compose]


def evaluate(system: CubeSystem, expr: GeneratorExpression):
    if isinstance(expr, Eps):
        return system.degeneracy(expr.cube, expr.dir)
    if isinstance(expr, Gamma):
        return system.connection(expr.cube, expr.dir, expr.sign)
    if isinstance(expr, Base):
        return expr.cube
    return system.compose(
        evaluate(system, expr.left), evaluate(system, expr.right), expr.dir
    )


def leaves(expr: GeneratorExpression):
    if isinstance(expr, Compose):
        yield from leaves(expr.left)
        yield from leaves(expr.right)
    else:
        yield expr


def is_base_free(expr: GeneratorExpression) -> bool:
    return not any(isinstance(leaf, Base) for leaf in leaves(expr))


def expression_to_doc(system: CubeSystem, expr: GeneratorExpression) -> dict:
    if isinstance(expr, Eps):
        return {"kind": "eps", "dir": expr.dir, "cube": system.describe(expr.cube)}
    if isinstance(expr, Gamma):
        return {
            "kind": "gamma",
            "dir": expr.dir,
            "sign": SIGN_CHARS[expr.sign],
            "cube": system.describe(expr.cube),
        }
    if isinstance(expr, Base):
        return {"kind": "base", "cube": system.describe(expr.cube)}
    return {
        "kind": "compose",
        "dir": expr.dir,
        "left": expression_to_doc(system, expr.left),
        "right": expression_to_doc(system, expr.right),
    }


def expression_from_doc(system: CubeSystem, doc: dict) -> GeneratorExpression:
    try:
        kind = doc["kind"]
        if kind == "eps":
            return Eps(int(doc["dir"]), system.parse(doc["cube"]))
        if kind == "gamma":
            sign = SIGN_PARSE.get(doc["sign"])
            if sign is None:
                raise ParseError(f"bad sign {doc['sign']!r}")
            return Gamma(int(doc["dir"]), sign, system.parse(doc["cube"]))
        if kind == "base":
            return Base(system.parse(doc["cube"]))
        if kind == "compose":
            return Compose(
                int(doc["dir"]),
                expression_from_doc(system, doc["left"]),
                expression_from_doc(system, doc["right"]),
            )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed expression document: {exc}") from exc
    raise ParseError(f"unknown expression node kind {doc.get('kind')!r}")


def thin_decompose(system: CubeSystem, x) -> GeneratorExpression:
    """Rewrite a thin element as a composite of degeneracies and connections.

    Folding x step by step records each boundary; unfolding symbolically
    replaces every step with its three-row partition, whose outer cells are
    generator leaves.  The core that remains after full folding is itself a
    first degeneracy, so the result has no base leaf.
    """
    if not folding.is_thin(system, x):
        raise NotThin("only thin elements decompose into generators")
    n = system.dim(x)
    chain = [x]
    for k in range(n - 1, 0, -1):
        chain.append(folding.psi(system, chain[-1], k))
    chain.reverse()  # chain[k] is x folded through directions n-1 .. k+1
    core = chain[0]
    expr: GeneratorExpression = Eps(1, system.face(core, 1, MINUS))
    for k in range(1, n):
        s = boundary(system, chain[k])
        top = Compose(
            k + 1,
            Eps(k, s.face(k, MINUS)),
            Gamma(k, PLUS, s.face(k + 1, PLUS)),
        )
        bottom = Compose(
            k + 1,
            Gamma(k, MINUS, s.face(k + 1, MINUS)),
            Eps(k, s.face(k, PLUS)),
        )
        expr = Compose(k, Compose(k, top, expr), bottom)
    if evaluate(system, expr) != x:
        raise PostconditionViolated("thin decomposition does not evaluate back")
    return expr


# ---------------------------------------------------------------------------
# thin structures


class ThinStructure:
    """Extensional filler assignment for commutative shells at one dimension.

    theta is materialized on demand and memoized, so concurrent queries for
    the same shell always produce the identical element.
    """

    def __init__(self, system: CubeSystem, top: int, fill: Callable[[Shell], object]):
        self.system = system
        self.top = top
        self._fill = fill
        self._memo: dict = {}

    def __call__(self, s: Shell):
        if s.dim != self.top:
            raise PreconditionFailed(
                f"thin structure is defined at dimension {self.top}, got {s.dim}"
            )
        if not is_commutative(self.system, s):
            raise NotCommutative("thin structures are defined on commutative shells only")
        if s not in self._memo:
            self._memo[s] = self._fill(s)
        return self._memo[s]

    def domain(self) -> tuple:
        """All commutative shells at the structure's dimension (enumerable models)."""
        return tuple(
            s
            for s in enumerate_shells(self.system, self.top)
            if is_commutative(self.system, s)
        )


def theta_from_connections(
    system: CubeSystem, top: Optional[int] = None, *, spot_check: bool = True
) -> ThinStructure:
    """The thin structure induced by the system's own connections.

    Sends every commutative shell to its unique thin filler; in particular
    degenerate shells map to degeneracies and connection shells map to
    connections.  A quick law check at low dimension rejects plainly broken
    models up front.
    """
    if top is None:
        top = system.max_dim
    if spot_check:
        from .core import run_axiom_suite

        for report in run_axiom_suite(
            system, max_dim=min(2, top), exhaustive_dim=2, samples=0
        ):
            if not report.passed:
                from .errors import AxiomFailure

                raise AxiomFailure(report)
    return ThinStructure(system, top, lambda s: thin_filler(system, s))


class ConnectionOverrideSystem(CubeSystem):
    """A base system with its top-dimension connections replaced.

    Used to close the loop between thin structures and connections: the
    override supplies ``gamma`` only for elements one below the top; all
    other operations delegate.
    """

    def __init__(self, base: CubeSystem, top: int, gamma: Callable):
        self.base = base
        self.top = top
        self.gamma = gamma
        self.max_dim = top
        self.op_ceiling = top

    def dim(self, x):
        return self.base.dim(x)

    def face(self, x, i, sign):
        return self.base.face(x, i, sign)

    def degeneracy(self, x, i):
        return self.base.degeneracy(x, i)

    def connection(self, x, i, sign):
        if self.base.dim(x) == self.top - 1:
            return self.gamma(x, i, sign)
        return self.base.connection(x, i, sign)

    def compose(self, x, y, i):
        return self.base.compose(x, y, i)

    def cubes(self, n):
        return self.base.cubes(n)

    def describe(self, x):
        return self.base.describe(x)

    def parse(self, doc):
        return self.base.parse(doc)


def connections_from_theta(theta: ThinStructure) -> ConnectionOverrideSystem:
    """Read connections off a thin structure and re-validate their laws.

    The induced map sends a to the filler of the formal connection shell on
    a.  Face, cancellation and transport laws are checked exhaustively over
    the enumerable model; a violation means theta was not a morphism.
    """
    system, top = theta.system, theta.top

    def gamma(a, i: int, sign: Sign):
        check_sign(sign)
        return theta(shell_connection(system, a, i, sign))

    override = ConnectionOverrideSystem(system, top, gamma)
    _validate_connections(override, top)
    return override


def _validate_connections(override: ConnectionOverrideSystem, top: int) -> None:
    from .core import composable_pairs

    system = override
    pool = system.cubes(top - 1)
    for a in pool:
        for i in range(1, top):
            for g in SIGNS:
                cx = system.connection(a, i, g)
                for m in range(1, top + 1):
                    for al in SIGNS:
                        lhs = system.face(cx, m, al)
                        if m in (i, i + 1):
                            rhs = a if al == g else system.degeneracy(
                                system.face(a, i, al), i
                            )
                        elif m < i:
                            rhs = system.connection(system.face(a, m, al), i - 1, g)
                        else:
                            rhs = system.connection(system.face(a, m - 1, al), i, g)
                        if lhs != rhs:
                            raise MorphismViolation(
                                f"induced connection breaks a face law at ({m},{al})"
                            )
                plus = system.connection(a, i, PLUS)
                minus = system.connection(a, i, MINUS)
                if system.compose(plus, minus, i + 1) != system.degeneracy(a, i):
                    raise MorphismViolation("induced connections do not cancel")
                if system.compose(plus, minus, i) != system.degeneracy(a, i + 1):
                    raise MorphismViolation("induced connections do not cancel")
    for i in range(1, top):
        for a, b in composable_pairs(system, pool, i):
            ab = system.compose(a, b, i)
            lhs = system.connection(ab, i, PLUS)
            rhs = system.compose(
                system.compose(
                    system.connection(a, i, PLUS), system.degeneracy(a, i + 1), i + 1
                ),
                system.compose(
                    system.degeneracy(a, i), system.connection(b, i, PLUS), i + 1
                ),
                i,
            )
            if lhs != rhs:
                raise MorphismViolation("induced connections break the transport law")
