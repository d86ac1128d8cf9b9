"""Cubical categories with connections, checked over finite models.

The library implements the folding calculus (elementary foldings, the
partial folding, thinness), shells and their extension systems, unique and
thin fillers, thin decompositions into generators, and the correspondence
between thin structures and connections.  Models live in
:mod:`cubecat.models`; the registry of checkable laws in
:mod:`cubecat.core`; named theorem suites in :mod:`cubecat.suites`; the
``cubecat`` command line in :mod:`cubecat.cli`.
"""

from .core import (
    MINUS,
    PLUS,
    SIGNS,
    CubeSystem,
    LawReport,
    LAWS,
    REGISTRY,
    check_axiom,
    run_axiom_suite,
)
from .arrays import (
    ComposableArray,
    ComposablePartition,
    PartitionCell,
    SymbolicCell,
    compose_array,
    compose_partition,
    render_ascii,
    resolve_symbols,
)
from .folding import (
    FoldResult,
    big_psi,
    is_j_thin,
    is_thin,
    psi,
    reconstruct_folded_shell,
)
from .shells import (
    Shell,
    ShellExtension,
    boundary,
    enumerate_shells,
    is_commutative,
    make_shell,
    shell_big_fold,
    shell_compose,
    shell_connection,
    shell_degeneracy,
    shell_fold,
    shell_system,
)
from .fillers import (
    Base,
    Compose,
    Eps,
    Gamma,
    GeneratorExpression,
    ThinStructure,
    connections_from_theta,
    evaluate,
    expression_from_doc,
    expression_to_doc,
    filler_from_fold,
    is_base_free,
    theta_from_connections,
    thin_decompose,
    thin_filler,
    unfold_step,
)
from .models import (
    BUNDLED,
    BrokenNerveSystem,
    FinCatPresentation,
    NerveCube,
    NerveSystem,
    bundled_category,
    bundled_path,
    enumerate_cubes,
    load_fincat,
    load_fincat_path,
    nerve,
)
from .suites import SUITES, SuiteConfig, run_suite, run_suites


def shell_tower(cat: FinCatPresentation, base_dim: int = 1, height: int = 1) -> CubeSystem:
    """Iterate the shell extension ``height`` times above a nerve base."""
    if height < 1:
        raise ValueError("height must be at least 1")
    system: CubeSystem = nerve(cat, base_dim)
    for top in range(base_dim + 1, base_dim + height + 1):
        system = ShellExtension(system, top)
    return system


__all__ = [name for name in dir() if not name.startswith("_")]
