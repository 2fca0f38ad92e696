"""Stable categories of modules over bound quiver algebras, over F_p."""

from .balance import (
    BalanceReport,
    SerreClass,
    check_hereditary,
    check_map_detects_mono,
    check_serre_balance,
    check_serre_prop,
    check_thm46_cond3,
    check_thm54_cond5,
    check_weak_balance_sufficient,
    search_coincidence_failure,
    search_counterexample,
    serre_torsion,
)
from .catalog import Scenario, builtin
from .exceptions import *  # noqa: F401,F403
from .linalg import Field, Subspace
from .modules import (
    cokernel,
    direct_sum,
    ext1,
    extension_from_cocycle,
    hom,
    hom_basis,
    image,
    injective_envelope,
    is_injective,
    is_projective,
    kernel,
    projective_cover,
    pullback,
    pushout,
    splitness,
)
from .quiver import (
    Morphism,
    PathAlgebra,
    Quiver,
    Representation,
    injective,
    opposite,
    projective,
    simple,
)
from .stable import (
    SerreContext,
    StableContext,
    StableVerdict,
    approximation,
    epi_representative,
    ideal_basis,
    is_in_add,
    is_stable_epi,
    is_stable_iso,
    is_stable_mono,
    is_stable_strong_epi,
    is_stable_strong_mono,
    is_stable_zero,
    loop_suspension,
    stable_hom_dim,
    strong_mono_representative,
)
from .workspace import Workspace, export_workspace, parse_workspace

__version__ = "0.1.0"
