"""Concrete realisations of the Sylow subgroups: normal forms and extension towers."""

from .normal_form import (
    CollectionError,
    NormalForm,
    NormalFormGroup,
    SylowContext,
    make_context,
    nf_commutator,
    nf_inv,
    nf_mul,
    nf_pow,
    normal_form_group,
    theta,
)
from .tower import (
    AbelianLevel,
    ExtensionLevel,
    ExtensionTower,
    TowerError,
    VerificationReport,
    assemble_tower,
    build_tower,
    cross_check,
    cross_check_report,
    tower_spec,
    tower_verify,
    with_trivial_anchor,
)
