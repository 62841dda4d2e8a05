"""Exact fusion rings of affine sl(2) at generic and admissible levels.

The package computes the fusion algebras of generalized Weyl modules and of
admissible representations of affine sl(2), the companion tensor
decompositions for sl(2) and osp(1|2), the Drinfeld-Sokolov map onto Virasoro
fusion, and genus-g dimension counts.  Everything is exact: integers and
:class:`fractions.Fraction`, no floating point.
"""

__version__ = "0.1.0"

from fusion_rings.ring import FormalSum, LinearForm, add, bilinear_product, lf_solve, normalize
from fusion_rings.tensor_cats import (
    OspIrrep,
    osp_forget_to_sl2,
    osp_tensor,
    osp_tensor_oracle,
    osp_truncated_tensor,
    sl2_tensor,
    sl2_truncated_tensor,
)
from fusion_rings.affine import (
    AdmissibleClass,
    AffineSymbol,
    FusionTable,
    RationalLevel,
    canonicalize,
    fuse_generic,
    fuse_rational,
    genus_dimension,
    structure_table,
    unit_symbol,
)
from fusion_rings.oracle import Convention, SingularData, calibrate_convention, fusion_oracle, pi_projection
from fusion_rings.virasoro import (
    MinimalClass,
    VirSymbol,
    central_charge,
    ds_map,
    vir_canonicalize,
    vir_fuse_generic,
    vir_fuse_minimal,
)

__all__ = [
    "AdmissibleClass",
    "AffineSymbol",
    "Convention",
    "FormalSum",
    "FusionTable",
    "LinearForm",
    "MinimalClass",
    "OspIrrep",
    "RationalLevel",
    "SingularData",
    "VirSymbol",
    "add",
    "bilinear_product",
    "calibrate_convention",
    "canonicalize",
    "central_charge",
    "ds_map",
    "fuse_generic",
    "fuse_rational",
    "fusion_oracle",
    "genus_dimension",
    "lf_solve",
    "normalize",
    "osp_forget_to_sl2",
    "osp_tensor",
    "osp_tensor_oracle",
    "osp_truncated_tensor",
    "pi_projection",
    "sl2_tensor",
    "sl2_truncated_tensor",
    "structure_table",
    "unit_symbol",
    "vir_canonicalize",
    "vir_fuse_generic",
    "vir_fuse_minimal",
]
