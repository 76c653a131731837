//! Concrete sifted families: residue avoidance on an interval and monic
//! quintics in a coefficient box.

mod finite_field;
mod galois;
mod quintic;
mod quintic_box;
mod residue;

pub use finite_field::{factorization_type, FactorizationType, FpPoly};
pub use galois::{
    galois_class, galois_class_by_census, galois_class_by_resolvent, integer_roots, is_degenerate,
    is_reducible, numeric_roots, resolvent_has_integer_root, sextic_resolvent, GaloisClass,
};
pub use quintic::{
    determinant, discriminant, exact_div, is_perfect_square, resultant, QuinticPoly,
};
pub use quintic_box::{
    degenerate_count_exact, disjointness_violations, event_membership, local_density, scan,
    CoefficientBox, EmptyRange, EventFamily, QuinticBoxInstance, ScanRow, UnknownFamily,
    DEFAULT_BOX_BUDGET,
};
pub use residue::{ForbiddenResidues, ResidueAvoidanceInstance};
