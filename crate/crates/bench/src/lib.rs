//! Fixtures shared by the criterion benchmarks.

use sievekit::arith::rat;
use sievekit::instances::{CoefficientBox, ResidueAvoidanceInstance};
use sievekit::sieve::{DensityFunction, SievePlan};

/// Residue-avoidance demo: integers up to `n` sifted by `Omega_p = {0}`.
pub fn residue_demo(n: u64) -> ResidueAvoidanceInstance {
    ResidueAvoidanceInstance::multiples(n)
}

pub fn plan(z: u64, level: i64) -> SievePlan {
    SievePlan::new(z, rat(level, 1)).expect("valid plan")
}

/// `g(p) = 1/5`.
pub fn fifth() -> DensityFunction {
    DensityFunction::Constant(rat(1, 5))
}

/// `[-r, r]^5`.
pub fn symmetric_box(r: i64) -> CoefficientBox {
    CoefficientBox::cube(-r, r).expect("nonempty box")
}
