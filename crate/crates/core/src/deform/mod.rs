//! Star products, module deformations, equivalences and commutants.

mod commutant;
mod equivalence;
mod module;
mod report;
mod star;

pub use commutant::{
    bounded_commutant, check_commutant_membership, check_invariance, commutant_report, gauge_commutator,
    quantize_series, quantize_vertical, rho_prime_inverse, star_prime, verify_star_prime, FiberInvariant,
};
pub use equivalence::{find_equivalence, normalize_fibration, verify_equivalence, verify_fibration, Equivalence};
pub use module::{build_module_deformation, lifted_moyal, verify_module, ModuleDeformation};
pub use report::{CheckRecord, Report, Witness, WitnessValue};
pub use star::{moyal, verify_associativity, StarProduct};
