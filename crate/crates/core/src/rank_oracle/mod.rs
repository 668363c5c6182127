//! Independent rank checks: exhaustive search over small prime fields, explicit rational
//! decompositions, and degree-bounded ideal membership certificates.

mod decomposition;
mod field;
mod macaulay;
mod search;

pub use decomposition::{rank_upper_bound, Decomposition, Provenance};
pub use field::{check_prime, projective_points, Echelon, FieldElement, SUPPORTED_PRIMES};
pub use macaulay::{macaulay_membership, pencil, verify_certificate, MembershipResult};
pub use search::{rank_over_field, FieldRank, MAX_COMPLETIONS, MAX_RANK_ONES, MAX_RMAX};
