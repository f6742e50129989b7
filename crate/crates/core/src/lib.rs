//! Exact computer algebra for matrix theories over Galois field extensions:
//! cyclotomic, quadratic, finite and sextic field arithmetic, explicit
//! Galois groups with subgroup lattices, folding functors on exact matrix
//! categories, and the discarding/decoherence machinery built on them.

pub mod cpm;
pub mod error;
pub mod fields;
pub mod folding;
pub mod group;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
mod shareability {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_workers() {
        assert_send_sync::<crate::fields::FieldElement>();
        assert_send_sync::<std::sync::Arc<crate::fields::FieldContext>>();
        assert_send_sync::<crate::matrix::Matrix>();
        assert_send_sync::<crate::group::GaloisGroup>();
        assert_send_sync::<crate::group::Subgroup>();
        assert_send_sync::<crate::cpm::EnvEffect>();
        assert_send_sync::<crate::cpm::CpmMorphism>();
    }
}
