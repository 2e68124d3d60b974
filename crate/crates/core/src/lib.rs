//! Exact arithmetic for cusp cross-sections of complex hyperbolic
//! 2-orbifolds: Heisenberg isometries over the imaginary quadratic fields
//! `Q(i*sqrt(d))`, the seven families of Nil 3-manifold holonomy groups, the
//! field obstructions between them, and Picard cusp data.
//!
//! ```
//! use heiscusp::family::{FamilyId, FamilyParams};
//! use heiscusp::holonomy::certify;
//! use heiscusp::ring::SquarefreeD;
//!
//! let cert = certify(FamilyId::NilTorus, FamilyParams::k(2), SquarefreeD::new(7).unwrap()).unwrap();
//! assert!(cert.all_ok());
//! ```

pub mod cli;
pub mod cuspdata;
pub mod family;
pub mod heis;
pub mod holonomy;
pub mod obstruct;
pub mod report;
pub mod ring;
pub mod sample;
pub mod text;

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn public_types_are_thread_safe() {
        assert_send_sync::<crate::heis::HeisIsom>();
        assert_send_sync::<crate::family::Presentation>();
        assert_send_sync::<crate::holonomy::HolonomyCert>();
        assert_send_sync::<crate::report::Report>();
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/heisenberg.md")]
    mod heisenberg {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/holonomy.md")]
    mod holonomy {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/cusps.md")]
    mod cusps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
