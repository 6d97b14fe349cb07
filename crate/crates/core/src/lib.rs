//! Exact verification of Bollobás-type set-pair inequalities.
//!
//! The crate validates set-pair systems, evaluates the weighted sums and
//! bounds of the classical and partitioned inequalities as exact rationals,
//! builds the families that make them tight, verifies them exhaustively on
//! small ground sets and replays the permutation arguments behind them by
//! enumeration and by sampling.
//!
//! ```
//! use bollobas::{constructions, family_sum, GroundSet, WeightKind};
//! use bollobas::rational::int;
//!
//! let f = constructions::example1(&GroundSet::new(3));
//! assert_eq!(family_sum(&f, WeightKind::Plain).unwrap(), int(4));
//! assert_eq!(family_sum(&f, WeightKind::Augmented).unwrap(), int(1));
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod family;
pub mod functionals;
pub mod ground;
pub mod io;
pub mod rational;
pub mod oracle;
pub mod permsim;
pub mod sets;
pub mod systems;

pub use error::{Error, Result};
pub use family::{weight, Family, WeightKind};
pub use functionals::{bound, check, family_sum, BoundValue, CheckReport, SystemClass, TheoremId};
pub use ground::GroundSet;
pub use io::{parse_family, serialize_family};
pub use rational::{binomial, Rational};
pub use sets::{ElementSet, SetPair};
pub use systems::{
    antichain_to_system, must_precede, skew_orderable, validate_antichain, validate_bollobas, validate_skew,
    OrderCertificate, Verdict, Violation, Witness,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
