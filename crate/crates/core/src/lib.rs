//! Linear codes over finite fields, built from defining multisets.
//!
//! A defining multiset `D = {d_1, ..., d_n}` of column vectors in `GF(q)^k`
//! determines the code `C(D) = { (<x,d_1>, ..., <x,d_n>) : x in GF(q)^k }`.
//! This crate provides:
//!
//! - exact arithmetic in `GF(q)` for any prime power `q = p^m` ([`gf`]),
//! - vectors, subspaces, and perpendicular spaces over `GF(q)` ([`linalg`]),
//! - the code model: encoding, supports, covering, weight distributions ([`codes`]),
//! - four minimality checkers, including the hyperplane-span criterion
//!   (`dim Span(D ∩ y^⊥) = k-1` for every nonzero `y`) ([`minimality`]),
//! - named defining-set constructions that are provably minimal ([`constructions`]),
//! - exhaustive search for the least length at which a minimal `[n,k]_q`
//!   code exists, with certificates ([`search`]).
//!
//! ```
//! use mincode::{constructions, gf, minimality, search};
//!
//! let f3 = gf::make_field(3, 1)?;
//! // The projective line over GF(3): the shortest minimal code for k = 2.
//! let code = constructions::d0(2, &f3)?;
//! assert!(minimality::check_span(&code)?.is_minimal());
//! let report = search::n_min(2, &f3, &search::SearchConfig::default())?;
//! assert_eq!(report.n_min, Some(4));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod codes;
pub mod constructions;
pub mod corpus;
pub mod gf;
pub mod linalg;
pub mod minimality;
pub mod search;

pub use codes::{Codeword, DefiningSet, WeightDistribution};
pub use gf::{make_field, make_field_from_order, FieldElement, FieldSpec};
pub use linalg::{Subspace, Vector};
pub use minimality::{Method, MinimalityVerdict, Verdict, Witness};
