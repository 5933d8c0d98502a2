//! Verification and exhaustive search for polychromatic linear colorings of
//! the subcubes of the hypercube.
//!
//! A linear `Q_ℓ`-coloring maps a subcube with counting vector `v` to
//! `Σ v_j · c_j` in a finite abelian group. It is `d`-polychromatic when every
//! `Q_d` of every hypercube contains a `Q_ℓ` of each color.
//!
//! ```
//! use polychrome::{fixture, is_polychromatic};
//!
//! let chi = fixture("chi26").unwrap();
//! assert_eq!(chi.colors(), 16);
//! assert!(is_polychromatic(&chi, 6).unwrap().polychromatic);
//! ```

pub mod abelian;
pub mod adversary;
pub mod bounds;
pub mod certificate;
pub mod coloring;
pub mod error;
pub mod oracle;
pub mod polycheck;
pub mod search;

pub use abelian::{groups_of_order, FactoredAbelianGroup, GroupElement};
pub use adversary::{construct_witness, AdversaryInput, AdversaryWitness};
pub use certificate::{Certificate, CertificateStatus};
pub use coloring::{basic_coloring, fixture, ColoringSpec, CountingVector, LinearColoring, SubcubeString};
pub use error::{Error, Result};
pub use oracle::{explicit_check, ExplicitCheckReport};
pub use polycheck::{is_polychromatic, is_polychromatic_with, CheckOptions, Verdict, XRange};
pub use search::{compute_plin, find_coloring, PlinResult, SearchOptions, SearchResult, SearchStatus};
