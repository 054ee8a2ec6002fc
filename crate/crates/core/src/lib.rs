//! K-orbits on flag varieties for symmetric pairs whose orbits carry only
//! trivial local systems, their closure order, and Kazhdan-Lusztig-Vogan
//! polynomials computed in the Hecke module spanned by the orbits.
//!
//! The crate also checks, exhaustively over a model, that these polynomials
//! grow coefficientwise as the lower orbit moves down the closure order.
//!
//! ```
//! use klv_core::{ClosurePoset, KlvTable, ModelSpec};
//!
//! let set = ModelSpec::Clans { p: 2, q: 1 }.build(7).unwrap();
//! let poset = ClosurePoset::build(&set).unwrap();
//! let table = KlvTable::build(&set).unwrap();
//! let top = set.index_of("1+1").unwrap();
//! assert_eq!(poset.closure(top).count(), 6);
//! assert!(table.poly(set.index_of("+-+").unwrap(), top).is_one());
//! ```

pub mod cli;
pub mod closure;
pub mod error;
pub mod hecke_klv;
pub mod kl_classical;
pub mod orbit_model;
pub mod poly;
pub mod verify;
pub mod weyl;

pub use closure::ClosurePoset;
pub use error::{Error, Result};
pub use hecke_klv::{t_action, KlvTable, ModuleElement};
pub use kl_classical::KlTable;
pub use orbit_model::{
    Clan, ClanModel, DiagonalModel, ModelSpec, OrbitId, OrbitModel, OrbitSet, RootType,
};
pub use poly::Poly;
pub use verify::{check_semicontinuity, check_structure, compare_engines, verify_model, Report};
pub use weyl::Permutation;
