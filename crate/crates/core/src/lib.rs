//! Finite loops as Cayley tables, an identity language over them, principal
//! isotopes and autotopisms, Osborn-type property checks, reduced Latin
//! square search and an executable claim catalog.

pub mod corpus;
pub mod error;
pub mod isotopy;
pub mod loopfile;
pub mod loops;
pub mod perm;
pub mod properties;
pub mod search;
pub mod term;
pub mod theoremlab;

pub use error::{EvalError, LoopError, LoopFileError, ParseError, PropertyError, SearchError};
pub use isotopy::{principal_isotope, AutotopismTriple, IsotopeSpec};
pub use loopfile::{parse_loop_file, print_loop_file, LoopFile, NamedLoop};
pub use loops::FiniteLoop;
pub use perm::Perm;
pub use properties::{check, Method, PropertyReport};
pub use term::{holds, CheckResult, Identity, Term};
