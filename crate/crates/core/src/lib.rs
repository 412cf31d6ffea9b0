//! Classification of multiplicative functions `f` that commute with a binary
//! quadratic form `Q`, i.e. `f(Q(x, y)) = Q(f(x), f(y))` for all positive
//! integers `x, y`.
//!
//! The [`engine`] derives every finite-range solution from the form's
//! representation table using exact polynomial algebra ([`exactalg`]);
//! [`families`], [`replay`], [`identities`] and [`eisenstein`] provide
//! independent checks of the known classification for `x² ± xy + y²`.

pub mod cli;
pub mod eisenstein;
pub mod engine;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod forms;
pub mod identities;
pub mod multfn;
pub mod replay;

pub use engine::{search, SearchConfig, SearchReport};
pub use error::{Error, Result};
pub use families::{verify_family, Family, Verdict};
pub use forms::{BinaryQuadraticForm, Representation};
