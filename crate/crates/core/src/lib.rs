//! Umbral moonshine computations: eta quotients, Jacobi form coefficient
//! tables, mock theta functions and twisted Borcherds products, with exact
//! cyclotomic arithmetic throughout.

pub mod arith;
pub mod borcherds;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod eta;
pub mod jacobi;
pub mod mocktheta;
pub mod relations;
pub mod report;
pub mod series;
pub mod verify;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use eta::{eta_dlog, eta_expand, eta_fricke, verify_fricke_constant, EtaQuotient, Multiplier};
pub use series::{exp, Exp, QSeries};
