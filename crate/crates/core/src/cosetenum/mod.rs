//! Finite presentations and Todd–Coxeter coset enumeration.

mod presentation;
mod table;

pub use presentation::{amalgam_presentation, power_nilpotent_presentation, Presentation};
pub use table::{todd_coxeter, CosetTable, Status};
