//! Exact iteration of nonlinear recurrences with the Laurent property.

pub mod confinement;
pub mod growth;
pub mod io;
pub mod kernel;
pub mod par;
pub mod recurrence;
pub mod surface;
