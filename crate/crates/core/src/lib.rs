//! Exact symbolic engine for the q-deformed Heisenberg algebra `ab - q·ba = p`
//! and its extension `ab - p·ba = F(N)`, `qNa - aN = -a`, `Nb - qbN = b`.

pub mod scalar;
pub mod weyl;
pub mod identities;
pub mod reps;
pub mod expr;
pub mod report;
