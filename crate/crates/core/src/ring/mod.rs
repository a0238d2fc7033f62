//! Standard graded algebras, normal forms, Hilbert functions and homogeneous ideals.

pub mod groebner;
pub mod ideal;
pub mod presentation;

pub use groebner::{reduce, reduced_groebner};
pub use ideal::{ideal_compare, max_ideal_power, socle, Comparison, GradedIdeal, IdealRelation};
pub use presentation::{mul_var_with, Ring, RingPresentation, StdDegree};
