pub mod bits;
pub mod graph;
pub mod invariants;
pub mod label;
pub mod constructions;
pub mod recognizers;
pub mod burling;
pub mod io;
pub mod decomposers;
pub mod bounds;
pub mod par;
pub mod experiments;
