pub mod basis;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod measure;
pub mod pauli;
pub mod schmidt;
pub mod state;
pub mod entanglement;
pub mod witness;
pub mod mbqc;
pub mod noise;
pub mod partition;
pub mod classical;
pub mod counts;
pub mod cli;
