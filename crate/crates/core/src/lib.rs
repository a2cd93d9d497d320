pub mod adjoint;
pub mod arith;
pub mod cli;
pub mod constructors;
pub mod hopf;
pub mod interchange;
pub mod linalg;
pub mod modules;
