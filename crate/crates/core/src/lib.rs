pub mod forcing;
pub mod formulas;
pub mod ground;
pub mod harness;
pub mod terms;
pub mod topology;
pub mod witnesses;
