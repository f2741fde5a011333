pub mod gf;
pub mod linalg;
pub mod quadform;
pub mod classical;
pub mod forms;
pub mod pieces;
pub mod census;
pub mod acceptance;
