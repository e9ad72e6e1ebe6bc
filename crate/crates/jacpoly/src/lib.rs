pub mod cli;
pub mod exactalg;
pub mod genfactory;
pub mod grading;
pub mod magnus;
pub mod polygeom;
pub mod walker;
