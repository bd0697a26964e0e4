pub mod analysis;
pub mod construct;
pub mod galois;
pub mod io;
pub mod metric;
pub mod plane;
