pub mod chain;
pub mod cli;
pub mod complex;
pub mod geom;
pub mod io;
pub mod link;
pub mod plmap;
pub mod random;
pub mod reduce;
