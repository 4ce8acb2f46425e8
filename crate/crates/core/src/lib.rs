pub mod acceptance;
pub mod algebra;
pub mod cuts;
pub mod error;
pub mod graph;
pub mod io;
pub mod pants;
pub mod reconstruction;
pub mod space;
pub mod spheres;
pub mod systems;

pub use error::{Error, Result};
