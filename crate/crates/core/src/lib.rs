pub mod planar;
pub mod universal;
pub mod reduce;
pub mod corpus;
pub mod ears;
pub mod embed;
pub mod io;
pub mod verify;
