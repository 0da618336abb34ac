pub mod compute;
pub mod extract;
pub mod gen;
pub mod verify;
