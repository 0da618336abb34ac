pub mod connectivity;
pub mod decomposition;
pub mod extraction;
pub mod graph;
pub mod structures;
