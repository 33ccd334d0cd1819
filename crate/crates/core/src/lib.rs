pub mod arrangement;
pub mod bundled;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exactla;
pub mod gkmgraph;
