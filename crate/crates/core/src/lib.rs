//! Finite groupoids, 2-groups, crossed modules and their simplicial models.

pub mod bibundle;
pub mod catalog;
pub mod covering;
pub mod crossed_module;
pub mod format;
pub mod group;
pub mod groupoid;
pub mod monoidal;
pub mod presentation;
pub mod report;
pub mod simplicial;
pub mod strictifier;
