//! Approximating planar shape contours with Zometool struts.

pub mod arrange;
pub mod field;
pub mod golden;
pub mod hardness;
pub mod instance;
pub mod model;
pub mod pipeline;
pub mod sampling;
pub mod solve;
pub mod start;
pub mod svg;
