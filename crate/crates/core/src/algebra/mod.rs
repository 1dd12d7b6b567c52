//! Polynomial arithmetic over exact fields.

pub mod bivariate;
pub mod factor;
pub mod linalg;
pub mod mpoly;
pub mod numfield;
pub mod upoly;
