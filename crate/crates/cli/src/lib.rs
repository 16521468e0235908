//! Library half of the polyacc binary: input parsing, the Lavrentiev
//! comparison, run manifests, and the batch reproduction driver.

pub mod input;
pub mod lavrentiev;
pub mod manifest;
pub mod reproduce;
