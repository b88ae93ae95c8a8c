//! Decision procedures for weighted discrete semigroup algebras.

pub mod c0;
pub mod config;
pub mod dual;
pub mod examples;
pub mod l1;
pub mod num;
pub mod report;
pub mod semigroup;
pub mod verdict;
pub mod weight;
