//! Words, points and clopen sets of the Hawaiian earring group, with the
//! lexical order and the separation constructions built on it.

pub mod audit;
pub mod clopen;
pub mod convergence;
pub mod loops;
pub mod order;
pub mod point;
pub mod separation;
pub mod template;
pub mod universe;
pub mod word;
