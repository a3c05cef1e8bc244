//! Multicomplexes, their chain complexes and homology, exact ℓ¹-seminorms by linear
//! programming, finite group actions, diffusion of chains and combinatorial covers.

pub mod actions;
pub mod chain;
pub mod covers;
pub mod diffusion;
pub mod fixtures;
pub mod formats;
pub mod homology;
pub mod lp;
pub mod mcx;
pub mod norms;
pub mod num;
