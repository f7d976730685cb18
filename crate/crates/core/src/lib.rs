//! Iterated regret minimization on finite games.

pub mod auctions;
pub mod cli;
pub mod bayes;
pub mod beliefs;
pub mod concepts;
pub mod game;
pub mod gamefile;
pub mod generators;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod regret_mixed;
pub mod regret_pure;
pub mod repeated_pd;
pub mod reproduce;
pub mod space;
