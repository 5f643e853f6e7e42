//! Exact computations for endomorphism algebras of abelian varieties with
//! constrained 2-torsion: quaternion orders and their mod-2 conjugation
//! actions, Galois groups of quartics and quintics, imaginary quadratic class
//! numbers, Dedekind's criterion at 2, and decision tables that turn these
//! into finite lists of possible endomorphism algebras.

pub mod endoclass;
pub mod exactmath;
pub mod numfield;
pub mod quatorder;
