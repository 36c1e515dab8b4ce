//! Exact arithmetic for double affine Lie algebras of simply-laced type and
//! for the induced modules built from partitions of their root systems.

pub mod rational;
pub mod rootsys;
pub mod dala;
pub mod partition;
pub mod pbw;
pub mod extremal;
pub mod garland;
pub mod weyl;
