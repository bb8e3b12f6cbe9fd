//! Residue fields: finite fields, polynomials over them, factorization and
//! explicit extension towers.

mod extend;
mod factor;
mod field;
mod poly;

pub use extend::{ff_extend, Extension};
pub use factor::{ff_factor, ff_factor_seeded, ff_is_irreducible, DEFAULT_SPLIT_SEED};
pub use field::{Field, Fq, FqCtx};
pub use poly::FqPoly;
