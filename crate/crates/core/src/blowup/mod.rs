//! The cubic surface as P² blown up at six points: the Picard lattice,
//! restrictions of `Ω¹_S(log D)` to curves, and the search for
//! destabilizing line subbundles `O_S(x) ⊂ Ω¹_S(log D)`.
//!
//! A class `x = aL + ΣbᵢEᵢ` is written `(a;b1,…,b6)`. The rows produced by
//! [`restriction_table`] bound `x·C` by the largest degree of a line
//! subbundle of `Ω¹_S(log D)|_C`; [`destabilizer_search`] adds `x·H ≥ μ`.

mod lattice;
mod pencil;
mod restriction;
mod search;

pub use lattice::{
    cremona, genus, hat_line, intersect, lines27, pushforward_blowup, slope_log, PicClass, Pushforward,
};
pub use pencil::{classify_pencil_member, general_position, PencilMember, Position};
pub use restriction::{
    key_splitting_on_s, omega_s_restriction, parse_constraints, restriction_table, ConstraintRow, Family, Relation,
    Scenario,
};
pub use search::{destabilizer_search, CandidateSet};
