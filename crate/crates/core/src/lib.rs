//! Translation of LTL into self-loop alternating automata (SLAA) with
//! transition-based Emerson-Lei acceptance, in three flavours: the basic
//! co-Büchi construction, F-merging and F,G-merging. The crate also simplifies
//! the automata, translates them back into LTL, and decides membership of
//! lasso words so that every stage can be checked against the LTL semantics.

pub mod backtranslate;
pub mod hoa;
pub mod ltl;
pub mod oracle;
pub mod simplify;
pub mod slaa;
pub mod translate;
