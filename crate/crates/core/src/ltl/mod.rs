//! Linear temporal logic: syntax, parsing, normalization, structural
//! analyses, random generation and the lasso-word evaluator.

mod analysis;
mod eval;
mod formula;
mod parse;
mod random;
mod word;

pub use analysis::{collect_f_and_u, dnf_decompose, is_mergeable, Clause, DnfDecomposition};
pub use eval::{eval_expr, eval_lasso, eval_positions};
pub use formula::{Formula, Node};
pub use parse::{parse, parse_expr, Expr, ParseError};
pub use random::{random_formula, FormulaGenerator, GenError, Op, Preset, Priorities};
pub use word::{LassoWord, Letter, WordError, MAX_APS};
