//! Every fenced Rust block in `book/src/*.md` runs as a doc-test of this
//! crate, keeping the guide and the library in sync. `cargo test --doc -p
//! book-tests` (or a plain workspace test) executes them all.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/curves.md")]
pub mod curves {}

#[doc = include_str!("../../../book/src/real-multiplication.md")]
pub mod real_multiplication {}

#[doc = include_str!("../../../book/src/modular-equations.md")]
pub mod modular_equations {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../../book/src/worked-example.md")]
pub mod worked_example {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
