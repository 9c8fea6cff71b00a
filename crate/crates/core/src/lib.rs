//! Exact matrix partition problems on small graphs.
//!
//! A symmetric pattern matrix over `{0, 1, *}` with `m` rows describes a way
//! of splitting a graph into `m` parts: parts `i` and `j` must be completely
//! joined when `M(i,j) = 1`, have no edges between them when `M(i,j) = 0`,
//! and are unconstrained for `*`. This crate solves such problems, recognizes
//! the graph classes they generalize, and searches for minimal graphs that
//! cannot be partitioned.

pub mod cli;
pub mod graph;
pub mod obstruction;
pub mod pattern;
pub mod recognize;
pub mod solver;
pub mod verify;

/// Runs `f` on a dedicated rayon pool with `jobs` workers.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

// Keeps the guide's snippets compiling and passing.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/recognition.md")]
    mod recognition {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
