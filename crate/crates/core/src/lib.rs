//! Budget-constrained interdiction of linear minimization problems.
//!
//! An adversary deletes elements `R ⊆ S` of total cost at most `b` from a
//! feasible set `S` to minimize the remaining weight `w(S∖R)`. Pricing the
//! budget with a multiplier turns deletion into truncated weights
//! `min(w(e), λ·c(e))`; at the optimal multiplier the optimal feasible set is
//! a strict 2-approximate minimizer of the reweighted problem, so solving
//! reduces to enumerating those and running a knapsack on each.
//!
//! The graph instantiation is connectivity interdiction: the feasible sets
//! are all nontrivial cuts of an undirected multigraph.
//!
//! ```
//! use interdiction::{solve, InterdictionInstance, SolveOptions};
//!
//! let inst: InterdictionInstance = "3 3 2\n1 2 4 2\n2 3 3 1\n1 3 5 3\n".parse().unwrap();
//! let sol = solve(&inst, &SolveOptions::default()).unwrap();
//! assert_eq!(sol.value, 3);
//! ```

pub mod engine;
pub mod enumerate;
pub mod error;
pub mod family;
mod fixed;
pub mod generate;
pub mod instance;
pub mod knapsack;
pub mod lagrangian;
pub mod mincut;
pub mod oracle;
pub mod rational;

pub use engine::{solve, solve_explicit, solve_report, solve_with_family, Solution, SolveOptions, SolveReport};
pub use enumerate::{CutFamily, EnumerationMethod};
pub use error::{Error, Result};
pub use family::{EnumerationConfig, EnumerationMode, ExplicitFamily, FamilyOracle, GraphCutFamily};
pub use instance::{Edge, EdgeSet, GroundSet, InterdictionInstance};
pub use knapsack::{DeletionResult, KnapsackMode};
pub use lagrangian::{eval_l, find_lambda_star, phi, ActiveLine, LambdaCertificate};
pub use mincut::{global_min_cut, CutResult};
pub use oracle::{brute_solve, OracleReport};
pub use rational::Rational;
