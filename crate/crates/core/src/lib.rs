//! Exact vertex connectivity and minimum cut-sets of the power graph of a
//! finite cyclic group `C_n`.
//!
//! Work happens on the factorisation of `n`, so the graph itself is never
//! built except by the brute-force oracle in [`oracle`].
//!
//! ```
//! use powerconn::{kappa, FactoredInteger};
//!
//! let n: FactoredInteger = "2*3*5*11*13".parse().unwrap();
//! let res = kappa(&n).unwrap();
//! assert_eq!(res.kappa.to_string(), "1158");
//! assert_eq!(res.minimizers[0].to_string(), "X:4:5:1:1");
//! ```

pub mod arith;
pub mod bounds;
pub mod cutset;
pub mod error;
pub mod graph;
pub mod kappa;
pub mod oracle;
pub mod sample;
pub mod verify;

pub use arith::{factor, BigRational, Divisor, FactoredInteger, PrimePower};
pub use bounds::{beta, bound, theta, BoundValue};
pub use cutset::{build, expand, CutSetDescriptor, DivisorSet};
pub use error::{Error, Result};
pub use graph::{is_cutset, CutCheck, ExplicitGraph, OrderClassGraph};
pub use kappa::{candidates, kappa, minimum_cutset_family, KappaResult, Rule, Uniqueness};
pub use verify::{check_instance, verify_against_oracle, InstanceReport, OracleReport};
