//! Exact counts of topological types of fully ramified `Z_p` and `Z_p^2`
//! actions on compact Riemann surfaces, by partition type, together with a
//! brute-force orbit enumerator that checks them.
//!
//! ```
//! use topotype::{count_types_rank2, PartitionType};
//!
//! let part: PartitionType = "2,2".parse().unwrap();
//! assert_eq!(count_types_rank2(&part, 5).unwrap().count, 2.into());
//! ```

pub mod arith;
pub mod cli;
pub mod count;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod polyfit;
pub mod residue;
mod serde_bigint;

pub use count::{
    card_a, card_a_unitary, count_types_klein, count_types_rank1, count_types_rank2, total_types,
    CountReport, TotalReport,
};
pub use error::{Error, Result};
pub use oracle::{count_orbits, rank1_orbit_count, Guard, OrbitTable};
pub use partition::{admissible_partitions, genus_of, ActionParams, PartitionType, Restriction};
pub use polyfit::{fit_partition_polynomial, render_table, StratifiedPolynomial, TableFormat};
