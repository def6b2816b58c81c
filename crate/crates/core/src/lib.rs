//! Detection, construction and exact counting checks for simplices,
//! clusters and simplex-clusters in `k`-uniform families over `[n]`, `n ≤ 64`.

pub mod combinatorics;
pub mod configurations;
pub mod cycle;
pub mod error;
pub mod family;
pub mod familyfile;
pub mod inequality;
pub mod search;
pub mod shade;
pub mod sweep;

pub use combinatorics::{
    binomial, colex_rank, colex_unrank, enumerate_k_subsets, BigCount, ElementSet,
};
pub use configurations::{
    classify, count_configs, find_simplex_cluster, ConfigClass, ConfigKind, ConfigWitness,
};
pub use error::{Error, Result};
pub use family::KUniformFamily;
