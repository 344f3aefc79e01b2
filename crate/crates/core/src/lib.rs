//! Distance and disjointness metrics of qudit stabilizer codes, and the
//! Clifford-hierarchy level bounds they imply for transversal and shallow
//! logical circuits.

pub mod bounds;
pub mod code;
pub mod codefile;
pub mod families;
mod linalg;
pub mod metrics;
pub mod oracle;
pub mod partition;
pub mod pauli;

pub use code::{
    CircuitShape, ClassOf, CodeError, CosetIter, LogicalClass, MultiblockSpec, StabilizerCode,
    DEFAULT_BUDGET,
};
pub use partition::{Partition, PartitionError};
pub use pauli::{PauliError, PauliOperator, QuditDim};
pub use metrics::{
    compute_metrics, DeclaredMetrics, DisjointWitness, DistanceInterval, Exactness, MetricsConfig,
    MetricsError, MetricsReport, RationalInterval,
};
