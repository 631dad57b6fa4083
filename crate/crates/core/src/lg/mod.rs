//! Leggett-Garg protocol on a single qubit evolving under `H = ½ħΩσx`.
//!
//! A shot prepares the σz eigenstate with spin −1 (basis state 0), rotates
//! it by `Rx(ΩΔt)` and measures σz. Bits map to spins as `Q = 2·bit − 1`.

mod records;
mod report;
mod state;
mod stats;

pub use records::{
    read_record_csv, run_experiment, run_record_set, write_record_csv, ExperimentConfig,
    IntervalLabel, RecordSet, ShotRecord, DEFAULT_SHOTS, HARDWARE_SHOTS,
};
pub(crate) use records::read_measurement_bits as records_bits;
pub use report::{
    table_thetas, write_cumulative_csv, write_k_report, write_table_csv, TableRow,
};
pub use state::{prepare_initial, prob_plus, rx_apply, QubitState, RotationAngle};
pub use stats::{
    correlation_theoretical, cumulative_k, estimate_correlation, k_statistic, k_theoretical,
    Classification, CorrelationEstimate, KStatistic,
};
