use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown subsystem `{0}`")]
    UnknownSubsystem(String),

    #[error("level `{level}` is not in the alphabet of subsystem `{subsystem}`")]
    UnknownLevel { subsystem: String, level: String },

    #[error("subsystem `{0}` appears on both sides of a tensor product")]
    OverlappingSubsystems(String),

    #[error("structure mismatch: {0}")]
    Structure(String),

    #[error("unsupported occupancy: {0}")]
    UnsupportedOccupancy(String),

    #[error("post-selection is orthogonal to pre-selection (|overlap| = {overlap:e}); weak value undefined")]
    OrthogonalPostSelection { overlap: f64 },

    #[error("post-selected pointer profile has vanishing norm ({norm:e})")]
    EmptyPostSelection { norm: f64 },

    #[error("invalid pointer grid: {0}")]
    Grid(String),

    #[error("phase calibration expects {expected} phases, got {got}")]
    Calibration { expected: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },
}
