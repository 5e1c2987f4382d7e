use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dihedral group needs n >= 2, got {0}")]
    InvalidGroupOrder(u32),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("element set must be non-empty")]
    EmptySet,

    #[error("element {0} listed more than once")]
    DuplicateElement(String),

    #[error("element {0} is not in D_2n for this n")]
    ForeignElement(String),

    #[error("element sets overlap in {0}")]
    OverlappingSets(String),

    #[error("vertex {index} out of range for a graph on {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("cannot delete a vertex from a graph with {0} vertex")]
    GraphTooSmall(usize),

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} limited to {max}, got {len}")]
    SizeGuard {
        what: &'static str,
        len: usize,
        max: usize,
    },

    #[error("order bounds {min}..={max} invalid for n={n} (need 2 <= min <= max <= {limit})")]
    OrderBounds {
        n: u32,
        min: usize,
        max: usize,
        limit: usize,
    },

    #[error("enumeration supports n <= {max}, got {n}")]
    EnumerationTooLarge { n: u32, max: u32 },

    #[error("catalog id {0} out of range 1..=43")]
    CatalogId(u32),

    #[error("catalog line {line}: {reason}")]
    Catalog { line: usize, reason: String },

    #[error("invalid graph6 string: {0}")]
    Graph6(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
