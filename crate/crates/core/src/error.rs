use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("graph is not connected")]
    GraphDisconnected,
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("hyperplane {index} out of range ({count} hyperplanes)")]
    InvalidHyperplane { index: usize, count: usize },
    #[error("transversality needs two distinct hyperplanes, got {0} twice")]
    SameHyperplane(usize),
    #[error("path is empty")]
    EmptyPath,
    #[error("not a path: {0} and {1} are not adjacent")]
    NotAPath(usize, usize),
    #[error("invalid prism: {0}")]
    InvalidPrism(String),
    #[error("amalgam side {side} is not gated in its host")]
    NotGated { side: usize },
    #[error("invalid amalgam correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("step count must be at least 1")]
    ZeroSteps,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("vertex {0} carries a trivial group")]
    TrivialGroup(usize),
    #[error("vertex {0} carries a symbolic infinite group")]
    SymbolicInfinite(usize),
    #[error("graph product is infinite: {0}")]
    InfiniteGroup(String),
    #[error("element {element} out of range for the group of order {order} at vertex {vertex}")]
    ElementOutOfRange { vertex: usize, element: usize, order: usize },
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("graph has {count} vertices, above the cap of {cap}")]
    VertexCapExceeded { count: usize, cap: usize },
    #[error("graph is reduced to a single vertex")]
    SingleVertex,
    #[error("finiteness labels cover {labels} vertices, graph has {vertices}")]
    LabelMismatch { labels: usize, vertices: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("host graph is not median")]
    NotMedian,
    #[error("wreaths belong to different configurations")]
    ConfigMismatch,
}
