use thiserror::Error;

/// Position of a declaration inside a [`ComplexDescription`](crate::ComplexDescription).
///
/// Parsers use this to map a build failure back to a source line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decl {
    Vertex(usize),
    Edge(usize),
    Square(usize),
}

/// Reasons a raw description fails to become a [`CubeComplex`](crate::CubeComplex).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("complex has no vertices")]
    Empty,
    #[error("invalid vertex name {name:?}")]
    InvalidName { name: String, at: Decl },
    #[error("duplicate vertex {name}")]
    DuplicateVertex { name: String, at: Decl },
    #[error("{name} is not a declared vertex")]
    UnknownVertex { name: String, at: Decl },
    #[error("self-loop edge at {name}")]
    SelfLoop { name: String, at: Decl },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: String, v: String, at: Decl },
    #[error("square repeats vertex {name}")]
    RepeatedSquareVertex { name: String, at: Decl },
    #[error("square boundary pair {u} {v} is not an edge")]
    SquareBoundaryNotEdge { u: String, v: String, at: Decl },
    #[error("a square on vertices {vertices:?} is already declared")]
    DuplicateSquare { vertices: [String; 4], at: Decl },
    #[error("complex has {vertices} vertices, over the size cap of {cap}")]
    SizeCapExceeded { vertices: usize, cap: usize },
    #[error("invalid builder parameter: {0}")]
    InvalidParameter(String),
}

impl BuildError {
    /// The offending declaration, when the error is tied to one.
    pub fn decl(&self) -> Option<Decl> {
        match self {
            BuildError::InvalidName { at, .. }
            | BuildError::DuplicateVertex { at, .. }
            | BuildError::UnknownVertex { at, .. }
            | BuildError::SelfLoop { at, .. }
            | BuildError::DuplicateEdge { at, .. }
            | BuildError::RepeatedSquareVertex { at, .. }
            | BuildError::SquareBoundaryNotEdge { at, .. }
            | BuildError::DuplicateSquare { at, .. } => Some(*at),
            _ => None,
        }
    }
}

/// Errors raised by queries against a built complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(String, String),
    #[error("triple ({0}, {1}, {2}) has no median")]
    NoMedian(String, String, String),
    #[error("triple ({0}, {1}, {2}) has {3} median candidates")]
    AmbiguousMedian(String, String, String, usize),
    #[error("complex is not CAT(0): {0}")]
    NotCat0(String),
    #[error("wall {wall} splits the vertex set into {components} components")]
    SeparationFailure { wall: usize, components: usize },
    #[error("unknown wall id {0}")]
    UnknownWall(usize),
    #[error("subdivision level must be at least 1")]
    ZeroSubdivision,
    #[error("weights sum to {0}, expected 0")]
    NonZeroWeightSum(i64),
    #[error("probe has {points} points but {weights} weights")]
    ProbeLength { points: usize, weights: usize },
    #[error("probe is empty")]
    EmptyProbe,
    #[error("probe index {index} out of range for a kernel on {size} points")]
    ProbeIndex { index: usize, size: usize },
    #[error("kernel matrix is not symmetric with zero diagonal at ({0}, {1})")]
    InvalidKernel(usize, usize),
    #[error("map has no image for vertex {0}")]
    IncompleteMap(String),
    #[error("map assigns two images to {0}")]
    ConflictingImage(String),
    #[error("map is not a bijection: {0} is hit twice")]
    NotBijective(String),
    #[error("edge {0} {1} is not mapped to an edge")]
    EdgeNotPreserved(String, String),
    #[error("square {0:?} is not mapped to a square")]
    SquareNotPreserved([String; 4]),
    #[error("generator acts on a complex with {found} vertices, expected {expected}")]
    ForeignAutomorphism { expected: usize, found: usize },
    #[error("group closure exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("no cube in the orbit hull is invariant under the action")]
    NoInvariantCube,
    #[error("convex hull of an empty set")]
    EmptyHull,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
