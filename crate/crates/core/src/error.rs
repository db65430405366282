use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("Jacobi identity fails on basis triples {}", fmt_triples(.triples))]
    Jacobi { triples: Vec<(usize, usize, usize)> },

    #[error("subspace is not an ideal: [e{}, b{}] leaves it", .0 + 1, .1 + 1)]
    NotIdeal(usize, usize),

    #[error("subspace is not a subalgebra: bracket of basis vectors {} and {} leaves it", .0 + 1, .1 + 1)]
    NotSubalgebra(usize, usize),

    #[error("not a representation: homomorphism law fails for basis pairs {pairs:?}")]
    NotRepresentation { pairs: Vec<(usize, usize)> },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("induced differential does not preserve the relative subcomplex in degree {0}")]
    RelativeClosure(usize),

    #[error("heisenberg algebra needs k >= 1")]
    HeisenbergIndex,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("unknown coefficient module `{0}` (expected trivial:m, adjoint or abelianization)")]
    UnknownCoefficients(String),

    #[error("unknown classification `{0}`")]
    UnknownClassification(String),

    #[error("Jacobi identity fails for the family at t = {0}")]
    FamilyJacobiAt(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_triples(triples: &[(usize, usize, usize)]) -> String {
    let shown: Vec<String> = triples
        .iter()
        .map(|(i, j, k)| format!("({},{},{})", i + 1, j + 1, k + 1))
        .collect();
    shown.join(", ")
}
