use thiserror::Error;

/// Errors raised anywhere in the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    /// A special function or Green's function was evaluated outside its domain.
    #[error("{function}: argument outside domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// A quasi-periodic configuration sits on (or too close to) a Wood anomaly.
    #[error("Wood anomaly: diffraction order p = {order} is grazing (k^2 - k1p^2 = {gap:e})")]
    WoodAnomaly { order: i64, gap: f64 },

    /// More than one propagating diffraction order; the solver only supports
    /// the regime below the first diffraction threshold.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// Geometry, media or discretization parameters violate their invariants.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Off-boundary field requested too close to the discretized boundary.
    #[error("point at distance {distance:.3e} from the boundary is below the node spacing {spacing:.3e}")]
    NearBoundary { distance: f64, spacing: f64 },

    /// The discrete operator failed a structural check (e.g. no eigenvalue near 1/2).
    #[error("discretization failure: {0}")]
    Discretization(String),

    /// Two or more eigenvalues were found where exactly one was expected.
    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    /// A linear solve was too ill-conditioned to trust.
    #[error("ill-conditioned system (condition estimate {condition:.3e}): {context}")]
    IllConditioned { condition: f64, context: String },

    /// The characteristic-value search did not find an interior minimum.
    #[error("no interior minimum of the smallest singular value in [{lo}, {hi}]")]
    NotFound {
        lo: f64,
        hi: f64,
        curve: Vec<crate::resonance::SvSample>,
    },

    /// A closed-form expression hit an exact pole.
    #[error("pole hit: {0}")]
    Pole(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
