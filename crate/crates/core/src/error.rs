use std::fmt;

use thiserror::Error;

/// The six functors of an idempotent recollement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorTag {
    /// `i_*`: inflation along the quotient map.
    IStar,
    /// `i^*`: largest quotient annihilated by the idempotent ideal.
    IUpper,
    /// `i^!`: largest submodule annihilated by the idempotent ideal.
    IShriek,
    /// `j^*`: multiplication by the idempotent.
    JUpper,
    /// `j_!`: tensor induction from the corner algebra.
    JShriek,
    /// `j_*`: hom coinduction from the corner algebra.
    JLower,
}

impl FunctorTag {
    pub const ALL: [FunctorTag; 6] = [
        FunctorTag::IStar,
        FunctorTag::IUpper,
        FunctorTag::IShriek,
        FunctorTag::JUpper,
        FunctorTag::JShriek,
        FunctorTag::JLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctorTag::IStar => "i_star",
            FunctorTag::IUpper => "i_upper",
            FunctorTag::IShriek => "i_shriek",
            FunctorTag::JUpper => "j_upper",
            FunctorTag::JShriek => "j_shriek",
            FunctorTag::JLower => "j_lower",
        }
    }

    /// Conventional notation, e.g. `i^*`.
    pub fn symbol(self) -> &'static str {
        match self {
            FunctorTag::IStar => "i_*",
            FunctorTag::IUpper => "i^*",
            FunctorTag::IShriek => "i^!",
            FunctorTag::JUpper => "j^*",
            FunctorTag::JShriek => "j_!",
            FunctorTag::JLower => "j_*",
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0} is not a prime in [2, 97]")]
    InvalidField(u32),

    #[error("matrix is not invertible")]
    NonInvertible,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver has an oriented cycle through vertex {0}")]
    CyclicQuiver(String),

    #[error("non-admissible relation: {0}")]
    NonAdmissibleRelations(String),

    #[error("invalid idempotent: {0}")]
    InvalidIdempotent(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("search budget exceeded: {what} needs {needed} candidates, cap is {cap}")]
    SearchBudgetExceeded {
        what: String,
        needed: u128,
        cap: u64,
    },

    #[error(
        "module with dimension vector {0:?} has an indecomposable summand outside the catalog"
    )]
    OutOfCatalog(Vec<usize>),

    #[error("too many indecomposables for subset enumeration: {count} > {cap}")]
    TooManyIndecomposables { count: usize, cap: usize },

    #[error("({0}, {1}) is not one of the recollement adjoint pairs")]
    NotAdjointPair(FunctorTag, FunctorTag),

    #[error("exactness failure: {0}")]
    ExactnessFailure(String),

    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),
}

impl Error {
    /// True for errors caused by search caps rather than bad input or a failed check.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded { .. }
                | Error::OutOfCatalog(_)
                | Error::TooManyIndecomposables { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Cap on exhaustive searches (hom-space combinations, matrix tuples).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

impl Budget {
    pub const DEFAULT_CAP: u64 = 1 << 20;
    pub const ENV_VAR: &'static str = "WIDEREC_BUDGET";

    pub fn new(cap: u64) -> Self {
        Budget { cap: cap.max(1) }
    }

    /// Default cap, overridden by `WIDEREC_BUDGET` when it parses as a positive integer.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&c| c > 0)
            .map(Budget::new)
            .unwrap_or_default()
    }

    /// Number of candidates `base^exponent`, or `SearchBudgetExceeded` when above the cap.
    pub fn admit(&self, what: &str, base: u32, exponent: usize) -> Result<u64> {
        let mut needed: u128 = 1;
        for _ in 0..exponent {
            needed = needed.saturating_mul(base as u128);
            if needed > self.cap as u128 {
                return Err(Error::SearchBudgetExceeded {
                    what: what.to_string(),
                    needed: (base as u128).saturating_pow(exponent as u32),
                    cap: self.cap,
                });
            }
        }
        Ok(needed as u64)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cap: Self::DEFAULT_CAP,
        }
    }
}
