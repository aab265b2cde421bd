//! Error type shared by all analysis modules.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the toolkit.
///
/// Every variant renders as a single line starting with a stable
/// kebab-case token (also available via [`Error::kind`]), so callers such
/// as the CLI can report machine-parsable one-line reasons.
#[derive(Debug, Error)]
pub enum Error {
    /// A count parameter (element count, subarray count, ...) is below the
    /// smallest supported value.
    #[error("invalid-count: {what} must be at least {min}, got {got}")]
    InvalidCount {
        what: &'static str,
        min: u64,
        got: u64,
    },

    /// The pair (p, q) cannot parameterize a coprime layout.
    #[error("invalid-coprime-pair: p={p}, q={q}: {reason}")]
    InvalidCoprimePair {
        p: u64,
        q: u64,
        reason: &'static str,
    },

    /// A non-redundant ruler was requested for an order outside the
    /// built-in lookup table.
    #[error("unsupported-order: no non-redundant ruler of order {n} is tabulated (supported: {supported})")]
    UnsupportedOrder { n: u64, supported: &'static str },

    /// Two subarrays of a multi-subarray layout collide.
    #[error("overlapping-subarrays: {detail}")]
    OverlappingSubarrays { detail: String },

    /// A layout violates a structural invariant (unsorted, duplicate, or
    /// non-zero-anchored indices, fewer than two elements, ...).
    #[error("invalid-layout: {detail}")]
    InvalidLayout { detail: String },

    /// A textual layout descriptor could not be parsed.
    #[error("invalid-layout-spec: '{spec}': {detail}")]
    InvalidSpec { spec: String, detail: String },

    /// A scalar parameter lies outside its documented domain.
    #[error("invalid-parameter: {detail}")]
    InvalidParameter { detail: String },

    /// An exhaustive layout search exceeds the tractability guard.
    #[error("search-too-large: n={n}, max_span={max_span} exceeds the exhaustive-search guard ({limit})")]
    SearchTooLarge {
        n: u64,
        max_span: u64,
        limit: &'static str,
    },

    /// The source position coincides with an array element, so the
    /// propagation distance (and hence the steering phase) is undefined.
    #[error("singular-geometry: source coincides with element {element}")]
    SingularGeometry { element: usize },

    /// The Fisher information matrix is numerically singular, e.g. in the
    /// planar regime where range is unidentifiable.
    #[error("singular-fim: condition number {condition:e} exceeds the 1e12 guard")]
    SingularFim { condition: f64 },

    /// Transmit and receive layouts disagree on the carrier wavelength.
    #[error("wavelength-mismatch: tx wavelength {tx_m} m differs from rx wavelength {rx_m} m")]
    WavelengthMismatch { tx_m: f64, rx_m: f64 },

    /// Malformed JSON for a layout document or the embedded reference table.
    #[error("invalid-json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable token identifying the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidCount { .. } => "invalid-count",
            Error::InvalidCoprimePair { .. } => "invalid-coprime-pair",
            Error::UnsupportedOrder { .. } => "unsupported-order",
            Error::OverlappingSubarrays { .. } => "overlapping-subarrays",
            Error::InvalidLayout { .. } => "invalid-layout",
            Error::InvalidSpec { .. } => "invalid-layout-spec",
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::SearchTooLarge { .. } => "search-too-large",
            Error::SingularGeometry { .. } => "singular-geometry",
            Error::SingularFim { .. } => "singular-fim",
            Error::WavelengthMismatch { .. } => "wavelength-mismatch",
            Error::Json(_) => "invalid-json",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_are_single_line_and_start_with_kind() {
        let cases: Vec<Error> = vec![
            Error::InvalidCount {
                what: "element count",
                min: 2,
                got: 1,
            },
            Error::InvalidCoprimePair {
                p: 4,
                q: 2,
                reason: "p must be smaller than q",
            },
            Error::UnsupportedOrder {
                n: 7,
                supported: "2-6, 8",
            },
            Error::OverlappingSubarrays {
                detail: "stride 1 < subarray size 2".into(),
            },
            Error::InvalidLayout {
                detail: "indices must start at 0".into(),
            },
            Error::InvalidSpec {
                spec: "dua".into(),
                detail: "missing element count".into(),
            },
            Error::InvalidParameter {
                detail: "wavelength_m must be positive".into(),
            },
            Error::SearchTooLarge {
                n: 11,
                max_span: 40,
                limit: "n <= 10 and max_span <= 40",
            },
            Error::SingularGeometry { element: 3 },
            Error::SingularFim { condition: 1e28 },
            Error::WavelengthMismatch {
                tx_m: 0.003,
                rx_m: 0.004,
            },
        ];
        for err in cases {
            let msg = err.to_string();
            assert!(!msg.contains('\n'), "multi-line message: {msg}");
            assert!(
                msg.starts_with(err.kind()),
                "message '{msg}' does not start with kind '{}'",
                err.kind()
            );
        }
    }
}
