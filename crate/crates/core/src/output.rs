//! Deterministic serialization helpers shared by the report emitters.

/// Formats a float with 17 significant digits in scientific notation, enough
/// to round-trip any `f64` bit-exactly and keep artifacts byte-stable.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
