//! Array layout constructors and geometric descriptors.
//!
//! Every layout is a strictly increasing, zero-anchored list of integer
//! element positions in units of the inter-element spacing `d` (by default
//! half the carrier wavelength), plus the physical wavelength and spacing.
//! Keeping positions as exact integers makes difference co-array analysis
//! exact; physical coordinates are derived on demand.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum [m/s], exact by SI definition.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Generator family a layout originates from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ArrayKind {
    /// Dense uniform array: every slot occupied.
    Dua,
    /// Two-level nested array (dense level + widely spaced level).
    Na,
    /// Coprime array: two interleaved uniform subarrays with coprime pitches.
    Ca,
    /// Non-redundant array: all pairwise differences distinct.
    Nra,
    /// Widely-spaced multi-subarray: uniform subarrays on a uniform grid of
    /// enlarged pitch.
    Wsms,
    /// Multi-subarray whose subarray starts follow the nested rule.
    Nms,
    /// Multi-subarray whose subarray starts follow the coprime rule.
    Cms,
    /// Multi-subarray whose subarray starts follow the non-redundant rule.
    Nrms,
    /// Anything else: hand-written or produced by the layout search.
    Custom,
}

impl ArrayKind {
    /// Canonical upper-case name, matching the JSON encoding.
    pub fn as_str(self) -> &'static str {
        match self {
            ArrayKind::Dua => "DUA",
            ArrayKind::Na => "NA",
            ArrayKind::Ca => "CA",
            ArrayKind::Nra => "NRA",
            ArrayKind::Wsms => "WSMS",
            ArrayKind::Nms => "NMS",
            ArrayKind::Cms => "CMS",
            ArrayKind::Nrms => "NRMS",
            ArrayKind::Custom => "CUSTOM",
        }
    }
}

impl fmt::Display for ArrayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Wire form of [`ArrayLayout`]; kept separate so deserialization always
/// re-validates the invariants.
#[derive(Serialize, Deserialize)]
struct RawLayout {
    kind: ArrayKind,
    indices: Vec<u64>,
    wavelength_m: f64,
    spacing_m: f64,
}

/// A linear array: integer element positions in units of `spacing_m`.
///
/// Invariants (enforced by every constructor and on JSON import):
/// - `indices` strictly increasing with `indices[0] == 0`,
/// - at least two elements,
/// - `wavelength_m > 0` and `spacing_m > 0`, both finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLayout", into = "RawLayout")]
pub struct ArrayLayout {
    kind: ArrayKind,
    indices: Vec<u64>,
    wavelength_m: f64,
    spacing_m: f64,
}

impl TryFrom<RawLayout> for ArrayLayout {
    type Error = Error;

    fn try_from(raw: RawLayout) -> Result<Self> {
        ArrayLayout::validated(raw.kind, raw.indices, raw.wavelength_m, raw.spacing_m)
    }
}

impl From<ArrayLayout> for RawLayout {
    fn from(layout: ArrayLayout) -> Self {
        RawLayout {
            kind: layout.kind,
            indices: layout.indices,
            wavelength_m: layout.wavelength_m,
            spacing_m: layout.spacing_m,
        }
    }
}

impl ArrayLayout {
    /// Validating constructor used by all generators; spacing is explicit.
    fn validated(
        kind: ArrayKind,
        indices: Vec<u64>,
        wavelength_m: f64,
        spacing_m: f64,
    ) -> Result<Self> {
        if !(wavelength_m.is_finite() && wavelength_m > 0.0) {
            return Err(Error::InvalidParameter {
                detail: format!("wavelength_m must be positive and finite, got {wavelength_m}"),
            });
        }
        if !(spacing_m.is_finite() && spacing_m > 0.0) {
            return Err(Error::InvalidParameter {
                detail: format!("spacing_m must be positive and finite, got {spacing_m}"),
            });
        }
        if indices.len() < 2 {
            return Err(Error::InvalidCount {
                what: "element count",
                min: 2,
                got: indices.len() as u64,
            });
        }
        if indices[0] != 0 {
            return Err(Error::InvalidLayout {
                detail: format!(
                    "indices must be anchored at 0, got first index {}",
                    indices[0]
                ),
            });
        }
        if let Some(pair) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLayout {
                detail: format!(
                    "indices must be strictly increasing, found {} before {}",
                    pair[0], pair[1]
                ),
            });
        }
        Ok(ArrayLayout {
            kind,
            indices,
            wavelength_m,
            spacing_m,
        })
    }

    /// Builds a layout with the default half-wavelength spacing.
    fn with_default_spacing(kind: ArrayKind, indices: Vec<u64>, wavelength_m: f64) -> Result<Self> {
        Self::validated(kind, indices, wavelength_m, wavelength_m / 2.0)
    }

    /// Hand-written layout from explicit indices, half-wavelength spacing.
    pub fn custom(indices: Vec<u64>, wavelength_m: f64) -> Result<Self> {
        Self::with_default_spacing(ArrayKind::Custom, indices, wavelength_m)
    }

    /// Hand-written layout with an explicit physical spacing override.
    pub fn custom_with_spacing(
        indices: Vec<u64>,
        wavelength_m: f64,
        spacing_m: f64,
    ) -> Result<Self> {
        Self::validated(ArrayKind::Custom, indices, wavelength_m, spacing_m)
    }

    /// Dense uniform array `{0, 1, ..., n-1}`.
    pub fn dua(n: u64, wavelength_m: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCount {
                what: "element count",
                min: 2,
                got: n,
            });
        }
        Self::with_default_spacing(ArrayKind::Dua, (0..n).collect(), wavelength_m)
    }

    /// Two-level nested array.
    ///
    /// The dense level holds `floor(n/2)` elements at `{0, ..., floor(n/2)-1}`;
    /// the sparse level holds `ceil(n/2)` elements at
    /// `{k*(floor(n/2)+1) - 1 : k = 1, ..., ceil(n/2)}`. For even `n` this is
    /// the classic construction (second level starting at `n/2` with pitch
    /// `n/2 + 1`); the same rule extends to odd `n`, e.g. `n = 7` gives
    /// `{0,1,2,3,7,11,15}`.
    pub fn nested(n: u64, wavelength_m: f64) -> Result<Self> {
        Self::with_default_spacing(ArrayKind::Na, nested_indices(n)?, wavelength_m)
    }

    /// Coprime array: union of `{k*p : k = 0..q-1}` and `{k*q : k = 0..2p-1}`.
    ///
    /// The two uniform subarrays overlap only at the origin, so the element
    /// count is always `q + 2p - 1`.
    pub fn coprime(p: u64, q: u64, wavelength_m: f64) -> Result<Self> {
        Self::with_default_spacing(ArrayKind::Ca, coprime_indices(p, q)?, wavelength_m)
    }

    /// Non-redundant array (perfect/optimal difference ruler) of order `n`
    /// from the built-in lookup table.
    pub fn non_redundant(n: u64, wavelength_m: f64) -> Result<Self> {
        Self::with_default_spacing(ArrayKind::Nra, non_redundant_indices(n)?, wavelength_m)
    }

    /// Widely-spaced multi-subarray: `m` dense subarrays of `k` elements whose
    /// starts sit on a uniform grid of pitch `stride_units`.
    pub fn wsms(m: u64, k: u64, stride_units: u64, wavelength_m: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidCount {
                what: "subarray count",
                min: 1,
                got: m,
            });
        }
        if k < 1 {
            return Err(Error::InvalidCount {
                what: "subarray size",
                min: 1,
                got: k,
            });
        }
        if stride_units < k {
            return Err(Error::OverlappingSubarrays {
                detail: format!("stride {stride_units} is smaller than the subarray size {k}"),
            });
        }
        let indices: Vec<u64> = (0..m)
            .flat_map(|j| (0..k).map(move |i| j * stride_units + i))
            .collect();
        Self::with_default_spacing(ArrayKind::Wsms, indices, wavelength_m)
    }

    /// Multi-subarray layout: each "super-element" of a base sparse layout is
    /// expanded into a dense subarray of `spec.subarray_size` elements.
    pub fn multi_subarray(spec: &MultiSubarraySpec, wavelength_m: f64) -> Result<Self> {
        let starts = spec.base_indices()?;
        if spec.subarray_size < 1 {
            return Err(Error::InvalidCount {
                what: "subarray size",
                min: 1,
                got: spec.subarray_size,
            });
        }
        let k = spec.subarray_size;
        let stride = spec.stride_units.unwrap_or(k);
        let mut set = BTreeSet::new();
        for &start in &starts {
            for i in 0..k {
                set.insert(start * stride + i);
            }
        }
        if set.len() as u64 != starts.len() as u64 * k {
            return Err(Error::OverlappingSubarrays {
                detail: format!(
                    "stride {stride} makes subarrays of size {k} collide ({} distinct of {} placed elements)",
                    set.len(),
                    starts.len() as u64 * k
                ),
            });
        }
        let kind = match spec.base {
            SubarrayBase::Dua => ArrayKind::Wsms,
            SubarrayBase::Nested => ArrayKind::Nms,
            SubarrayBase::Coprime { .. } => ArrayKind::Cms,
            SubarrayBase::NonRedundant => ArrayKind::Nrms,
        };
        Self::with_default_spacing(kind, set.into_iter().collect(), wavelength_m)
    }

    /// Generator family of this layout.
    pub fn kind(&self) -> ArrayKind {
        self.kind
    }

    /// Element positions in units of `spacing_m`, strictly increasing from 0.
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Carrier wavelength [m].
    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    /// Physical inter-slot spacing [m].
    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    /// Number of elements.
    pub fn n_elements(&self) -> usize {
        self.indices.len()
    }

    /// Position span `max(indices) - min(indices)` in units of `spacing_m`.
    ///
    /// This is the computed aperture; published tables sometimes print
    /// span + 1 (slot count) instead, which callers may surface separately.
    pub fn aperture_units(&self) -> u64 {
        *self.indices.last().expect("layout has >= 2 elements")
    }

    /// Physical aperture `aperture_units * spacing_m` [m].
    pub fn aperture_m(&self) -> f64 {
        self.aperture_units() as f64 * self.spacing_m
    }

    /// Fraunhofer (Rayleigh) distance `2 D^2 / lambda` [m], the classic
    /// boundary between the radiative near field and the far field.
    pub fn fraunhofer_distance_m(&self) -> f64 {
        let d = self.aperture_m();
        2.0 * d * d / self.wavelength_m
    }

    /// Physical element positions on the x-axis [m], `indices[n] * spacing_m`.
    pub fn element_positions_m(&self) -> Vec<f64> {
        self.indices
            .iter()
            .map(|&i| i as f64 * self.spacing_m)
            .collect()
    }

    /// Serializes to the layout JSON document
    /// `{kind, indices, wavelength_m, spacing_m}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layout serialization cannot fail")
    }

    /// Parses and re-validates a layout JSON document. Malformed JSON
    /// surfaces as [`Error::Json`]; a well-formed document violating the
    /// layout invariants surfaces as a layout error.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLayout = serde_json::from_str(text)?;
        ArrayLayout::try_from(raw)
    }
}

/// Base rule for the subarray start positions of a multi-subarray layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubarrayBase {
    /// Starts on a dense grid `{0, ..., M-1}`.
    Dua,
    /// Starts follow the two-level nested rule.
    Nested,
    /// Starts follow the coprime rule for the given `(p, q)`.
    Coprime { p: u64, q: u64 },
    /// Starts follow the non-redundant ruler of order `M`.
    NonRedundant,
}

/// Parameters of a multi-subarray layout: `num_subarrays` super-elements,
/// each expanded into a dense subarray of `subarray_size` elements; super
/// positions are scaled by `stride_units` (defaults to the subarray size,
/// which packs subarrays edge to edge when the base is dense at that slot).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiSubarraySpec {
    pub base: SubarrayBase,
    pub num_subarrays: u64,
    pub subarray_size: u64,
    pub stride_units: Option<u64>,
}

impl MultiSubarraySpec {
    /// Super-element start positions, validated against `num_subarrays`.
    fn base_indices(&self) -> Result<Vec<u64>> {
        let starts = match self.base {
            SubarrayBase::Dua => {
                if self.num_subarrays < 2 {
                    return Err(Error::InvalidCount {
                        what: "subarray count",
                        min: 2,
                        got: self.num_subarrays,
                    });
                }
                (0..self.num_subarrays).collect()
            }
            SubarrayBase::Nested => nested_indices(self.num_subarrays)?,
            SubarrayBase::Coprime { p, q } => {
                let starts = coprime_indices(p, q)?;
                if starts.len() as u64 != self.num_subarrays {
                    return Err(Error::InvalidParameter {
                        detail: format!(
                            "coprime base (p={p}, q={q}) yields {} super-elements, but num_subarrays is {}",
                            starts.len(),
                            self.num_subarrays
                        ),
                    });
                }
                starts
            }
            SubarrayBase::NonRedundant => non_redundant_indices(self.num_subarrays)?,
        };
        Ok(starts)
    }
}

/// Two-level nested positions; see [`ArrayLayout::nested`].
pub(crate) fn nested_indices(n: u64) -> Result<Vec<u64>> {
    if n < 4 {
        return Err(Error::InvalidCount {
            what: "nested element count",
            min: 4,
            got: n,
        });
    }
    let n1 = n / 2;
    let n2 = n - n1;
    let indices: Vec<u64> = (0..n1).chain((1..=n2).map(|k| k * (n1 + 1) - 1)).collect();
    Ok(indices)
}

/// Coprime positions; see [`ArrayLayout::coprime`].
pub(crate) fn coprime_indices(p: u64, q: u64) -> Result<Vec<u64>> {
    if p < 1 {
        return Err(Error::InvalidCoprimePair {
            p,
            q,
            reason: "p must be positive",
        });
    }
    if p >= q {
        return Err(Error::InvalidCoprimePair {
            p,
            q,
            reason: "p must be smaller than q",
        });
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidCoprimePair {
            p,
            q,
            reason: "p and q must be coprime",
        });
    }
    let set: BTreeSet<u64> = (0..q)
        .map(|k| k * p)
        .chain((0..2 * p).map(|k| k * q))
        .collect();
    Ok(set.into_iter().collect())
}

/// Tabulated non-redundant rulers (all pairwise differences distinct), keyed
/// by element count. Entries for orders up to 6 are certified optimal by the
/// exhaustive search in the co-array module's tests.
pub(crate) fn non_redundant_indices(n: u64) -> Result<Vec<u64>> {
    let table: &[u64] = match n {
        2 => &[0, 1],
        3 => &[0, 1, 3],
        4 => &[0, 1, 4, 6],
        5 => &[0, 1, 4, 9, 11],
        6 => &[0, 1, 4, 10, 12, 17],
        8 => &[0, 1, 4, 9, 15, 22, 32, 34],
        _ => {
            return Err(Error::UnsupportedOrder {
                n,
                supported: "2-6, 8",
            })
        }
    };
    Ok(table.to_vec())
}
