//! Compact textual layout descriptors.
//!
//! Grammar (case-insensitive kind, no interior whitespace):
//!
//! ```text
//! dua:<n>                  dense uniform array of n elements
//! na:<n>                   two-level nested array of n elements
//! ca:<p>/<q>               coprime array for the pair (p, q)
//! nra:<n>                  non-redundant ruler of order n
//! wsms:<m>x<k>[@<stride>]  m dense subarrays of k elements; stride defaults to 2k
//! nms:<m>x<k>[@<stride>]   nested super-layout of m subarrays; stride defaults to k
//! cms:<p>/<q>x<k>[@<stride>] coprime super-layout (q + 2p - 1 subarrays); stride defaults to k
//! nrms:<m>x<k>[@<stride>]  non-redundant super-layout; stride defaults to k
//! ```
//!
//! Descriptors round-trip through [`LayoutSpec::label`], which elides
//! default strides, and serve as layout names in CSV/JSON artifacts.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{ArrayLayout, MultiSubarraySpec, SubarrayBase};

/// Parsed layout descriptor; see the module docs for the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayoutSpec {
    Dua {
        n: u64,
    },
    Nested {
        n: u64,
    },
    Coprime {
        p: u64,
        q: u64,
    },
    NonRedundant {
        n: u64,
    },
    Wsms {
        m: u64,
        k: u64,
        stride: Option<u64>,
    },
    Nms {
        m: u64,
        k: u64,
        stride: Option<u64>,
    },
    Cms {
        p: u64,
        q: u64,
        k: u64,
        stride: Option<u64>,
    },
    Nrms {
        m: u64,
        k: u64,
        stride: Option<u64>,
    },
}

impl LayoutSpec {
    /// Parses a descriptor string.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |detail: &str| Error::InvalidSpec {
            spec: text.to_string(),
            detail: detail.to_string(),
        };
        let trimmed = text.trim();
        let (head, rest) = trimmed
            .split_once(':')
            .ok_or_else(|| bad("expected '<kind>:<parameters>'"))?;
        let head = head.to_ascii_lowercase();
        let parse_u64 = |s: &str, what: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| bad(&format!("{what} must be a non-negative integer, got '{s}'")))
        };
        // "<m>x<k>[@<stride>]" tail shared by the multi-subarray kinds
        let parse_ms = |s: &str| -> Result<(String, u64, Option<u64>)> {
            let (main, stride) = match s.split_once('@') {
                Some((main, st)) => (main, Some(parse_u64(st, "stride")?)),
                None => (s, None),
            };
            let (first, k) = main
                .split_once('x')
                .ok_or_else(|| bad("expected '<count>x<subarray-size>'"))?;
            Ok((first.to_string(), parse_u64(k, "subarray size")?, stride))
        };
        let parse_pq = |s: &str| -> Result<(u64, u64)> {
            let (p, q) = s.split_once('/').ok_or_else(|| bad("expected '<p>/<q>'"))?;
            Ok((parse_u64(p, "p")?, parse_u64(q, "q")?))
        };
        match head.as_str() {
            "dua" => Ok(LayoutSpec::Dua {
                n: parse_u64(rest, "element count")?,
            }),
            "na" => Ok(LayoutSpec::Nested {
                n: parse_u64(rest, "element count")?,
            }),
            "ca" => {
                let (p, q) = parse_pq(rest)?;
                Ok(LayoutSpec::Coprime { p, q })
            }
            "nra" => Ok(LayoutSpec::NonRedundant {
                n: parse_u64(rest, "element count")?,
            }),
            "wsms" => {
                let (m, k, stride) = parse_ms(rest)?;
                Ok(LayoutSpec::Wsms {
                    m: parse_u64(&m, "subarray count")?,
                    k,
                    stride,
                })
            }
            "nms" => {
                let (m, k, stride) = parse_ms(rest)?;
                Ok(LayoutSpec::Nms {
                    m: parse_u64(&m, "subarray count")?,
                    k,
                    stride,
                })
            }
            "cms" => {
                let (pq, k, stride) = parse_ms(rest)?;
                let (p, q) = parse_pq(&pq)?;
                Ok(LayoutSpec::Cms { p, q, k, stride })
            }
            "nrms" => {
                let (m, k, stride) = parse_ms(rest)?;
                Ok(LayoutSpec::Nrms {
                    m: parse_u64(&m, "subarray count")?,
                    k,
                    stride,
                })
            }
            other => Err(bad(&format!("unknown layout kind '{other}'"))),
        }
    }

    /// Canonical descriptor string; default strides are elided.
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Builds the described layout at the given carrier wavelength.
    pub fn build(&self, wavelength_m: f64) -> Result<ArrayLayout> {
        match *self {
            LayoutSpec::Dua { n } => ArrayLayout::dua(n, wavelength_m),
            LayoutSpec::Nested { n } => ArrayLayout::nested(n, wavelength_m),
            LayoutSpec::Coprime { p, q } => ArrayLayout::coprime(p, q, wavelength_m),
            LayoutSpec::NonRedundant { n } => ArrayLayout::non_redundant(n, wavelength_m),
            LayoutSpec::Wsms { m, k, stride } => {
                ArrayLayout::wsms(m, k, stride.unwrap_or(2 * k), wavelength_m)
            }
            LayoutSpec::Nms { m, k, stride } => ArrayLayout::multi_subarray(
                &MultiSubarraySpec {
                    base: SubarrayBase::Nested,
                    num_subarrays: m,
                    subarray_size: k,
                    stride_units: stride,
                },
                wavelength_m,
            ),
            LayoutSpec::Cms { p, q, k, stride } => ArrayLayout::multi_subarray(
                &MultiSubarraySpec {
                    base: SubarrayBase::Coprime { p, q },
                    num_subarrays: q + 2 * p - 1,
                    subarray_size: k,
                    stride_units: stride,
                },
                wavelength_m,
            ),
            LayoutSpec::Nrms { m, k, stride } => ArrayLayout::multi_subarray(
                &MultiSubarraySpec {
                    base: SubarrayBase::NonRedundant,
                    num_subarrays: m,
                    subarray_size: k,
                    stride_units: stride,
                },
                wavelength_m,
            ),
        }
    }
}

impl FromStr for LayoutSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LayoutSpec::parse(s)
    }
}

impl fmt::Display for LayoutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stride_suffix = |stride: Option<u64>, default: u64| match stride {
            Some(s) if s != default => format!("@{s}"),
            _ => String::new(),
        };
        match *self {
            LayoutSpec::Dua { n } => write!(f, "dua:{n}"),
            LayoutSpec::Nested { n } => write!(f, "na:{n}"),
            LayoutSpec::Coprime { p, q } => write!(f, "ca:{p}/{q}"),
            LayoutSpec::NonRedundant { n } => write!(f, "nra:{n}"),
            LayoutSpec::Wsms { m, k, stride } => {
                write!(f, "wsms:{m}x{k}{}", stride_suffix(stride, 2 * k))
            }
            LayoutSpec::Nms { m, k, stride } => {
                write!(f, "nms:{m}x{k}{}", stride_suffix(stride, k))
            }
            LayoutSpec::Cms { p, q, k, stride } => {
                write!(f, "cms:{p}/{q}x{k}{}", stride_suffix(stride, k))
            }
            LayoutSpec::Nrms { m, k, stride } => {
                write!(f, "nrms:{m}x{k}{}", stride_suffix(stride, k))
            }
        }
    }
}
