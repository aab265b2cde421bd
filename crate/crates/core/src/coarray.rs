//! Difference co-array analysis and exhaustive max-DoF layout search.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::ArrayLayout;

/// Difference co-array of a layout: every pairwise position difference
/// `a - b`, its multiplicity, and the derived hole structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coarray {
    lags: Vec<i64>,
    weights: BTreeMap<i64, u64>,
    holes: Vec<i64>,
    contiguous_half_len: u64,
}

impl Coarray {
    /// Computes the co-array of a set of element positions.
    ///
    /// The input is treated as a set: order is irrelevant and duplicates
    /// collapse, so translated or permuted copies of a layout produce the
    /// identical co-array.
    pub fn from_indices(indices: &[u64]) -> Self {
        let set: Vec<i64> = {
            let mut v: Vec<i64> = indices.iter().map(|&i| i as i64).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut weights: BTreeMap<i64, u64> = BTreeMap::new();
        for &a in &set {
            for &b in &set {
                *weights.entry(a - b).or_insert(0) += 1;
            }
        }
        let lags: Vec<i64> = weights.keys().copied().collect();
        let max_lag = *lags.last().unwrap_or(&0);
        let holes: Vec<i64> = (1..=max_lag).filter(|l| !weights.contains_key(l)).collect();
        let mut contiguous_half_len = 0u64;
        while weights.contains_key(&(contiguous_half_len as i64 + 1)) {
            contiguous_half_len += 1;
        }
        Coarray {
            lags,
            weights,
            holes,
            contiguous_half_len,
        }
    }

    /// Sorted distinct lags, symmetric about zero.
    pub fn lags(&self) -> &[i64] {
        &self.lags
    }

    /// Multiplicity of each lag (number of ordered element pairs realizing it).
    pub fn weights(&self) -> &BTreeMap<i64, u64> {
        &self.weights
    }

    /// Multiplicity of one lag; zero if the lag is a hole.
    pub fn weight(&self, lag: i64) -> u64 {
        self.weights.get(&lag).copied().unwrap_or(0)
    }

    /// Degrees of freedom: the number of distinct lags (zero and negative
    /// lags included).
    pub fn dof(&self) -> usize {
        self.lags.len()
    }

    /// Positive lags missing from `[1, max(lags)]`, sorted ascending.
    pub fn holes(&self) -> &[i64] {
        &self.holes
    }

    /// Largest `L` such that every lag in `{0, ..., L}` is present.
    pub fn contiguous_half_len(&self) -> u64 {
        self.contiguous_half_len
    }

    /// True when the positive lags have no gaps up to the maximum lag.
    pub fn is_hole_free(&self) -> bool {
        self.holes.is_empty()
    }
}

/// Computes the difference co-array of a layout.
pub fn difference_coarray(layout: &ArrayLayout) -> Coarray {
    Coarray::from_indices(layout.indices())
}

/// One row of a co-array comparison report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofRow {
    pub name: String,
    pub n_elements: usize,
    pub span: u64,
    pub dof: usize,
    pub holes: usize,
}

/// Summarizes a batch of named layouts, preserving input order.
pub fn dof_report(entries: &[(&str, &ArrayLayout)]) -> Result<Vec<DofRow>> {
    if entries.is_empty() {
        return Err(Error::InvalidParameter {
            detail: "dof_report requires at least one layout".to_string(),
        });
    }
    Ok(entries
        .iter()
        .map(|(name, layout)| {
            let ca = difference_coarray(layout);
            DofRow {
                name: (*name).to_string(),
                n_elements: layout.n_elements(),
                span: layout.aperture_units(),
                dof: ca.dof(),
                holes: ca.holes().len(),
            }
        })
        .collect())
}

/// Renders a DoF report as CSV (`name,n_elements,span,dof,holes`).
pub fn dof_report_csv(rows: &[DofRow]) -> String {
    let mut out = String::from("name,n_elements,span,dof,holes\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.name, r.n_elements, r.span, r.dof, r.holes
        ));
    }
    out
}

/// Largest instance the exhaustive search accepts.
const SEARCH_MAX_N: u64 = 10;
const SEARCH_MAX_SPAN: u64 = 40;

/// Exhaustively searches for the layout of `n_elements` elements within
/// `max_span` slots that maximizes the difference co-array DoF.
///
/// Layouts are anchored at 0 and may end at or before `max_span`. Ties are
/// broken by smaller span, then by lexicographically smallest index vector,
/// so the result is a deterministic certified optimum. Guarded to
/// `n_elements <= 10` and `max_span <= 40` to keep the enumeration tractable.
pub fn search_max_dof(n_elements: u64, max_span: u64, wavelength_m: f64) -> Result<ArrayLayout> {
    if n_elements < 2 {
        return Err(Error::InvalidCount {
            what: "element count",
            min: 2,
            got: n_elements,
        });
    }
    if n_elements > SEARCH_MAX_N || max_span > SEARCH_MAX_SPAN {
        return Err(Error::SearchTooLarge {
            n: n_elements,
            max_span,
            limit: "n <= 10 and max_span <= 40",
        });
    }
    if max_span < n_elements - 1 {
        return Err(Error::InvalidParameter {
            detail: format!(
                "max_span {max_span} cannot host {n_elements} distinct elements anchored at 0"
            ),
        });
    }

    let k = (n_elements - 1) as usize;
    // positions other than the anchor, chosen from 1..=max_span
    let mut comb: Vec<u64> = (1..=k as u64).collect();
    let mut best: Option<(usize, u64, Vec<u64>)> = None;
    loop {
        // distinct positive lags as a bitset; max_span <= 40 < 64 bits
        let mut bits: u64 = 0;
        for i in 0..k {
            bits |= 1 << comb[i]; // lag to the anchor at 0
            for j in (i + 1)..k {
                bits |= 1 << (comb[j] - comb[i]);
            }
        }
        let dof = 2 * bits.count_ones() as usize + 1;
        let span = comb[k - 1];
        let better = match &best {
            None => true,
            Some((best_dof, best_span, _)) => {
                dof > *best_dof || (dof == *best_dof && span < *best_span)
            }
        };
        if better {
            best = Some((dof, span, comb.clone()));
        }

        // advance to the next combination in lexicographic order
        let mut advanced = false;
        for i in (0..k).rev() {
            if comb[i] < max_span - (k - 1 - i) as u64 {
                comb[i] += 1;
                for j in (i + 1)..k {
                    comb[j] = comb[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            let (dof, _, positions) = best.expect("at least one combination evaluated");
            let mut indices = vec![0u64];
            indices.extend(positions);
            let layout = ArrayLayout::custom(indices, wavelength_m)?;
            debug_assert_eq!(difference_coarray(&layout).dof(), dof);
            return Ok(layout);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SPEED_OF_LIGHT_M_PER_S;

    const LAM: f64 = SPEED_OF_LIGHT_M_PER_S / 100e9;

    #[test]
    fn dua_coarray_is_hole_free_with_2n_minus_1_lags() {
        for n in 2u64..=64 {
            let layout = ArrayLayout::dua(n, LAM).unwrap();
            let ca = difference_coarray(&layout);
            assert_eq!(ca.dof() as u64, 2 * n - 1, "dof for DUA({n})");
            assert!(ca.is_hole_free());
            assert_eq!(ca.contiguous_half_len(), n - 1);
            assert_eq!(ca.weight(0), n);
            let total: u64 = ca.weights().values().sum();
            assert_eq!(total, n * n, "weight mass for DUA({n})");
        }
    }

    #[test]
    fn nested_coarray_is_hole_free_with_known_dof() {
        for n in [4u64, 6, 8, 10, 12] {
            let layout = ArrayLayout::nested(n, LAM).unwrap();
            let ca = difference_coarray(&layout);
            let half = n / 2;
            assert_eq!(
                ca.dof() as u64,
                2 * half * (half + 1) - 1,
                "dof for NA({n})"
            );
            assert!(ca.is_hole_free(), "holes in NA({n}): {:?}", ca.holes());
        }
    }

    #[test]
    fn non_redundant_eight_element_structure() {
        let layout = ArrayLayout::non_redundant(8, LAM).unwrap();
        let ca = difference_coarray(&layout);
        assert_eq!(ca.dof(), 57);
        assert_eq!(ca.holes(), &[16, 20, 24, 26, 27, 29]);
        assert_eq!(ca.contiguous_half_len(), 15);
        // non-redundant: every nonzero lag is realized by exactly one pair
        assert!(ca.weights().iter().all(|(&lag, &w)| lag == 0 || w == 1));
    }

    #[test]
    fn coarray_is_symmetric_and_translation_invariant() {
        let layout = ArrayLayout::coprime(2, 5, LAM).unwrap();
        let ca = difference_coarray(&layout);
        for &l in ca.lags() {
            assert_eq!(ca.weight(l), ca.weight(-l), "asymmetric weight at {l}");
        }
        let shifted: Vec<u64> = layout.indices().iter().map(|&i| i + 13).collect();
        assert_eq!(ca, Coarray::from_indices(&shifted));
        let mut reversed: Vec<u64> = layout.indices().to_vec();
        reversed.reverse();
        assert_eq!(ca, Coarray::from_indices(&reversed));
    }

    #[test]
    fn dof_report_preserves_order_and_counts_holes() {
        let dua = ArrayLayout::dua(8, LAM).unwrap();
        let nra = ArrayLayout::non_redundant(8, LAM).unwrap();
        let rows = dof_report(&[("dua:8", &dua), ("nra:8", &nra)]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].name, "dua:8");
        assert_eq!(rows[0].dof, 15);
        assert_eq!(rows[0].holes, 0);
        assert_eq!(rows[1].span, 34);
        assert_eq!(rows[1].dof, 57);
        assert_eq!(rows[1].holes, 6);
        let csv = dof_report_csv(&rows);
        assert_eq!(
            csv,
            "name,n_elements,span,dof,holes\ndua:8,8,7,15,0\nnra:8,8,34,57,6\n"
        );
        assert!(matches!(
            dof_report(&[]),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn search_finds_perfect_rulers() {
        let l = search_max_dof(4, 6, LAM).unwrap();
        assert_eq!(l.indices(), &[0, 1, 4, 6]);
        assert_eq!(difference_coarray(&l).dof(), 13);

        let l = search_max_dof(3, 3, LAM).unwrap();
        assert_eq!(l.indices(), &[0, 1, 3]);
        assert_eq!(difference_coarray(&l).dof(), 7);

        let l = search_max_dof(2, 1, LAM).unwrap();
        assert_eq!(l.indices(), &[0, 1]);
    }

    #[test]
    fn search_prefers_smaller_span_on_dof_ties() {
        // with a slack budget the perfect 4-element ruler still spans only 6
        let l = search_max_dof(4, 8, LAM).unwrap();
        assert_eq!(difference_coarray(&l).dof(), 13);
        assert_eq!(l.aperture_units(), 6);
        assert_eq!(l.indices(), &[0, 1, 4, 6]);
    }

    #[test]
    fn search_guards() {
        assert!(matches!(
            search_max_dof(11, 20, LAM),
            Err(Error::SearchTooLarge { .. })
        ));
        assert!(matches!(
            search_max_dof(4, 41, LAM),
            Err(Error::SearchTooLarge { .. })
        ));
        assert!(matches!(
            search_max_dof(1, 5, LAM),
            Err(Error::InvalidCount { .. })
        ));
        assert!(matches!(
            search_max_dof(5, 3, LAM),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn search_dominates_closed_form_generators() {
        // same element count and span budget: the certified optimum is at
        // least as good as any closed-form construction
        let nested = ArrayLayout::nested(6, LAM).unwrap();
        let budget = nested.aperture_units();
        let found = search_max_dof(6, budget, LAM).unwrap();
        assert!(difference_coarray(&found).dof() >= difference_coarray(&nested).dof());

        let coprime = ArrayLayout::coprime(2, 5, LAM).unwrap();
        let found =
            search_max_dof(coprime.n_elements() as u64, coprime.aperture_units(), LAM).unwrap();
        assert!(difference_coarray(&found).dof() >= difference_coarray(&coprime).dof());
    }

    #[test]
    fn dof_upper_bound_with_hole_free_equality() {
        for layout in [
            ArrayLayout::dua(9, LAM).unwrap(),
            ArrayLayout::nested(8, LAM).unwrap(),
            ArrayLayout::coprime(2, 5, LAM).unwrap(),
            ArrayLayout::non_redundant(8, LAM).unwrap(),
            ArrayLayout::wsms(4, 2, 4, LAM).unwrap(),
        ] {
            let ca = difference_coarray(&layout);
            let n = layout.n_elements() as u64;
            let span_bound = 2 * layout.aperture_units() + 1;
            let pair_bound = n * n - n + 1;
            assert!(ca.dof() as u64 <= span_bound.min(pair_bound));
            assert_eq!(
                ca.dof() as u64 == span_bound,
                ca.is_hole_free(),
                "hole-free iff span bound tight, layout {:?}",
                layout.indices()
            );
        }
    }
}
