//! Frozen desk-scale experiment values: regression anchors for the
//! 512-antenna channel-rank study beyond what the unit tests cover.

use xlsparse_core::{los_channel, rank_vs_distance, ArrayLayout, SPEED_OF_LIGHT_M_PER_S};

const LAM: f64 = SPEED_OF_LIGHT_M_PER_S / 100e9;

#[test]
fn dense_512_rank_falls_from_27_to_1_across_five_decades() {
    let dua = ArrayLayout::dua(512, LAM).unwrap();
    let rows = rank_vs_distance(&dua, &dua, &[10.0, 100.0, 1000.0, 1e5, 1e6], 1e-3).unwrap();
    let ranks: Vec<usize> = rows.iter().map(|r| r.rank).collect();
    assert_eq!(ranks, vec![27, 6, 3, 2, 1]);
}

#[test]
fn dense_512_second_singular_value_straddles_the_threshold() {
    let dua = ArrayLayout::dua(512, LAM).unwrap();
    // at 100 km the second normalized singular value sits just above 1e-3;
    // one more decade pushes it an order of magnitude below
    let near = los_channel(&dua, &dua, 1e5).unwrap();
    let s2_near = near.singular_values()[1];
    assert!((s2_near - 1.028721e-3).abs() < 1e-8, "got {s2_near:e}");

    let far = los_channel(&dua, &dua, 1e6).unwrap();
    let s2_far = far.singular_values()[1];
    assert!((s2_far - 1.028749e-4).abs() < 1e-9, "got {s2_far:e}");
}
