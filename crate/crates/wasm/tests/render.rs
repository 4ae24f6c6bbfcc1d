use serde_json::Value;
use smirnov_wasm::{lattice_svg, level_table_json, refinement_svg, MAX_SIDE};

#[test]
fn lattice_draws_one_polyline_per_profile() {
    let svg = lattice_svg(5, 3).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    let family = smirnov_core::lattice::distinct_profiles(5, 3).unwrap();
    assert_eq!(svg.matches("<polyline").count(), family.len());
    assert!(svg.contains(&format!("r = 0: {}", family.entries[0].path)));
    assert_eq!(svg.matches("stroke-dasharray").count(), 1);
}

#[test]
fn level_json_matches_known_values() {
    let v: Value = serde_json::from_str(&level_table_json(10, 10, 3).unwrap()).unwrap();
    assert_eq!(v["total_paths"], "184756");
    assert_eq!(v["natural_levels"], "11");
    assert_eq!(v["saturated_levels"], "56");
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 11);
    assert_eq!(levels[0]["level"], "1/184756");
    assert_eq!(levels[0]["decimal"], "5.41e-6");
    assert_eq!(levels[10]["decimal"], "0.318");
}

#[test]
fn refinement_index_walks_the_stream() {
    // (3,3) has 39 refinements of which 12 are saturated
    assert!(refinement_svg(3, 3, 38, false).is_ok());
    assert!(refinement_svg(3, 3, 39, false).is_err());
    assert!(refinement_svg(3, 3, 11, true).is_ok());
    assert!(refinement_svg(3, 3, 12, true).is_err());
    let svg = refinement_svg(3, 3, 0, true).unwrap();
    assert!(svg.contains("7 paths"));
}

#[test]
fn sizes_are_bounded() {
    assert!(lattice_svg(0, 3).is_err());
    assert!(level_table_json(MAX_SIDE + 1, 2, 3).is_err());
    assert!(refinement_svg(2, MAX_SIDE + 1, 0, false).is_err());
}
