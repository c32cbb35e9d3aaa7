use defect_forge::json::{cover_from_json, cover_to_json};
use defect_forge_core::{build_s_r, ComplexityTable};

#[test]
fn covers_match_golden_files() {
    let table = ComplexityTable::build(100_000).unwrap();
    for (r, golden) in [
        ("1/2", include_str!("golden/s_1_2.json")),
        ("1", include_str!("golden/s_1.json")),
        ("3/2", include_str!("golden/s_3_2.json")),
    ] {
        let cover = build_s_r(&table, r.parse().unwrap()).unwrap();
        assert_eq!(cover_to_json(&cover), golden, "S_{r}");
        assert_eq!(cover_from_json(golden).unwrap(), cover);
    }
}
