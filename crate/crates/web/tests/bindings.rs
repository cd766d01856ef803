use quiverknot_web::{barcode_svg, bundled_text, clique_homology, quiver_report};

fn figure_eight() -> String {
    bundled_text("diagram", "figure_eight").unwrap()
}

#[test]
fn quiver_report_counts_colorings() {
    let out = quiver_report("alexander:5,2,4", &figure_eight()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 5);
    assert_eq!(v["polynomial"], "4u^4 + u^9");
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
}

#[test]
fn homology_text_lists_each_dimension() {
    let z3 = bundled_text("biquandle", "z3").unwrap();
    let d = bundled_text("diagram", "virtual_two_crossing").unwrap();
    let out = clique_homology(&z3, &d, 3, 3, true).unwrap();
    assert_eq!(out.lines().count(), 4);
    assert!(out.starts_with("H_0 = Z^2"), "{out}");
}

#[test]
fn barcode_svg_renders_bundled_filtration() {
    let f = bundled_text("filtration", "alexander_z5_chain").unwrap();
    let svg = barcode_svg("alexander:5,2,4", &figure_eight(), &f, 1, 3).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg, barcode_svg("alexander:5,2,4", &figure_eight(), &f, 1, 3).unwrap());
}

#[test]
fn errors_are_readable() {
    assert!(quiver_report("not a table", &figure_eight()).unwrap_err().starts_with("biquandle"));
    assert!(quiver_report("alexander:5,2,4", "{").unwrap_err().starts_with("diagram"));
    assert!(bundled_text("diagram", "nope").is_err());
    let f = r#"{"stages": [[[1,2,3,4,5]]]}"#;
    assert!(barcode_svg("alexander:5,2,4", &figure_eight(), f, 1, 3).is_err());
}
