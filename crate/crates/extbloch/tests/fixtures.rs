//! The shipped fixture files stay in lockstep with the in-crate generators,
//! and parse back into chains whose verification suite is all green.

use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;

use extbloch::figure_eight;
use extbloch::io::{self, Input};
use extbloch::pipeline::{self, CheckStatus};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn rendered() -> Vec<(&'static str, String)> {
    let one = figure_eight::figure_eight_chain(Complex64::new(1.0, 0.0)).unwrap();
    let alt = figure_eight::figure_eight_chain(Complex64::new(1.25, -0.5)).unwrap();
    let shapes = figure_eight::figure_eight_shapes().unwrap();
    vec![
        (
            "fig8_decorated.json",
            io::render_json(&io::decorated_file(&one)),
        ),
        (
            "fig8_decorated_alt.json",
            io::render_json(&io::decorated_file(&alt)),
        ),
        ("fig8_shapes.json", io::render_json(&io::shapes_file(&shapes))),
    ]
}

#[test]
fn shipped_fixtures_match_generators() {
    for (name, text) in rendered() {
        let on_disk = fs::read_to_string(fixture_path(name))
            .unwrap_or_else(|e| panic!("{name}: {e}; run the regenerate_fixtures test"));
        assert_eq!(
            on_disk, text,
            "{name} is stale; rerun `cargo test regenerate_fixtures -- --ignored`"
        );
    }
}

#[test]
#[ignore = "rewrites the fixture files from the generators"]
fn regenerate_fixtures() {
    let dir = fixture_path("");
    fs::create_dir_all(&dir).unwrap();
    for (name, text) in rendered() {
        fs::write(fixture_path(name), text).unwrap();
    }
}

#[test]
fn decorated_fixtures_verify_green() {
    for name in ["fig8_decorated.json", "fig8_decorated_alt.json"] {
        let input = io::parse_input_path(&fixture_path(name)).unwrap();
        let chain = match input {
            Input::Decorated(c) => c,
            Input::Shapes(_) => panic!("{name}: wrong mode"),
        };
        let report = pipeline::verify(&chain, 1e-9, true);
        assert!(report.passed, "{name}:\n{}", report.render_text());
        assert_eq!(report.cycle_residual, 0, "{name}");
    }
}

#[test]
fn shapes_fixture_reports_skipped_cycle_checks() {
    let input = io::parse_input_path(&fixture_path("fig8_shapes.json")).unwrap();
    let shapes = match input {
        Input::Shapes(s) => s,
        Input::Decorated(_) => panic!("wrong mode"),
    };
    let report = pipeline::verify_shapes(&shapes, false);
    assert!(report.passed, "{}", report.render_text());
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "cycle" && c.status == CheckStatus::Skipped));
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "volume_consistency" && c.status == CheckStatus::Skipped));

    // Same complex volume as the decorated pipeline.
    let decorated = io::parse_input_path(&fixture_path("fig8_decorated.json")).unwrap();
    let chain = match decorated {
        Input::Decorated(c) => c,
        Input::Shapes(_) => unreachable!(),
    };
    let (v_dec, cs_dec) = pipeline::complex_volume(&chain).unwrap();
    assert!((report.volume - v_dec).abs() <= 1e-12);
    let dc = (report.cs - cs_dec).abs();
    assert!(dc.min(extbloch::kernel::PI_SQ - dc) <= 1e-12);
}
