use rsir_core::cases::{
    builtin_case, builtin_case_with, compare, emit, exact_table, run_case, run_label, CaseConfig, Reference,
    EULER_COLUMNS, TWO_PHASE_COLUMNS,
};

#[test]
fn csv_has_one_row_per_cell_plus_header() {
    let run = run_case(&builtin_case_with("euler-contact-transport", &[("cells", "37")]).unwrap()).unwrap();
    let csv = run.last().to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 38);
    assert_eq!(lines[0], EULER_COLUMNS.join(","));
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
}

#[test]
fn two_phase_csv_has_nine_columns() {
    let run = run_case(&builtin_case_with("tp-alpha-rest", &[("cells", "20")]).unwrap()).unwrap();
    let csv = run.last().to_csv();
    assert_eq!(csv.lines().next().unwrap(), TWO_PHASE_COLUMNS.join(","));
    assert!(csv.lines().all(|l| l.split(',').count() == 9));
}

#[test]
fn csv_values_round_trip() {
    let run = run_case(&builtin_case_with("euler-shock-tube", &[("cells", "25")]).unwrap()).unwrap();
    let table = run.last();
    for (r, line) in table.to_csv().lines().skip(1).enumerate() {
        for (c, field) in line.split(',').enumerate() {
            assert_eq!(field.parse::<f64>().unwrap(), table.columns[c][r]);
        }
    }
}

#[test]
fn identical_configs_give_identical_csv() {
    let case = builtin_case_with("tp-shock-tube", &[("cells", "50")]).unwrap();
    let a = run_case(&case).unwrap();
    let b = run_case(&case).unwrap();
    assert_eq!(a.last().to_csv(), b.last().to_csv());

    let dir = tempfile::tempdir().unwrap();
    let (mut a, mut b) = (a, b);
    emit(&mut a, &dir.path().join("a")).unwrap();
    emit(&mut b, &dir.path().join("b")).unwrap();
    let read = |d: &str| std::fs::read(dir.path().join(d).join("tp-shock-tube-00.csv")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn emit_writes_one_csv_per_output_time() {
    let mut run = run_case(&builtin_case_with("tp-shock-tube-long", &[("cells", "100")]).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let written = emit(&mut run, dir.path()).unwrap();
    assert_eq!(written.len(), 3 + 3);
    assert_eq!(run.manifest.snapshots.len(), 3);
    let script = std::fs::read_to_string(dir.path().join("tp-shock-tube-long.gp")).unwrap();
    assert_eq!(script.matches("plot '").count(), 8);
    assert!(script.contains("tp-shock-tube-long-02.csv"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["output_times"].as_array().unwrap().len(), 3);
    let times: Vec<f64> = run.snapshots.iter().map(|s| s.time).collect();
    assert_eq!(times, run.case.output_times);
}

#[test]
fn emitted_case_file_parses_back_to_the_same_case() {
    let case = builtin_case_with(
        "tp-shock-tube",
        &[("solver.kind", "rusanov-local"), ("relax.drag", "clift-gauvin")],
    )
    .unwrap();
    let reparsed = CaseConfig::parse(&case.config.to_toml()).unwrap();
    assert_eq!(reparsed, case);
}

#[test]
fn emit_reports_unwritable_paths() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let mut run = run_case(&builtin_case_with("euler-contact-rest", &[("cells", "10")]).unwrap()).unwrap();
    let err = emit(&mut run, &blocker.join("sub")).unwrap_err().to_string();
    assert!(err.contains("file"), "{err}");
}

#[test]
fn self_comparison_is_zero() {
    let run = run_case(&builtin_case_with("tp-shock-tube", &[("cells", "60")]).unwrap()).unwrap();
    let table = compare(std::slice::from_ref(&run), Reference::Run(&run)).unwrap();
    assert!(table.rows.iter().all(|r| r.l1 == 0.0));
}

#[test]
fn exact_reference_matches_exact_table() {
    let run = run_case(&builtin_case_with("euler-shock-tube", &[("cells", "80")]).unwrap()).unwrap();
    let exact = exact_table(&run.case, run.last().time).unwrap();
    let rho = exact.column("rho").unwrap();
    let manual: f64 = run
        .last()
        .column("rho")
        .unwrap()
        .iter()
        .zip(rho)
        .map(|(a, b)| (a - b).abs() * run.case.mesh.dx)
        .sum();
    let table = compare(std::slice::from_ref(&run), Reference::Exact).unwrap();
    assert_eq!(table.l1(&run_label(&run), "rho"), Some(manual));
}

#[test]
fn sod_density_error_converges() {
    let errors: Vec<f64> = ["100", "400"]
        .iter()
        .map(|n| {
            let run = run_case(&builtin_case_with("euler-shock-tube", &[("cells", n)]).unwrap()).unwrap();
            compare(std::slice::from_ref(&run), Reference::Exact)
                .unwrap()
                .l1(&run_label(&run), "rho")
                .unwrap()
        })
        .collect();
    assert!(errors[0] / errors[1] >= 1.5, "{errors:?}");
}

#[test]
fn mismatched_runs_are_rejected() {
    let euler = run_case(&builtin_case_with("euler-contact-rest", &[("cells", "10")]).unwrap()).unwrap();
    let tp = run_case(&builtin_case_with("tp-alpha-rest", &[("cells", "10")]).unwrap()).unwrap();
    assert!(compare(&[euler.clone(), tp.clone()], Reference::Exact).is_err());
    assert!(compare(std::slice::from_ref(&tp), Reference::Exact).is_err());
    assert!(compare(&[], Reference::Exact).is_err());
    let later =
        run_case(&builtin_case_with("euler-contact-rest", &[("cells", "10"), ("end_time", "1e-3")]).unwrap()).unwrap();
    assert!(compare(&[euler, later], Reference::Exact).is_err());
}

#[test]
fn drag_and_velocity_relaxation_run() {
    for drag in [
        &[("relax.drag", "constant"), ("relax.lambda", "1e4")][..],
        &[("relax.drag", "clift-gauvin")][..],
    ] {
        let mut sets = vec![("cells", "50")];
        sets.extend_from_slice(drag);
        let case = builtin_case_with("tp-shock-tube", &sets).unwrap();
        let run = run_case(&case).unwrap();
        assert!(run.manifest.max_defect() <= 1e-12);
        let last = run.last();
        let slip = last
            .column("u1")
            .unwrap()
            .iter()
            .zip(last.column("u2").unwrap())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let free = run_case(&builtin_case_with("tp-shock-tube", &[("cells", "50")]).unwrap()).unwrap();
        let free_slip = free
            .last()
            .column("u1")
            .unwrap()
            .iter()
            .zip(free.last().column("u2").unwrap())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(slip < free_slip, "{slip} vs {free_slip}");
    }
    assert!(builtin_case("euler-shock-tube").is_ok());
}
