use fedvr::TAN_DELTA_MORSE;
use fedvr_bench::config::{PotentialChoice, RunConfig, DEFAULT_FLOP_TIME};
use fedvr_bench::report::{Report, ScanRow};
use fedvr_bench::scan::{cmd_compare, cmd_scan_h, cmd_scan_n};

fn config() -> RunConfig {
    RunConfig {
        method: None,
        potential: PotentialChoice::Morse,
        kernel: None,
        k: 0.5,
        r_max: 100.0,
        plen: vec![1.0],
        n: vec![8, 12, 16],
        points: vec![800, 1600],
        out: None,
        reference: Some(TAN_DELTA_MORSE),
        flop_time: DEFAULT_FLOP_TIME,
    }
}

fn without_time(report: &Report) -> Vec<ScanRow> {
    report
        .rows
        .iter()
        .map(|r| ScanRow {
            time_s: None,
            ..r.clone()
        })
        .collect()
}

#[test]
fn csv_round_trip() {
    let mut report = cmd_compare(&config()).unwrap().report;
    report
        .rows
        .push(ScanRow::failed(3.0, 99.0, "solver error: a, with comma"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cmp.csv");
    report
        .write_csv(std::fs::File::create(&path).unwrap())
        .unwrap();
    let back = Report::read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    let quantized: Vec<ScanRow> = report.rows.iter().map(ScanRow::quantized).collect();
    assert_eq!(back.rows, quantized);
    assert_eq!(back.variable, report.variable);
    assert!(back.with_method && back.with_error && back.with_roundoff);
}

#[test]
fn scans_are_deterministic() {
    let cfg = config();
    let (a, b) = (cmd_scan_n(&cfg).unwrap(), cmd_scan_n(&cfg).unwrap());
    assert_eq!(without_time(&a), without_time(&b));
    let (a, b) = (cmd_scan_h(&cfg).unwrap(), cmd_scan_h(&cfg).unwrap());
    assert_eq!(without_time(&a), without_time(&b));
}

#[test]
fn scan_rows_carry_cost_columns() {
    let report = cmd_scan_n(&config()).unwrap();
    for row in &report.rows {
        let flops = row.flops.unwrap();
        let n = row.variable;
        assert_eq!(flops, 4.0 * 100.0 * (n - 2.0).powi(3));
        assert_eq!(row.est_time_s.unwrap(), flops * DEFAULT_FLOP_TIME);
        assert_eq!(row.points, 100.0 * n);
        assert!(row.roundoff_bound.unwrap() > 0.0);
    }
    let errors: Vec<f64> = report.rows.iter().map(|r| r.error.unwrap().abs()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}
