use std::io::{Read, Write};

/// One row of a scan; absent values are written as empty cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    /// `fedvr` / `numerov`, only set in comparison reports.
    pub method: Option<String>,
    /// Scanned quantity: N, partition length or Numerov step.
    pub variable: f64,
    pub points: f64,
    pub tan_delta_match: Option<f64>,
    pub tan_delta_integral: Option<f64>,
    pub error: Option<f64>,
    pub time_s: Option<f64>,
    pub flops: Option<f64>,
    pub est_time_s: Option<f64>,
    pub roundoff_bound: Option<f64>,
    /// `ok` or the failure message.
    pub status: String,
}

impl ScanRow {
    pub fn failed(variable: f64, points: f64, message: impl Into<String>) -> Self {
        Self {
            method: None,
            variable,
            points,
            tan_delta_match: None,
            tan_delta_integral: None,
            error: None,
            time_s: None,
            flops: None,
            est_time_s: None,
            roundoff_bound: None,
            status: message.into(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    /// Every numeric field rounded to the 12 significant digits of the CSV form.
    pub fn quantized(&self) -> Self {
        let q = |x: f64| parse_number(&format_number(x)).unwrap();
        let qo = |x: Option<f64>| x.map(q);
        Self {
            method: self.method.clone(),
            variable: q(self.variable),
            points: q(self.points),
            tan_delta_match: qo(self.tan_delta_match),
            tan_delta_integral: qo(self.tan_delta_integral),
            error: qo(self.error),
            time_s: qo(self.time_s),
            flops: qo(self.flops),
            est_time_s: qo(self.est_time_s),
            roundoff_bound: qo(self.roundoff_bound),
            status: self.status.clone(),
        }
    }
}

/// Rows plus the column layout they are written with.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Header of the first column: `n`, `plen`, `h` or `param`.
    pub variable: String,
    pub with_method: bool,
    pub with_error: bool,
    pub with_roundoff: bool,
    pub rows: Vec<ScanRow>,
}

pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_number(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("bad number {s:?}: {e}"))
}

fn cell(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

impl Report {
    fn header(&self) -> Vec<String> {
        let mut h = Vec::new();
        if self.with_method {
            h.push("method".to_string());
        }
        h.push(self.variable.clone());
        for name in ["points", "tan_delta_match", "tan_delta_integral"] {
            h.push(name.into());
        }
        if self.with_error {
            h.push("error".into());
        }
        for name in ["time_s", "flops", "est_time_s"] {
            h.push(name.into());
        }
        if self.with_roundoff {
            h.push("roundoff_bound".into());
        }
        h.push("status".into());
        h
    }

    fn record(&self, row: &ScanRow) -> Vec<String> {
        let mut r = Vec::new();
        if self.with_method {
            r.push(row.method.clone().unwrap_or_default());
        }
        r.push(format_number(row.variable));
        r.push(format_number(row.points));
        r.push(cell(row.tan_delta_match));
        r.push(cell(row.tan_delta_integral));
        if self.with_error {
            r.push(cell(row.error));
        }
        r.push(cell(row.time_s));
        r.push(cell(row.flops));
        r.push(cell(row.est_time_s));
        if self.with_roundoff {
            r.push(cell(row.roundoff_bound));
        }
        r.push(row.status.clone());
        r
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            w.write_record(self.record(row))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Inverse of `write_csv`; the column layout is taken from the header.
    pub fn read_csv<R: Read>(input: R) -> Result<Self, String> {
        let mut rdr = csv::Reader::from_reader(input);
        let header: Vec<String> = rdr
            .headers()
            .map_err(|e| e.to_string())?
            .iter()
            .map(String::from)
            .collect();
        let with_method = header.first().map(String::as_str) == Some("method");
        let variable = header
            .get(usize::from(with_method))
            .cloned()
            .ok_or("missing variable column")?;
        let with_error = header.iter().any(|h| h == "error");
        let with_roundoff = header.iter().any(|h| h == "roundoff_bound");
        let col = |name: &str| header.iter().position(|h| h == name);
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| e.to_string())?;
            let get = |name: &str| col(name).and_then(|i| rec.get(i)).unwrap_or("");
            let opt = |name: &str| -> Result<Option<f64>, String> {
                let s = get(name);
                if s.is_empty() {
                    Ok(None)
                } else {
                    parse_number(s).map(Some)
                }
            };
            rows.push(ScanRow {
                method: rec
                    .get(0)
                    .filter(|m| with_method && !m.is_empty())
                    .map(str::to_string),
                variable: parse_number(get(&variable))?,
                points: parse_number(get("points"))?,
                tan_delta_match: opt("tan_delta_match")?,
                tan_delta_integral: opt("tan_delta_integral")?,
                error: opt("error")?,
                time_s: opt("time_s")?,
                flops: opt("flops")?,
                est_time_s: opt("est_time_s")?,
                roundoff_bound: opt("roundoff_bound")?,
                status: get("status").to_string(),
            });
        }
        Ok(Report {
            variable,
            with_method,
            with_error,
            with_roundoff,
            rows,
        })
    }

    /// Space-aligned plain-text table.
    pub fn to_table(&self) -> String {
        let mut lines = vec![self.header()];
        lines.extend(self.rows.iter().map(|r| self.record(r)));
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in &lines {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(2.6994702502), "2.69947025020e0");
        assert_eq!(format_number(-1.0e-9), "-1.00000000000e-9");
        assert_eq!(format_number(20.0), "2.00000000000e1");
    }

    #[test]
    fn table_is_aligned() {
        let report = Report {
            variable: "n".into(),
            with_method: false,
            with_error: false,
            with_roundoff: false,
            rows: vec![ScanRow::failed(4.0, 400.0, "ok")],
        };
        let table = report.to_table();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0].find("points").map(|i| i + 6),
            lines[1].find("e2").map(|i| i + 2)
        );
    }
}
