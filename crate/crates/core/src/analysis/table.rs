use super::{convergence_order, ErrorReport};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "alpha,tau,h,err_L2,co_L2,err_C,co_C,err_grad,co_grad";

/// One refinement rung. CO fields are `None` on the first rung.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub tau: f64,
    pub h: f64,
    pub err_l2: f64,
    pub co_l2: Option<f64>,
    pub err_c: f64,
    pub co_c: Option<f64>,
    pub err_grad: f64,
    pub co_grad: Option<f64>,
}

/// Errors and pairwise orders along a refinement ladder for one α.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub alpha: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Orders are taken with respect to τ, as in the published tables; a row
    /// whose τ did not shrink gets no order.
    pub fn from_reports(alpha: f64, reports: &[ErrorReport]) -> Self {
        let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(reports.len());
        for (r, rep) in reports.iter().enumerate() {
            let order = |pick: fn(&ErrorReport) -> f64| {
                let prev = &reports[r.checked_sub(1)?];
                convergence_order(pick(prev), pick(rep), prev.grid.tau, rep.grid.tau).ok()
            };
            rows.push(ConvergenceRow {
                tau: rep.grid.tau,
                h: rep.grid.h,
                err_l2: rep.err_l2,
                co_l2: order(|e| e.err_l2),
                err_c: rep.err_c,
                co_c: order(|e| e.err_c),
                err_grad: rep.err_grad,
                co_grad: order(|e| e.err_grad),
            });
        }
        Self { alpha, rows }
    }

    pub fn last(&self) -> Option<&ConvergenceRow> {
        self.rows.last()
    }
}

fn fmt_err(v: f64) -> String {
    format!("{v:.6e}")
}

fn fmt_co(v: Option<f64>) -> String {
    v.map(|c| format!("{c:.4}")).unwrap_or_default()
}

/// CSV with one header line; several tables are concatenated row-wise.
pub fn write_csv(tables: &[ConvergenceTable]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for t in tables {
        for r in &t.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                t.alpha,
                r.tau,
                r.h,
                fmt_err(r.err_l2),
                fmt_co(r.co_l2),
                fmt_err(r.err_c),
                fmt_co(r.co_c),
                fmt_err(r.err_grad),
                fmt_co(r.co_grad)
            ));
        }
    }
    out
}

/// Parses the output of [`write_csv`], grouping consecutive rows by α.
pub fn parse_csv(text: &str) -> Result<Vec<ConvergenceTable>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::InvalidArgument(format!(
                "expected header `{CSV_HEADER}`, found `{}`",
                other.unwrap_or("")
            )))
        }
    }
    let mut tables: Vec<ConvergenceTable> = Vec::new();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 9 {
            return Err(Error::InvalidArgument(format!(
                "row {}: expected 9 fields, found {}",
                k + 1,
                fields.len()
            )));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("row {}: bad number `{s}`", k + 1)))
        };
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
        let alpha = num(fields[0])?;
        let row = ConvergenceRow {
            tau: num(fields[1])?,
            h: num(fields[2])?,
            err_l2: num(fields[3])?,
            co_l2: opt(fields[4])?,
            err_c: num(fields[5])?,
            co_c: opt(fields[6])?,
            err_grad: num(fields[7])?,
            co_grad: opt(fields[8])?,
        };
        match tables.last_mut() {
            Some(t) if t.alpha == alpha => t.rows.push(row),
            _ => tables.push(ConvergenceTable { alpha, rows: vec![row] }),
        }
    }
    Ok(tables)
}

/// Writes a step as `1/n` when it is the reciprocal of an integer.
fn fmt_step(s: f64) -> String {
    let inv = 1.0 / s;
    if (inv - inv.round()).abs() < 1e-9 * inv {
        format!("1/{}", inv.round() as u64)
    } else {
        format!("{s}")
    }
}

/// Markdown table with columns padded to equal width.
pub fn write_markdown(tables: &[ConvergenceTable]) -> String {
    let header = ["α", "τ", "h", "max ‖z‖₀", "CO", "max ‖z‖_C", "CO", "max ‖z_x̄]|₀", "CO"];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for t in tables {
        for (k, r) in t.rows.iter().enumerate() {
            cells.push(vec![
                if k == 0 { format!("{}", t.alpha) } else { String::new() },
                fmt_step(r.tau),
                fmt_step(r.h),
                fmt_err(r.err_l2),
                fmt_co(r.co_l2),
                fmt_err(r.err_c),
                fmt_co(r.co_c),
                fmt_err(r.err_grad),
                fmt_co(r.co_grad),
            ]);
        }
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(&cells[0]);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for row in &cells[1..] {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::build_grid;

    fn report(n: usize, m: usize, e: f64) -> ErrorReport {
        ErrorReport {
            err_l2: e,
            err_c: 2.0 * e,
            err_grad: 3.0 * e,
            grid: build_grid(n, m, 1.0, 1.0).unwrap(),
            alpha: 0.5,
        }
    }

    #[test]
    fn orders_from_reports() {
        let t = ConvergenceTable::from_reports(0.5, &[report(18, 10, 4e-3), report(43, 20, 1e-3)]);
        assert_eq!(t.rows[0].co_l2, None);
        assert!((t.rows[1].co_l2.unwrap() - 2.0).abs() < 1e-12);
        assert!((t.rows[1].co_grad.unwrap() - 2.0).abs() < 1e-12);

        let single = ConvergenceTable::from_reports(0.5, &[report(18, 10, 4e-3)]);
        assert_eq!(single.rows.len(), 1);
        assert!(single.rows[0].co_c.is_none());
    }

    #[test]
    fn csv_format_and_round_trip() {
        let t = ConvergenceTable::from_reports(0.5, &[report(18, 10, 4.556026e-3), report(43, 20, 8.011052e-4)]);
        let csv = write_csv(&[t.clone(), ConvergenceTable { alpha: 0.9, ..t.clone() }]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.5,0.1,0.05555555555555555,4.556026e-3,,"), "{first}");
        assert!(lines.next().unwrap().contains(",2.5077,"));

        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[1].alpha, 0.9);
        assert_eq!(parsed[0].rows[0].tau, 0.1);
        assert_eq!(parsed[0].rows[0].h, 1.0 / 18.0);
        assert_eq!(parsed[0].rows[0].err_l2, 4.556026e-3);
        assert_eq!(write_csv(&parsed), csv);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(parse_csv("a,b\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n0.5,x,1,1,,1,,1,\n")).is_err());
        assert!(parse_csv(CSV_HEADER).unwrap().is_empty());
    }

    #[test]
    fn markdown_is_aligned() {
        let t = ConvergenceTable::from_reports(0.5, &[report(18, 10, 4e-3), report(43, 20, 1e-3)]);
        let md = write_markdown(&[t]);
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines.len(), 4);
        let width = lines[0].chars().count();
        assert!(lines.iter().all(|l| l.chars().count() == width));
        assert!(lines[2].contains("1/10") && lines[2].contains("1/18"));
        assert!(lines[3].contains("2.0000"));
    }
}
