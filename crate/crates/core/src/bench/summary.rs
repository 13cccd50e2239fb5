//! Aggregation of benchmark rows into per-method and per-(method, sigma)
//! means, plus plot-ready tables.

use std::fmt::Write as _;

use super::BenchRow;
use crate::error::{Error, Result};

/// Means over the successful rows of one group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupStats {
    pub method: String,
    /// `None` for the all-sigma aggregate.
    pub sigma: Option<f64>,
    pub rows: usize,
    pub ok_rows: usize,
    pub mean_psnr_db: f64,
    pub mean_uqi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    /// Methods in first-seen order.
    pub methods: Vec<String>,
    /// Sigmas in ascending order.
    pub sigmas: Vec<f64>,
    pub per_method: Vec<GroupStats>,
    /// Ordered by sigma, then method.
    pub per_method_sigma: Vec<GroupStats>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotMetric {
    Psnr,
    Uqi,
}

fn group<'a>(
    method: &str,
    sigma: Option<f64>,
    rows: impl Iterator<Item = &'a BenchRow>,
) -> GroupStats {
    let (mut n, mut ok, mut psnr, mut uqi) = (0, 0, 0.0, 0.0);
    for r in rows {
        n += 1;
        if let Some(m) = r.metrics() {
            ok += 1;
            psnr += m.psnr_db;
            uqi += m.uqi;
        }
    }
    let mean = |s: f64| if ok == 0 { f64::NAN } else { s / ok as f64 };
    GroupStats {
        method: method.to_string(),
        sigma,
        rows: n,
        ok_rows: ok,
        mean_psnr_db: mean(psnr),
        mean_uqi: mean(uqi),
    }
}

pub fn summarize(rows: &[BenchRow]) -> Result<Summary> {
    if rows.is_empty() {
        return Err(Error::Empty("nothing to summarize"));
    }
    let mut methods: Vec<String> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method) {
            methods.push(r.method.clone());
        }
    }
    let mut sigmas: Vec<f64> = rows.iter().map(|r| r.sigma).collect();
    sigmas.sort_by(f64::total_cmp);
    sigmas.dedup();

    let per_method = methods
        .iter()
        .map(|m| group(m, None, rows.iter().filter(|r| &r.method == m)))
        .collect();
    let mut per_method_sigma = Vec::new();
    for &s in &sigmas {
        for m in &methods {
            let g = group(
                m,
                Some(s),
                rows.iter().filter(|r| &r.method == m && r.sigma == s),
            );
            if g.rows > 0 {
                per_method_sigma.push(g);
            }
        }
    }
    Ok(Summary {
        methods,
        sigmas,
        per_method,
        per_method_sigma,
    })
}

impl Summary {
    pub fn cell(&self, method: &str, sigma: f64) -> Option<&GroupStats> {
        self.per_method_sigma
            .iter()
            .find(|g| g.method == method && g.sigma == Some(sigma))
    }

    /// `method,sigma,rows,ok_rows,mean_psnr_db,mean_uqi`; the all-sigma rows
    /// come last with `sigma = all`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,sigma,rows,ok_rows,mean_psnr_db,mean_uqi\n");
        for g in self.per_method_sigma.iter().chain(&self.per_method) {
            let sigma = g.sigma.map_or_else(|| "all".to_string(), |s| s.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{:.16e},{:.16e}",
                g.method, sigma, g.rows, g.ok_rows, g.mean_psnr_db, g.mean_uqi
            );
        }
        out
    }

    /// Whitespace table: one row per sigma, one column per method.
    pub fn plot_table(&self, metric: PlotMetric) -> String {
        let label = match metric {
            PlotMetric::Psnr => "mean PSNR (dB)",
            PlotMetric::Uqi => "mean UQI",
        };
        let mut out = format!("# {label} by noise sigma\n# sigma");
        for m in &self.methods {
            let _ = write!(out, " {m}");
        }
        out.push('\n');
        for &s in &self.sigmas {
            let _ = write!(out, "{s}");
            for m in &self.methods {
                let v = self.cell(m, s).map_or(f64::NAN, |g| match metric {
                    PlotMetric::Psnr => g.mean_psnr_db,
                    PlotMetric::Uqi => g.mean_uqi,
                });
                let _ = write!(out, " {v:.6}");
            }
            out.push('\n');
        }
        out
    }
}
