//! Static line charts of a results CSV: one line per model against the
//! near-user distance, plus a whitespace-separated `.dat` sidecar.

use std::collections::BTreeMap;

use plotters::prelude::*;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    RxPower,
    Sinr,
}

impl Metric {
    pub fn column(self) -> &'static str {
        match self {
            Metric::RxPower => "rx_power_dbm_mean",
            Metric::Sinr => "sinr_db_mean",
        }
    }

    fn axis_label(self) -> &'static str {
        match self {
            Metric::RxPower => "Received power (dBm)",
            Metric::Sinr => "SINR (dB)",
        }
    }

    fn title(self, user: &str) -> String {
        match self {
            Metric::RxPower => format!("Received power at {user}"),
            Metric::Sinr => format!("SINR at {user}"),
        }
    }
}

/// model -> [(d_near, value)] in file order.
type Series = BTreeMap<String, Vec<(f64, f64)>>;

fn read_series(csv_text: &str, metric: Metric, user: &str) -> Result<Series, CliError> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Csv(e.to_string()))?
        .clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Csv(format!("missing column `{name}`")))
    };
    let (x_col, model_col, user_col, y_col) =
        (col("d_near_m")?, col("model")?, col("user")?, col(metric.column())?);

    let mut series = Series::new();
    let mut rows = 0usize;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
        rows += 1;
        let num = |c: usize| {
            record[c]
                .parse::<f64>()
                .map_err(|e| CliError::Csv(format!("row {}: {}: {e}", i + 1, &header[c])))
        };
        let (x, y) = (num(x_col)?, num(y_col)?);
        if &record[user_col] == user {
            series.entry(record[model_col].to_string()).or_default().push((x, y));
        }
    }
    if rows == 0 {
        return Err(CliError::Csv("no data rows".into()));
    }
    if series.is_empty() {
        return Err(CliError::Csv(format!("no rows for user `{user}`")));
    }
    Ok(series)
}

fn sidecar(series: &Series, metric: Metric) -> String {
    let mut xs: Vec<f64> = series.values().flatten().map(|&(x, _)| x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut out = format!("# x=d_near_m y={}\n# d_near_m", metric.column());
    for model in series.keys() {
        out.push(' ');
        out.push_str(model);
    }
    out.push('\n');
    for x in xs {
        out.push_str(&x.to_string());
        for points in series.values() {
            match points.iter().find(|p| p.0 == x) {
                Some(&(_, y)) => out.push_str(&format!(" {y}")),
                None => out.push_str(" nan"),
            }
        }
        out.push('\n');
    }
    out
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// Renders the chart. Returns `(svg, dat)` documents.
pub fn render(csv_text: &str, metric: Metric, user: &str) -> Result<(String, String), CliError> {
    let series = read_series(csv_text, metric, user)?;
    let dat = sidecar(&series, metric);

    let finite: Vec<(f64, f64)> = series
        .values()
        .flatten()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if finite.is_empty() {
        return Err(CliError::Csv("no finite values to plot".into()));
    }
    let fold = |f: fn(&(f64, f64)) -> f64| {
        finite
            .iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (x_lo, x_hi) = fold(|p| p.0);
    let (y_lo, y_hi) = fold(|p| p.1);
    let (x_lo, x_hi) = padded(x_lo, x_hi);
    let (y_lo, y_hi) = padded(y_lo, y_hi);

    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, (800, 560)).into_drawing_area();
        let draw_err = |e: String| CliError::Csv(format!("plot rendering failed: {e}"));
        root.fill(&WHITE).map_err(|e| draw_err(e.to_string()))?;
        let mut chart = ChartBuilder::on(&root)
            .caption(metric.title(user), ("sans-serif", 24))
            .margin(16)
            .x_label_area_size(48)
            .y_label_area_size(72)
            .build_cartesian_2d(x_lo..x_hi, y_lo..y_hi)
            .map_err(|e| draw_err(e.to_string()))?;
        chart
            .configure_mesh()
            .x_desc("Near-user distance (m)")
            .y_desc(metric.axis_label())
            .draw()
            .map_err(|e| draw_err(e.to_string()))?;

        for (i, (model, points)) in series.iter().enumerate() {
            let color = Palette99::pick(i).to_rgba();
            let pts: Vec<(f64, f64)> = points
                .iter()
                .copied()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect();
            chart
                .draw_series(LineSeries::new(pts.clone(), color.stroke_width(2)))
                .map_err(|e| draw_err(e.to_string()))?
                .label(model.as_str())
                .legend(move |(x, y)| PathElement::new([(x, y), (x + 20, y)], color.stroke_width(2)));
            chart
                .draw_series(pts.into_iter().map(|p| Circle::new(p, 3, color.filled())))
                .map_err(|e| draw_err(e.to_string()))?;
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(|e| draw_err(e.to_string()))?;
        root.present().map_err(|e| draw_err(e.to_string()))?;
    }
    Ok((svg, dat))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "d_near_m,d_far_m,model,user,gt_db,gr_db,rx_power_dbm_mean,rx_power_dbm_std,sinr_db_mean,sinr_db_std,n_trials,master_seed
10.0000,20.0000,conventional,u1,10.0000,10.0000,-90.0000,-91.0000,3.00000,2.00000,5,42
10.0000,20.0000,conventional,u2,10.0000,10.0000,-95.0000,-96.0000,1.00000,0.500000,5,42
10.0000,20.0000,modified,u1,5.00000,5.00000,-30.0000,-31.0000,60.0000,58.0000,5,42
10.0000,20.0000,modified,u2,5.00000,5.00000,-36.0000,-37.0000,5.00000,4.00000,5,42
20.0000,40.0000,conventional,u1,10.0000,10.0000,-101.000,-102.000,-8.00000,-9.00000,5,42
20.0000,40.0000,conventional,u2,10.0000,10.0000,-106.000,-107.000,-10.0000,-11.0000,5,42
20.0000,40.0000,modified,u1,5.00000,5.00000,-36.0000,-37.0000,54.0000,52.0000,5,42
20.0000,40.0000,modified,u2,5.00000,5.00000,-42.0000,-43.0000,5.00000,4.00000,5,42
";

    #[test]
    fn renders_svg_and_sidecar() {
        let (svg, dat) = render(CSV, Metric::Sinr, "u2").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("modified"));
        assert_eq!(
            dat,
            "# x=d_near_m y=sinr_db_mean\n# d_near_m conventional modified\n10 1 5\n20 -10 5\n"
        );
    }

    #[test]
    fn missing_metric_column() {
        let text = CSV.replace("sinr_db_mean", "sinr_mean");
        let err = render(&text, Metric::Sinr, "u1").unwrap_err();
        assert!(err.to_string().contains("sinr_db_mean"));
        assert!(render(&text, Metric::RxPower, "u1").is_ok());
    }

    #[test]
    fn header_only_has_no_data_rows() {
        let header = CSV.lines().next().unwrap();
        let err = render(header, Metric::RxPower, "u1").unwrap_err();
        assert!(err.to_string().contains("no data rows"));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn non_numeric_cell_rejected() {
        let text = CSV.replace("-90.0000", "loud");
        assert!(render(&text, Metric::RxPower, "u1").is_err());
    }
}
