//! The results CSV.
//!
//! One row per (sweep point, model, user), sorted by those three keys.
//! Means and standard deviations are computed in the linear domain and
//! converted to dBm / dB on emission; every real-valued field carries six
//! significant digits, so the bytes are a pure function of the scenario.

use irs_noma::noma::User;
use irs_noma::sim::{ModelKind, SweepRecord};

use crate::error::CliError;

pub const HEADER: [&str; 12] = [
    "d_near_m",
    "d_far_m",
    "model",
    "user",
    "gt_db",
    "gr_db",
    "rx_power_dbm_mean",
    "rx_power_dbm_std",
    "sinr_db_mean",
    "sinr_db_std",
    "n_trials",
    "master_seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub d_near_m: f64,
    pub d_far_m: f64,
    pub model: ModelKind,
    pub user: User,
    pub gt_db: f64,
    pub gr_db: f64,
    pub rx_power_dbm_mean: f64,
    pub rx_power_dbm_std: f64,
    pub sinr_db_mean: f64,
    pub sinr_db_std: f64,
    pub n_trials: usize,
    pub master_seed: u64,
}

/// `10·log10(x)`, mapping zero to `-inf`.
pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn rows_from_records(records: &[SweepRecord], master_seed: u64) -> Vec<CsvRow> {
    let mut rows: Vec<CsvRow> = records
        .iter()
        .flat_map(|rec| {
            rec.stats.iter().map(move |s| CsvRow {
                d_near_m: rec.d_near,
                d_far_m: rec.d_far,
                model: s.model,
                user: s.user,
                gt_db: s.gains.gt_db.0,
                gr_db: s.gains.gr_db.0,
                rx_power_dbm_mean: to_db(s.rx_power_w.mean) + 30.0,
                rx_power_dbm_std: to_db(s.rx_power_w.std) + 30.0,
                sinr_db_mean: to_db(s.sinr.mean),
                sinr_db_std: to_db(s.sinr.std),
                n_trials: s.rx_power_w.n,
                master_seed,
            })
        })
        .collect();
    rows.sort_by(|a, b| {
        a.d_near_m
            .total_cmp(&b.d_near_m)
            .then(a.model.cmp(&b.model))
            .then(a.user.cmp(&b.user))
    });
    rows
}

/// Six significant digits: fixed notation for exponents in `[-4, 6)`,
/// scientific otherwise. Trailing zeros are kept.
pub fn format_sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-4..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn write_csv(rows: &[CsvRow]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in rows {
        let fields = [
            format_sig6(r.d_near_m),
            format_sig6(r.d_far_m),
            r.model.as_str().to_string(),
            r.user.as_str().to_string(),
            format_sig6(r.gt_db),
            format_sig6(r.gr_db),
            format_sig6(r.rx_power_dbm_mean),
            format_sig6(r.rx_power_dbm_std),
            format_sig6(r.sinr_db_mean),
            format_sig6(r.sinr_db_std),
            r.n_trials.to_string(),
            r.master_seed.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn parse_user(s: &str) -> Result<User, String> {
    match s {
        "u1" => Ok(User::U1),
        "u2" => Ok(User::U2),
        _ => Err(format!("unknown user `{s}`")),
    }
}

/// Strict parser for files produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Csv(e.to_string()))?
        .clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(CliError::Csv(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
        let bad = |col: &str, e: String| CliError::Csv(format!("row {}: {col}: {e}", line + 1));
        let num = |i: usize| -> Result<f64, CliError> {
            record[i].parse().map_err(|e: std::num::ParseFloatError| bad(HEADER[i], e.to_string()))
        };
        rows.push(CsvRow {
            d_near_m: num(0)?,
            d_far_m: num(1)?,
            model: record[2].parse().map_err(|e| bad("model", e))?,
            user: parse_user(&record[3]).map_err(|e| bad("user", e))?,
            gt_db: num(4)?,
            gr_db: num(5)?,
            rx_power_dbm_mean: num(6)?,
            rx_power_dbm_std: num(7)?,
            sinr_db_mean: num(8)?,
            sinr_db_std: num(9)?,
            n_trials: record[10].parse().map_err(|e: std::num::ParseIntError| bad("n_trials", e.to_string()))?,
            master_seed: record[11].parse().map_err(|e: std::num::ParseIntError| bad("master_seed", e.to_string()))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(10.0), "10.0000");
        assert_eq!(format_sig6(100.0), "100.000");
        assert_eq!(format_sig6(-38.607192), "-38.6072");
        assert_eq!(format_sig6(5.0), "5.00000");
        assert_eq!(format_sig6(0.0), "0.00000");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(1234567.0), "1.23457e6");
        assert_eq!(format_sig6(0.000123456), "0.000123456");
        assert_eq!(format_sig6(1.5e-7), "1.50000e-7");
        assert_eq!(format_sig6(99.999996), "100.000");
        assert_eq!(format_sig6(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn zero_maps_to_negative_infinity() {
        assert_eq!(to_db(0.0), f64::NEG_INFINITY);
        assert_eq!(to_db(100.0), 20.0);
    }

    #[test]
    fn header_mismatch_rejected() {
        let err = parse_csv("d_near_m,model\n1,conventional\n").unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn bad_cell_names_column() {
        let text = format!(
            "{}\n10.0000,20.0000,conventional,u3,10.0000,10.0000,-90.0000,-91.0000,3.00000,2.00000,5,42\n",
            HEADER.join(",")
        );
        let err = parse_csv(&text).unwrap_err().to_string();
        assert!(err.contains("user"), "{err}");
    }
}
