use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::sweep::{ResultRecord, SweepResults};

pub const RESULTS_STEM: &str = "results";

/// `results` for the first distance, `results_z<z>` for the others.
pub fn results_stem(index: usize, z_rayleigh: f64) -> String {
    if index == 0 {
        RESULTS_STEM.to_string()
    } else {
        format!("{RESULTS_STEM}_z{z_rayleigh}")
    }
}

pub fn write_records_csv<W: Write>(records: &[ResultRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records_csv(path: &Path) -> Result<Vec<ResultRecord>> {
    if !path.exists() {
        return Err(Error::MissingResults(path.to_path_buf()));
    }
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// Writes `<stem>.csv` and `<stem>.json` for each sweep and returns the paths.
pub fn write_results(dir: &Path, sweeps: &[SweepResults]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (idx, sweep) in sweeps.iter().enumerate() {
        let stem = results_stem(idx, sweep.z_rayleigh);
        let records = sweep.records();
        let csv_path = dir.join(format!("{stem}.csv"));
        write_records_csv(&records, fs::File::create(&csv_path)?)?;
        let json_path = dir.join(format!("{stem}.json"));
        let mut json = serde_json::to_string_pretty(&records)?;
        json.push('\n');
        fs::write(&json_path, json)?;
        written.push(csv_path);
        written.push(json_path);
    }
    Ok(written)
}

/// Writes a CSV whose header carries units as `name[unit]`.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row.iter().map(|v| format_value(*v)))?;
    }
    writer.flush()?;
    Ok(())
}

fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(l0: i32) -> ResultRecord {
        ResultRecord {
            l0,
            lambda: 0.1,
            delta_phi: 1.2,
            b_numeric: -0.02,
            b_analytic: -0.025,
            b_gaussian: 0.05,
            concurrence_numeric: 0.999,
            concurrence_universal: 0.99,
        }
    }

    #[test]
    fn csv_header_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let sweeps = vec![
            SweepResults {
                z_rayleigh: 0.0,
                results: vec![],
            },
            SweepResults {
                z_rayleigh: 0.5,
                results: vec![],
            },
        ];
        let paths = write_results(dir.path(), &sweeps).unwrap();
        assert!(paths[2].ends_with("results_z0.5.csv"));

        let path = dir.path().join("r.csv");
        write_records_csv(&[record(1), record(3)], fs::File::create(&path).unwrap()).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "l0,lambda,delta_phi,b_numeric,b_analytic,b_gaussian,concurrence_numeric,concurrence_universal"
        );
        assert_eq!(read_records_csv(&path).unwrap(), vec![record(1), record(3)]);
    }

    #[test]
    fn missing_results_file() {
        let r = read_records_csv(Path::new("/nonexistent/results.csv"));
        assert!(matches!(r, Err(Error::MissingResults(_))));
    }

    #[test]
    fn table_formatting() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_table(&path, &["l[hbar]", "p[1]"], &[vec![3.0, 0.25]]).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "l[hbar],p[1]\n3,2.5e-1\n");
    }
}
