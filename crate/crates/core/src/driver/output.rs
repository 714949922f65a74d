//! CSV files with a single `#` metadata line ahead of the header.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::levy::{GridSpec, LevyPath, TrackedJump};

/// A parsed CSV file: the metadata line (without `# `), header and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Input(format!("missing column {name:?}")))
    }

    /// Parses column `name` as `f64` for every row.
    pub fn floats(&self, name: &str) -> Result<Vec<f64>> {
        let c = self.column(name)?;
        self.rows
            .iter()
            .map(|r| {
                r[c].trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Input(format!("column {name:?}: {:?}: {e}", r[c])))
            })
            .collect()
    }
}

pub fn metadata_line(config_hash: &str, seed: u64) -> String {
    format!("burgers-levy v{} config_hash={config_hash} seed={seed}", env!("CARGO_PKG_VERSION"))
}

pub fn write_csv<I>(path: &Path, meta: &str, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut buf = format!("# {meta}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    let meta = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .map(|m| m.trim().to_string());
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
        .collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
    Ok(Table { meta, header, rows })
}

pub fn write_path(path: &Path, meta: &str, p: &LevyPath) -> Result<()> {
    let rows = (0..p.len()).map(|i| vec![p.y(i).to_string(), p.values[i].to_string()]);
    write_csv(path, meta, &["y", "psi"], rows)
}

pub fn write_jumps(path: &Path, meta: &str, p: &LevyPath) -> Result<()> {
    let rows = p
        .tracked_jumps
        .iter()
        .map(|j| vec![j.index.to_string(), p.y(j.index).to_string(), j.size.to_string()]);
    write_csv(path, meta, &["index", "y", "size"], rows)
}

/// Reads a `y,psi` file (and optionally an `index,y,size` jump file) back
/// into a path. The grid is rebuilt from the first and last `y` and must
/// reproduce every `y` in the file.
pub fn read_path(path_csv: &Path, jumps_csv: Option<&Path>) -> Result<LevyPath> {
    let table = read_csv(path_csv)?;
    let ys = table.floats("y")?;
    let values = table.floats("psi")?;
    if ys.len() < 3 {
        return Err(Error::Input(format!("{}: need at least 3 rows", path_csv.display())));
    }
    let grid = GridSpec::new(ys[0], ys[ys.len() - 1], ys.len())?;
    let tol = 1e-9 * grid.step();
    if let Some(i) = ys.iter().enumerate().position(|(i, &y)| (y - grid.point(i)).abs() > tol) {
        return Err(Error::Input(format!(
            "{}: y values are not a uniform grid through 0 (row {i})",
            path_csv.display()
        )));
    }
    let jumps = match jumps_csv {
        Some(jp) => {
            let jt = read_csv(jp)?;
            let ic = jt.column("index")?;
            let sizes = jt.floats("size")?;
            jt.rows
                .iter()
                .zip(sizes)
                .map(|(r, size)| {
                    let index = r[ic]
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Input(format!("jump index {:?}: {e}", r[ic])))?;
                    Ok(TrackedJump { index, size })
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => Vec::new(),
    };
    LevyPath::from_values(grid, values, jumps, format!("file:{}", path_csv.display()))
}
