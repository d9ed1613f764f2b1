//! Containment tables with an append-only record file.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use parking_lot::Mutex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::Field;

use super::{Outcome, SymbolicContext, SymbolicKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRecord {
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

/// One line of the record file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreRow {
    pub fingerprint: String,
    pub a: u32,
    pub b: u32,
    pub record: CellRecord,
}

impl StoreRow {
    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.fingerprint,
            self.a,
            self.b,
            self.record.outcome,
            self.record.witness.as_deref().unwrap_or(""),
            self.record.elapsed_ms
        )
    }

    pub fn parse(line: &str) -> Option<StoreRow> {
        let cols: Vec<&str> = line.split('\t').collect();
        let [fp, a, b, outcome, witness, ms] = cols[..] else {
            return None;
        };
        let outcome = match outcome {
            "holds" => Outcome::Holds,
            "fails" => Outcome::Fails,
            o => Outcome::ResourceLimited(o.strip_prefix("resource-limited:")?.parse().ok()?),
        };
        Some(StoreRow {
            fingerprint: fp.to_string(),
            a: a.parse().ok()?,
            b: b.parse().ok()?,
            record: CellRecord {
                outcome,
                witness: (!witness.is_empty()).then(|| witness.to_string()),
                elapsed_ms: ms.parse().ok()?,
            },
        })
    }
}

/// Reads every well-formed row of a record file; a missing file is empty.
pub fn load_store(path: &Path) -> Result<Vec<StoreRow>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
    };
    let mut rows = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::Io(e.to_string()))?;
        if let Some(r) = StoreRow::parse(&line) {
            rows.push(r);
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub a_max: u32,
    pub b_max: u32,
    pub store: Option<PathBuf>,
    pub parallel: bool,
}

impl SweepOptions {
    pub fn new(a_max: u32, b_max: u32) -> Self {
        SweepOptions { a_max, b_max, store: None, parallel: true }
    }
}

#[derive(Clone, Debug)]
pub struct ContainmentTable {
    pub fingerprint: String,
    pub cells: BTreeMap<(u32, u32), CellRecord>,
    /// Max of `a/b` over failing cells, 1 if none fail; `None` when no cell
    /// produced a verdict.
    pub resurgence_lower: Option<Ratio<u32>>,
    /// Cells read back from the record file instead of computed.
    pub resumed: usize,
}

impl ContainmentTable {
    pub fn get(&self, a: u32, b: u32) -> Option<&CellRecord> {
        self.cells.get(&(a, b))
    }
}

fn resurgence_lower(cells: &BTreeMap<(u32, u32), CellRecord>) -> Option<Ratio<u32>> {
    let decided = cells.values().any(|c| !matches!(c.outcome, Outcome::ResourceLimited(_)));
    if !decided {
        return None;
    }
    let worst = cells
        .iter()
        .filter(|(_, c)| c.outcome == Outcome::Fails)
        .map(|(&(a, b), _)| Ratio::new(a, b))
        .max();
    Some(worst.map_or(Ratio::from_integer(1), |r| r.max(Ratio::from_integer(1))))
}

/// Fills every cell `b ≤ a`, `a ≤ a_max`, `b ≤ b_max`. Cells already in the
/// record file for this ideal are reused; new ones are appended as they finish.
pub fn sweep_table<F: Field>(ctx: &SymbolicContext<F>, opts: &SweepOptions) -> Result<ContainmentTable> {
    if opts.a_max == 0 || opts.b_max == 0 {
        return Err(Error::InvalidArgument("sweep bounds must be at least 1".into()));
    }
    if ctx.class().kind == SymbolicKind::Unsupported {
        return Err(ctx.refuse());
    }
    let fingerprint = ctx.ideal().fingerprint();
    let mut cells = BTreeMap::new();
    if let Some(path) = &opts.store {
        for row in load_store(path)? {
            let in_range = row.b <= row.a && row.a <= opts.a_max && row.b <= opts.b_max && row.b >= 1;
            if row.fingerprint == fingerprint && in_range {
                cells.insert((row.a, row.b), row.record);
            }
        }
    }
    let resumed = cells.len();
    let writer = match &opts.store {
        Some(path) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };
    let todo: Vec<u32> = (1..=opts.a_max)
        .filter(|&a| (1..=a.min(opts.b_max)).any(|b| !cells.contains_key(&(a, b))))
        .collect();
    let done = &cells;
    // one task per row so each symbolic power is computed once
    let row = |a: u32| -> Result<Vec<((u32, u32), CellRecord)>> {
        let mut out = Vec::new();
        for b in 1..=a.min(opts.b_max) {
            if done.contains_key(&(a, b)) {
                continue;
            }
            let rep = ctx.check(a, b)?;
            let rec = CellRecord {
                outcome: rep.outcome,
                witness: rep.witness.as_ref().map(|w| w.to_string()),
                elapsed_ms: rep.elapsed.as_millis() as u64,
            };
            if let Some(w) = &writer {
                let line = StoreRow { fingerprint: fingerprint.clone(), a, b, record: rec.clone() }.to_line();
                let mut f = w.lock();
                writeln!(f, "{line}").and_then(|_| f.flush()).map_err(|e| Error::Io(e.to_string()))?;
            }
            out.push(((a, b), rec));
        }
        Ok(out)
    };
    let computed: Vec<Vec<_>> = if opts.parallel {
        todo.par_iter().map(|&a| row(a)).collect::<Result<_>>()?
    } else {
        todo.iter().map(|&a| row(a)).collect::<Result<_>>()?
    };
    cells.extend(computed.into_iter().flatten());
    let resurgence_lower = resurgence_lower(&cells);
    Ok(ContainmentTable { fingerprint, cells, resurgence_lower, resumed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::LimitKind;

    #[test]
    fn row_round_trip() {
        let row = StoreRow {
            fingerprint: "ab12".into(),
            a: 3,
            b: 2,
            record: CellRecord { outcome: Outcome::Fails, witness: Some("x*y*z".into()), elapsed_ms: 7 },
        };
        assert_eq!(StoreRow::parse(&row.to_line()), Some(row));
        let lim = StoreRow {
            fingerprint: "ab12".into(),
            a: 4,
            b: 2,
            record: CellRecord {
                outcome: Outcome::ResourceLimited(LimitKind::Steps),
                witness: None,
                elapsed_ms: 0,
            },
        };
        assert_eq!(StoreRow::parse(&lim.to_line()), Some(lim));
        assert_eq!(StoreRow::parse("garbage"), None);
    }
}
