use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::girth::girth_from_roots;
use super::ParityCheckMatrix;
use crate::error::{Error, Result};

/// Resamples allowed by [`sample_qc_ensemble`] before giving up.
pub const ENSEMBLE_RETRY_BUDGET: usize = 10_000;

/// Grid of `p x p` circulant blocks. Each cell lists the shifts of the
/// identity matrices summed into that block; an empty cell is a zero block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcShiftMatrix {
    r: usize,
    s: usize,
    p: u32,
    cells: Vec<Vec<u32>>,
}

impl QcShiftMatrix {
    /// Builds a grid from `r` rows of `s` cells each.
    pub fn new(p: u32, rows: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidMatrix("circulant size must be positive".into()));
        }
        let r = rows.len();
        let s = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(r * s);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != s {
                return Err(Error::InvalidMatrix(format!(
                    "macro-row {a} has {} cells, expected {s}",
                    row.len()
                )));
            }
            for cell in row {
                if let Some(&shift) = cell.iter().find(|&&t| t >= p) {
                    return Err(Error::InvalidShift { shift, p });
                }
                cells.push(cell);
            }
        }
        Ok(QcShiftMatrix { r, s, p, cells })
    }

    /// Grid where every cell holds at most one shift (`None` = zero block).
    pub fn from_single_shifts(p: u32, rows: &[&[Option<u32>]]) -> Result<Self> {
        Self::new(
            p,
            rows.iter()
                .map(|row| row.iter().map(|c| c.iter().copied().collect()).collect())
                .collect(),
        )
    }

    /// Grid with a single shift in every cell.
    pub fn from_dense_shifts<R: AsRef<[u32]>>(p: u32, rows: &[R]) -> Result<Self> {
        Self::new(
            p,
            rows.iter()
                .map(|row| row.as_ref().iter().map(|&t| vec![t]).collect())
                .collect(),
        )
    }

    pub fn macro_rows(&self) -> usize {
        self.r
    }

    pub fn macro_cols(&self) -> usize {
        self.s
    }

    pub fn circulant_size(&self) -> u32 {
        self.p
    }

    pub fn cell(&self, a: usize, b: usize) -> &[u32] {
        &self.cells[a * self.s + b]
    }

    /// Expands the grid into its parity-check matrix. Block `(a, b)` with
    /// shift `t` places ones at `(a*p + u, b*p + (u + t) mod p)`; coinciding
    /// ones from summed shifts cancel.
    pub fn expand(&self) -> ParityCheckMatrix {
        let p = self.p as usize;
        let mut rows = vec![Vec::new(); self.r * p];
        for a in 0..self.r {
            for b in 0..self.s {
                for &t in self.cell(a, b) {
                    for u in 0..p {
                        rows[a * p + u].push(b * p + (u + t as usize) % p);
                    }
                }
            }
        }
        for row in &mut rows {
            row.sort_unstable();
            // pairs of equal entries cancel mod 2
            let mut out: Vec<usize> = Vec::with_capacity(row.len());
            for &c in row.iter() {
                if out.last() == Some(&c) {
                    out.pop();
                } else {
                    out.push(c);
                }
            }
            *row = out;
        }
        ParityCheckMatrix::from_check_neighborhoods(self.s * p, rows)
            .expect("expanded rows are sorted and in range")
    }

    /// Girth of the expanded matrix. Cyclic shifts within blocks are graph
    /// automorphisms, so one root per macro-column is enough.
    pub fn girth(&self) -> Option<u32> {
        let h = self.expand();
        let p = self.p as usize;
        girth_from_roots(&h, (0..self.s).map(|b| b * p))
    }
}

impl fmt::Display for QcShiftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.p, self.r, self.s)?;
        for a in 0..self.r {
            let line = (0..self.s)
                .map(|b| match self.cell(a, b) {
                    [] => "-".to_string(),
                    shifts => shifts
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join("+"),
                })
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for QcShiftMatrix {
    type Err = Error;

    /// Parses the shift-file layout: a `p r s` header, then `r` lines of `s`
    /// tokens, each `-` or `+`-joined decimal shifts.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, msg: String| Error::Parse { line, msg };

        let (no, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "empty shift file".into()))?;
        let header = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(no, format!("bad header: {e}")))?;
        let [p, r, s] = header[..] else {
            return Err(parse_err(no, "expected header `p r s`".into()));
        };
        let p = u32::try_from(p).map_err(|_| parse_err(no, "p too large".into()))?;

        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (no, line) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("expected {r} macro-rows")))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    if tok == "-" {
                        return Ok(Vec::new());
                    }
                    tok.split('+')
                        .map(|t| {
                            t.parse::<u32>()
                                .map_err(|_| parse_err(no, format!("bad shift {tok:?}")))
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<u32>>>>()?;
            if row.len() != s {
                return Err(parse_err(no, format!("expected {s} cells, got {}", row.len())));
            }
            rows.push(row);
        }
        if let Some((no, _)) = lines.next() {
            return Err(parse_err(no, "trailing content".into()));
        }
        QcShiftMatrix::new(p, rows)
    }
}

/// Draws i.i.d. uniform shifts for an `r x s` grid of `p x p` circulants,
/// resampling until the expanded graph has girth at least `min_girth`.
pub fn sample_qc_ensemble<R: Rng + ?Sized>(
    r: usize,
    s: usize,
    p: u32,
    min_girth: u32,
    rng: &mut R,
) -> Result<QcShiftMatrix> {
    if r == 0 || s == 0 || p == 0 {
        return Err(Error::Config("r, s and p must be at least 1".into()));
    }
    for _ in 0..ENSEMBLE_RETRY_BUDGET {
        let rows = (0..r)
            .map(|_| (0..s).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let qc = QcShiftMatrix::from_dense_shifts(p, &rows)?;
        if qc.girth().is_none_or(|g| g >= min_girth) {
            return Ok(qc);
        }
    }
    Err(Error::SamplingFailed {
        min_girth,
        attempts: ENSEMBLE_RETRY_BUDGET,
    })
}
