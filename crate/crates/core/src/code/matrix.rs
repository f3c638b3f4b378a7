use std::fmt::Write as _;

use crate::error::{check_len, Error, Result};

/// Sparse binary parity-check matrix stored as check and variable
/// neighborhoods. Both adjacency lists are kept sorted and mirror each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    check_nbrs: Vec<Vec<usize>>,
    var_nbrs: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds the matrix from the variable indices of every check.
    ///
    /// Each row must be strictly increasing and index below `n`.
    pub fn from_check_neighborhoods(n: usize, check_nbrs: Vec<Vec<usize>>) -> Result<Self> {
        let mut var_nbrs = vec![Vec::new(); n];
        for (j, row) in check_nbrs.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidMatrix(format!(
                    "check {j} neighborhood is not strictly increasing"
                )));
            }
            for &i in row {
                if i >= n {
                    return Err(Error::InvalidMatrix(format!(
                        "check {j} references variable {i} >= n = {n}"
                    )));
                }
                var_nbrs[i].push(j);
            }
        }
        Ok(ParityCheckMatrix {
            n,
            check_nbrs,
            var_nbrs,
        })
    }

    /// Builds the matrix from dense 0/1 rows.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut nbrs = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_ref();
            check_len(n, row.len())?;
            nbrs.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b != 0)
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
        Self::from_check_neighborhoods(n, nbrs)
    }

    /// Number of checks (rows).
    pub fn m(&self) -> usize {
        self.check_nbrs.len()
    }

    /// Number of variables (columns).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_nbrs(&self, j: usize) -> &[usize] {
        &self.check_nbrs[j]
    }

    pub fn var_nbrs(&self, i: usize) -> &[usize] {
        &self.var_nbrs[i]
    }

    pub fn checks(&self) -> impl Iterator<Item = &[usize]> {
        self.check_nbrs.iter().map(Vec::as_slice)
    }

    pub fn vars(&self) -> impl Iterator<Item = &[usize]> {
        self.var_nbrs.iter().map(Vec::as_slice)
    }

    /// Number of ones in the matrix.
    pub fn edges(&self) -> usize {
        self.check_nbrs.iter().map(Vec::len).sum()
    }

    /// Rejects matrices a message-passing decoder cannot run on: every
    /// check needs degree at least 2 and every variable at least 1.
    pub fn validate_for_decoding(&self) -> Result<()> {
        if let Some(j) = self.check_nbrs.iter().position(|c| c.len() < 2) {
            return Err(Error::InvalidMatrix(format!("check {j} has degree < 2")));
        }
        if let Some(i) = self.var_nbrs.iter().position(Vec::is_empty) {
            return Err(Error::InvalidMatrix(format!("variable {i} has degree 0")));
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.check_nbrs
            .iter()
            .map(|row| {
                let mut dense = vec![0u8; self.n];
                for &i in row {
                    dense[i] = 1;
                }
                dense
            })
            .collect()
    }

    /// Parity of `bits` over every check neighborhood.
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>> {
        check_len(self.n, bits.len())?;
        Ok(self
            .check_nbrs
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &i| acc ^ (bits[i] & 1)))
            .collect())
    }

    /// True when every check is satisfied.
    pub fn is_codeword(&self, bits: &[u8]) -> Result<bool> {
        check_len(self.n, bits.len())?;
        Ok(self
            .check_nbrs
            .iter()
            .all(|row| row.iter().fold(0u8, |acc, &i| acc ^ (bits[i] & 1)) == 0))
    }

    /// Parses MacKay's alist format. Zero entries used as padding in the
    /// index lists are ignored.
    pub fn from_alist(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next_numbers = |what: &str| -> Result<(usize, Vec<usize>)> {
            let (no, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("unexpected end of input reading {what}"),
            })?;
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: no,
                        msg: format!("bad integer {t:?} in {what}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((no, nums))
        };

        let (no, dims) = next_numbers("dimensions")?;
        let [n, m] = dims[..] else {
            return Err(Error::Parse {
                line: no,
                msg: "expected `n m`".into(),
            });
        };
        next_numbers("maximum degrees")?;
        let (no, col_deg) = next_numbers("column degrees")?;
        check_alist_len(no, n, col_deg.len())?;
        let (no, row_deg) = next_numbers("row degrees")?;
        check_alist_len(no, m, row_deg.len())?;

        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let (no, idx) = next_numbers("column list")?;
            let col = one_based(no, idx, m)?;
            if col.len() != col_deg[i] {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("column {} has {} entries, degree says {}", i + 1, col.len(), col_deg[i]),
                });
            }
            cols.push(col);
        }
        let mut rows = Vec::with_capacity(m);
        for j in 0..m {
            let (no, idx) = next_numbers("row list")?;
            let mut row = one_based(no, idx, n)?;
            if row.len() != row_deg[j] {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("row {} has {} entries, degree says {}", j + 1, row.len(), row_deg[j]),
                });
            }
            row.sort_unstable();
            rows.push(row);
        }
        let h = Self::from_check_neighborhoods(n, rows)?;
        for (i, mut col) in cols.into_iter().enumerate() {
            col.sort_unstable();
            if col != h.var_nbrs[i] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("column {} disagrees with the row lists", i + 1),
                });
            }
        }
        Ok(h)
    }

    /// Writes MacKay's alist format, padding short lists with zeros.
    pub fn to_alist(&self) -> String {
        let max_col = self.var_nbrs.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.check_nbrs.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = String::new();
        let join = |v: &mut dyn Iterator<Item = usize>| {
            v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "{} {}", self.n, self.m());
        let _ = writeln!(out, "{max_col} {max_row}");
        let _ = writeln!(out, "{}", join(&mut self.var_nbrs.iter().map(Vec::len)));
        let _ = writeln!(out, "{}", join(&mut self.check_nbrs.iter().map(Vec::len)));
        for (lists, width) in [(&self.var_nbrs, max_col), (&self.check_nbrs, max_row)] {
            for list in lists {
                let padded = list
                    .iter()
                    .map(|&x| x + 1)
                    .chain(std::iter::repeat_n(0, width - list.len()));
                let _ = writeln!(out, "{}", join(&mut padded.into_iter()));
            }
        }
        out
    }
}

fn check_alist_len(line: usize, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Parse {
            line,
            msg: format!("expected {expected} degrees, got {got}"),
        })
    }
}

fn one_based(line: usize, idx: Vec<usize>, bound: usize) -> Result<Vec<usize>> {
    idx.into_iter()
        .filter(|&x| x != 0)
        .map(|x| {
            if x > bound {
                Err(Error::Parse {
                    line,
                    msg: format!("index {x} out of range 1..={bound}"),
                })
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}
