use serde::Serialize;

use super::predicate::pierce;
use crate::error::{Error, Result};
use crate::family::ConvexBody;
use crate::geometry::Line3;

/// `rows[i][j]` is true when line `j` pierces body `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiercingMatrix {
    pub rows: Vec<Vec<bool>>,
    pub columns: usize,
}

impl PiercingMatrix {
    pub fn new(rows: Vec<Vec<bool>>, columns: usize) -> PiercingMatrix {
        assert!(rows.iter().all(|r| r.len() == columns), "ragged matrix");
        PiercingMatrix { rows, columns }
    }

    /// Rows no column covers.
    pub fn uncovered_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.iter().any(|&b| b))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn covers_all(&self, cols: &[usize]) -> bool {
        self.rows.iter().all(|r| cols.iter().any(|&c| r[c]))
    }
}

pub fn piercing_matrix(bodies: &[ConvexBody], lines: &[Line3]) -> PiercingMatrix {
    let rows = bodies
        .iter()
        .map(|b| lines.iter().map(|l| pierce(l, b)).collect())
        .collect();
    PiercingMatrix::new(rows, lines.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineCover {
    /// chosen column indices, increasing
    pub columns: Vec<usize>,
    /// whether `columns` is proven minimum
    pub exact: bool,
    /// a lower bound on the minimum size
    pub lower_bound: usize,
}

impl LineCover {
    pub fn size(&self) -> usize {
        self.columns.len()
    }
}

/// Above this many columns the solver switches from branch and bound to the
/// greedy heuristic.
pub const EXACT_COLUMN_LIMIT: usize = 25;

/// Row sets as bit vectors.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count_new(&self, covered: &Bits) -> usize {
        self.0
            .iter()
            .zip(&covered.0)
            .map(|(a, c)| (a & !c).count_ones() as usize)
            .sum()
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Solver {
    n_rows: usize,
    cols: Vec<Bits>,
    /// for each row, the columns covering it
    by_row: Vec<Vec<usize>>,
}

impl Solver {
    fn new(m: &PiercingMatrix) -> Solver {
        let n_rows = m.rows.len();
        let mut cols = vec![Bits::zeros(n_rows); m.columns];
        let mut by_row = vec![Vec::new(); n_rows];
        for (i, row) in m.rows.iter().enumerate() {
            for (j, &hit) in row.iter().enumerate() {
                if hit {
                    cols[j].set(i);
                    by_row[i].push(j);
                }
            }
        }
        Solver {
            n_rows,
            cols,
            by_row,
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut covered = Bits::zeros(self.n_rows);
        let mut chosen = Vec::new();
        while covered.count() < self.n_rows {
            // ties go to the lowest index
            let (best, gain) = self
                .cols
                .iter()
                .enumerate()
                .map(|(j, c)| (j, c.count_new(&covered)))
                .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            debug_assert!(gain > 0, "rows are coverable");
            covered = covered.or(&self.cols[best]);
            chosen.push(best);
        }
        chosen.sort_unstable();
        chosen
    }

    /// `ceil(uncovered / best single-column gain)`
    fn bound(&self, covered: &Bits) -> usize {
        let left = self.n_rows - covered.count();
        if left == 0 {
            return 0;
        }
        let gain = self
            .cols
            .iter()
            .map(|c| c.count_new(covered))
            .max()
            .unwrap_or(0);
        if gain == 0 {
            usize::MAX
        } else {
            left.div_ceil(gain)
        }
    }

    /// Lexicographically first increasing column list of length `slots`
    /// (extending `chosen`, next column `>= from`) that covers every row.
    fn search(&self, covered: &Bits, from: usize, slots: usize, chosen: &mut Vec<usize>) -> bool {
        let Some(row) = (0..self.n_rows).find(|&i| !covered.get(i)) else {
            return true;
        };
        if slots == 0 {
            return false;
        }
        let left = self.n_rows - covered.count();
        let gain = self.cols[from..]
            .iter()
            .map(|c| c.count_new(covered))
            .max()
            .unwrap_or(0);
        if gain * slots < left {
            return false;
        }
        // the first uncovered row must be taken by some column >= from; any
        // column after its last option would leave it uncovered for good
        let Some(&last) = self.by_row[row].last().filter(|&&j| j >= from) else {
            return false;
        };
        for j in from..=last {
            if self.cols[j].count_new(covered) == 0 {
                continue;
            }
            chosen.push(j);
            if self.search(&covered.or(&self.cols[j]), j + 1, slots - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Smallest set of lines piercing every body.
///
/// Exact (branch and bound, ties broken toward the lowest column indices) for
/// up to [`EXACT_COLUMN_LIMIT`] lines, greedy
/// beyond that. Fails with [`Error::Uncoverable`] when some body is pierced
/// by no line.
pub fn min_line_cover(m: &PiercingMatrix) -> Result<LineCover> {
    let bad = m.uncovered_rows();
    if !bad.is_empty() {
        return Err(Error::Uncoverable(bad));
    }
    let solver = Solver::new(m);
    let greedy = solver.greedy();
    let lower_bound = solver.bound(&Bits::zeros(solver.n_rows));
    if m.columns > EXACT_COLUMN_LIMIT {
        let exact = greedy.len() == lower_bound;
        return Ok(LineCover {
            columns: greedy,
            exact,
            lower_bound,
        });
    }
    // iterative deepening from the bound up to the greedy size; the first
    // hit is a minimum cover and, among those, the lowest column indices
    for size in lower_bound..greedy.len() {
        let mut chosen = Vec::with_capacity(size);
        if solver.search(&Bits::zeros(solver.n_rows), 0, size, &mut chosen) {
            return Ok(LineCover {
                columns: chosen,
                exact: true,
                lower_bound: size,
            });
        }
    }
    let mut chosen = Vec::with_capacity(greedy.len());
    let found = solver.search(&Bits::zeros(solver.n_rows), 0, greedy.len(), &mut chosen);
    debug_assert!(found, "greedy size is attainable");
    Ok(LineCover {
        lower_bound: chosen.len(),
        columns: chosen,
        exact: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&str]) -> PiercingMatrix {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect();
        let columns = rows.first().map_or(0, |r| r.len());
        PiercingMatrix::new(rows, columns)
    }

    #[test]
    fn classic_greedy_trap() {
        // col 2 covers the most rows, so greedy takes it and then needs
        // both others; the optimum is cols 0 and 1
        let m = matrix(&["101", "101", "100", "011", "011", "010"]);
        assert_eq!(Solver::new(&m).greedy(), vec![0, 1, 2]);
        let c = min_line_cover(&m).unwrap();
        assert_eq!(c.columns, vec![0, 1]);
        assert!(c.exact);
    }

    #[test]
    fn uncoverable_rows_are_reported() {
        let m = matrix(&["10", "00", "01", "00"]);
        assert_eq!(min_line_cover(&m), Err(Error::Uncoverable(vec![1, 3])));
    }

    #[test]
    fn empty_matrix() {
        let c = min_line_cover(&PiercingMatrix::new(Vec::new(), 3)).unwrap();
        assert!(c.columns.is_empty());
    }
}
