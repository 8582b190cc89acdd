//! Sparse Smith normal form over the integers, exact at every step.
//!
//! Fraction-free row/column Euclidean elimination with pivots chosen to
//! minimize entry magnitude first and Markowitz fill second. Only the rank
//! and the invariant factors are produced; transform matrices are never
//! materialized.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    /// All nonzero diagonal entries, positive, with each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl Snf {
    /// The invariant factors larger than one: the torsion coefficients of
    /// the cokernel, in divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

struct Sparse {
    rows: Vec<HashMap<usize, BigInt>>,
    /// For each column, the rows with a nonzero entry there.
    cols: Vec<HashSet<usize>>,
}

impl Sparse {
    fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            if self.rows[r].remove(&c).is_some() {
                self.cols[c].remove(&r);
            }
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_entries: Vec<(usize, BigInt)> = self.rows[src]
            .iter()
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        for (c, v) in src_entries {
            let newv = self.get(dst, c) + q * v;
            self.set(dst, c, newv);
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for r in src_rows {
            let v = self.get(r, src);
            let newv = self.get(r, dst) + q * v;
            self.set(r, dst, newv);
        }
    }

    /// Minimum-magnitude entry, ties broken by Markowitz fill count.
    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let mag = v.abs();
                let fill = (row.len() - 1) * (self.cols[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((_, _, bmag, bfill)) => mag < *bmag || (mag == *bmag && fill < *bfill),
                };
                if better {
                    let one = mag.is_one() && fill == 0;
                    best = Some((r, c, mag, fill));
                    if one {
                        // A unit pivot with zero fill cannot be beaten.
                        return best.map(|(r, c, _, _)| (r, c));
                    }
                }
            }
        }
        best.map(|(r, c, _, _)| (r, c))
    }
}

/// Computes the Smith normal form of a `rows x cols` integer matrix given
/// by its nonzero entries.
pub fn smith_normal_form(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
) -> Snf {
    let mut m = Sparse {
        rows: vec![HashMap::new(); rows],
        cols: vec![HashSet::new(); cols],
    };
    for (r, c, v) in entries {
        assert!(
            r < rows && c < cols,
            "entry ({r},{c}) outside {rows}x{cols}"
        );
        if !v.is_zero() {
            let newv = m.get(r, c) + v;
            m.set(r, c, newv);
        }
    }

    let mut diagonal: Vec<BigInt> = Vec::new();
    while let Some((mut r, mut c)) = m.select_pivot() {
        // Euclidean clearing: every reduction either empties the pivot's
        // row and column or strictly shrinks the pivot's magnitude.
        loop {
            let pivot = m.get(r, c);
            debug_assert!(!pivot.is_zero());
            let other_row = m.cols[c].iter().copied().find(|&x| x != r);
            if let Some(r2) = other_row {
                let q = -(&m.get(r2, c) / &pivot);
                m.row_axpy(r2, r, &q);
                if !m.get(r2, c).is_zero() {
                    // Remainder is smaller than the pivot; move there.
                    r = r2;
                }
                continue;
            }
            let other_col = m.rows[r].keys().copied().find(|&x| x != c);
            if let Some(c2) = other_col {
                let q = -(&m.get(r, c2) / &pivot);
                m.col_axpy(c2, c, &q);
                if !m.get(r, c2).is_zero() {
                    c = c2;
                }
                continue;
            }
            break;
        }
        diagonal.push(m.get(r, c).abs());
        m.set(r, c, BigInt::zero());
    }

    // diag(a, b) and diag(gcd, lcm) are equivalent, so the multiset of
    // diagonal entries can be normalized pairwise into a divisibility chain.
    diagonal.sort();
    let n = diagonal.len();
    loop {
        let mut stable = true;
        for i in 0..n {
            for j in i + 1..n {
                if !(&diagonal[j] % &diagonal[i]).is_zero() {
                    let g = diagonal[i].gcd(&diagonal[j]);
                    let l = &diagonal[i] / &g * &diagonal[j];
                    diagonal[i] = g;
                    diagonal[j] = l;
                    stable = false;
                }
            }
        }
        if stable {
            break;
        }
    }

    Snf {
        rank: diagonal.len(),
        invariant_factors: diagonal,
    }
}
