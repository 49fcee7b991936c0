//! Sparse integer row echelon form by fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no
/// zero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// `a·x − b·y`, then divided by the content of the result.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut content = BigInt::zero();
    for (_, v) in row.iter() {
        content = content.gcd(v);
        if content == BigInt::from(1) {
            return;
        }
    }
    if content > BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v /= &content;
        }
    }
}

/// Row echelon basis of the span of a set of integer rows.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    /// Column-by-column elimination. At each step the pivot is the first row
    /// (in input order) whose leading entry has maximal absolute value among
    /// rows leading in the smallest remaining column.
    pub fn from_rows(rows: impl IntoIterator<Item = SparseRow>) -> Echelon {
        let mut remaining: Vec<SparseRow> = rows
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|mut r| {
                make_primitive(&mut r);
                r
            })
            .collect();
        let mut pivots = BTreeMap::new();
        while let Some(col) = remaining.iter().map(|r| r[0].0).min() {
            let mut best: Option<usize> = None;
            for (i, r) in remaining.iter().enumerate() {
                if r[0].0 != col {
                    continue;
                }
                match best {
                    Some(b) if remaining[b][0].1.abs() >= r[0].1.abs() => {}
                    _ => best = Some(i),
                }
            }
            let pivot = remaining.remove(best.expect("some row leads in col"));
            let pv = &pivot[0].1;
            remaining = remaining
                .into_iter()
                .filter_map(|r| {
                    if r[0].0 != col {
                        return Some(r);
                    }
                    let out = combine(pv, &r, &r[0].1, &pivot);
                    (!out.is_empty()).then_some(out)
                })
                .collect();
            pivots.insert(col, pivot);
        }
        Echelon { pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots; the remainder is empty iff `row`
    /// lies in the span.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut cur = row.clone();
        make_primitive(&mut cur);
        while let Some(&(col, ref lead)) = cur.first() {
            let Some(pivot) = self.pivots.get(&col) else {
                break;
            };
            let lead = lead.clone();
            cur = combine(&pivot[0].1, &cur, &lead, pivot);
        }
        cur
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}
