//! Sparse linear algebra over `F_p`.

use std::collections::HashMap;

use crate::field::{FieldElement, PrimeField};

/// A sparse vector: `(index, nonzero value)` pairs sorted by index.
pub(crate) type SpVec = Vec<(u32, FieldElement)>;

/// `a + c * b`.
pub(crate) fn axpy(field: &PrimeField, a: &[(u32, FieldElement)], c: FieldElement, b: &[(u32, FieldElement)]) -> SpVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental column echelon form that remembers how each pivot was built
/// from the input columns.
pub(crate) struct Eliminator {
    field: PrimeField,
    track: bool,
    /// pivot row -> (reduced column, combination of input columns)
    pivots: HashMap<u32, (SpVec, SpVec)>,
    columns: u32,
}

impl Eliminator {
    pub fn new(field: PrimeField, track: bool) -> Self {
        Eliminator {
            field,
            track,
            pivots: HashMap::new(),
            columns: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Add the next column. Returns the kernel vector it completes, if it is
    /// dependent on earlier columns (empty vector when not tracking).
    pub fn push(&mut self, column: SpVec) -> Option<SpVec> {
        let idx = self.columns;
        self.columns += 1;
        let mut v = column;
        let mut combo: SpVec = if self.track { vec![(idx, 1)] } else { Vec::new() };
        while let Some(&(row, lead)) = v.first() {
            match self.pivots.get(&row) {
                Some((p, pc)) => {
                    // pivots are normalized to lead 1
                    let c = self.field.neg(lead);
                    v = axpy(&self.field, &v, c, p);
                    if self.track {
                        combo = axpy(&self.field, &combo, c, pc);
                    }
                }
                None => {
                    let inv = self.field.inv(lead);
                    let v: SpVec = v.iter().map(|&(r, x)| (r, self.field.mul(x, inv))).collect();
                    let combo: SpVec = combo.iter().map(|&(r, x)| (r, self.field.mul(x, inv))).collect();
                    self.pivots.insert(row, (v, combo));
                    return None;
                }
            }
        }
        Some(combo)
    }
}

/// Basis of the kernel of the matrix with the given columns.
pub(crate) fn kernel(field: PrimeField, columns: Vec<SpVec>) -> Vec<SpVec> {
    let mut e = Eliminator::new(field, true);
    columns.into_iter().filter_map(|c| e.push(c)).collect()
}

/// Rank of the matrix with the given columns.
pub(crate) fn rank(field: PrimeField, columns: Vec<SpVec>) -> usize {
    let mut e = Eliminator::new(field, false);
    for c in columns {
        e.push(c);
    }
    e.rank()
}
