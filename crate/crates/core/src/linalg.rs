//! Exact Gaussian elimination over the scalar field.

use crate::scalar::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        // Prefer the simplest nonzero pivot to keep the arithmetic small.
        let Some(p) = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].numerator().len() + m[r][col].denominator().len())
        else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(prow.iter()) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row.max(pivots.len()));
    pivots
}

pub fn rank(mut m: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    rref(&mut m, ncols).len()
}

/// A basis of `{ v : M v = 0 }`, one vector per free column.
pub fn kernel(mut m: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (c, p) in is_pivot.iter().enumerate() {
            if let Some(r) = p {
                v[c] = -m[*r][free].clone();
            }
        }
        out.push(v);
    }
    out
}
