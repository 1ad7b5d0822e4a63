//! Division-free determinants and exact inverses over a coefficient ring.

use crate::exactalg::Ring;

/// Laplace expansion along the first row. Uses no division, so it works over any
/// commutative ring; ranks here stay small.
pub fn determinant<R: Ring>(m: &[Vec<R>], like: &R) -> R {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, like)
}

fn det_rec<R: Ring>(m: &[Vec<R>], row: usize, cols: &[usize], like: &R) -> R {
    if cols.is_empty() {
        return like.one_like();
    }
    let mut acc = like.zero_like();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.times(&det_rec(m, row + 1, &rest, like));
        acc = if pos % 2 == 0 {
            acc.plus(&term)
        } else {
            acc.minus(&term)
        };
    }
    acc
}

fn minor<R: Ring>(m: &[Vec<R>], skip_row: usize, skip_col: usize) -> Vec<Vec<R>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Inverse matrix, or `None` when it does not exist over the ring itself (determinant zero or
/// not dividing the adjugate).
pub fn inverse<R: Ring>(m: &[Vec<R>], like: &R) -> Option<Vec<Vec<R>>> {
    let n = m.len();
    let det = determinant(m, like);
    if det.is_zero() {
        return None;
    }
    let mut inv = vec![vec![like.zero_like(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // adj[i][j] = (-1)^{i+j} det(minor(j, i))
            let c = determinant(&minor(m, j, i), like);
            let c = if (i + j) % 2 == 0 { c } else { c.negated() };
            inv[i][j] = c.exact_div(&det)?;
        }
    }
    Some(inv)
}
