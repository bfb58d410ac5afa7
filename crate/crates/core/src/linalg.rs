//! Dense Gaussian elimination over GF(p).

use crate::gf::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= f * *y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : A x = 0}`; `ncols` is needed when `rows` is empty.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize, zero: Scalar) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let one = zero.one_like();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![zero; ncols];
            v[fc] = one;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc];
            }
            v
        })
        .collect()
}

pub fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
