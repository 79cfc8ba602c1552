//! Exact integer linear algebra on small dense matrices.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j]
                    .checked_mul(m[k][k])
                    .ok_or(Error::Overflow("determinant"))?;
                let b = m[i][k]
                    .checked_mul(m[k][j])
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow("determinant"))? / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Generator of the kernel of an `n × (n+1)` matrix via signed maximal minors.
/// Zero when the rows are dependent.
pub(crate) fn kernel_vector(rows: &[Vec<i128>]) -> Result<Vec<i128>> {
    let n = rows.len();
    let mut w = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let d = det(minor)?;
        w.push(if j % 2 == 0 { d } else { -d });
    }
    Ok(w)
}

/// Divides by the gcd of the entries.
pub(crate) fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Rank over the rationals.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let row_r = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&row_r) {
                *x = *x * a - y * b;
            }
            primitive(&mut m[i]);
        }
        r += 1;
    }
    r
}
