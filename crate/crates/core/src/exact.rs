//! Small exact linear algebra over `Q`.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, v) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn inverts_a2_cartan() {
        let a = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(
            inv,
            vec![vec![qf(2, 3), qf(1, 3)], vec![qf(1, 3), qf(2, 3)]]
        );
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }
}
