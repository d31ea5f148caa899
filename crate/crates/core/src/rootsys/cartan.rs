//! Cartan matrices in Bourbaki numbering, `A[i][j] = <alpha_i^vee, alpha_j>`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType {
                family: other.to_string(),
                rank: 0,
                reason: "unknown family (expected one of A..G)".into(),
            }),
        }
    }
}

fn invalid(family: Family, rank: usize, reason: &str) -> Error {
    Error::InvalidType {
        family: family.to_string(),
        rank,
        reason: reason.to_string(),
    }
}

fn bond(a: &mut [Vec<i64>], i: usize, j: usize) {
    a[i][j] = -1;
    a[j][i] = -1;
}

pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !ok {
        let reason = match family {
            Family::A => "rank must be at least 1",
            Family::B | Family::C => "rank must be at least 2",
            Family::D => "rank must be at least 4",
            Family::E => "rank must be 6, 7 or 8",
            Family::F => "rank must be 4",
            Family::G => "rank must be 2",
        };
        return Err(invalid(family, rank, reason));
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        Family::A => {
            for i in 0..n - 1 {
                bond(&mut a, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                bond(&mut a, i, i + 1);
            }
            // alpha_n short
            a[n - 1][n - 2] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                bond(&mut a, i, i + 1);
            }
            // alpha_n long
            a[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                bond(&mut a, i, i + 1);
            }
            bond(&mut a, n - 3, n - 1);
        }
        Family::E => {
            // 1-3-4-5-6(-7-8), 2 attached to 4
            bond(&mut a, 0, 2);
            bond(&mut a, 1, 3);
            for i in 2..n - 1 {
                bond(&mut a, i, i + 1);
            }
        }
        Family::F => {
            bond(&mut a, 0, 1);
            bond(&mut a, 1, 2);
            bond(&mut a, 2, 3);
            a[2][1] = -2;
        }
        Family::G => {
            // alpha_1 short, alpha_2 long
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_pairs() {
        assert!(cartan_matrix(Family::D, 3).is_err());
        assert!(cartan_matrix(Family::E, 5).is_err());
        assert!(cartan_matrix(Family::G, 3).is_err());
        assert!(cartan_matrix(Family::A, 0).is_err());
        assert!("Z".parse::<Family>().is_err());
    }

    #[test]
    fn g2_is_not_symmetric() {
        let a = cartan_matrix(Family::G, 2).unwrap();
        assert_eq!(a, vec![vec![2, -3], vec![-1, 2]]);
    }
}
