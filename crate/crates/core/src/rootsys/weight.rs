use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight {
            coords: coords.iter().map(|&c| q(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![Q::zero(); rank],
        }
    }

    /// The `i`-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.coords[i] = q(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Strictly positive coordinates.
    pub fn is_regular_dominant(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    pub fn scale(&self, s: Q) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: self.rank(),
            });
        }
        Ok(())
    }

    /// Integer coordinates; `None` if some coordinate is fractional.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(rational::to_int).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::vec::serialize(&self.coords, s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Weight {
            coords: rational::vec::deserialize(d)?,
        })
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), o.rank());
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), o.rank());
        Weight {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, o: &Weight) {
        for (a, b) in self.coords.iter_mut().zip(&o.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, o: &Weight) {
        for (a, b) in self.coords.iter_mut().zip(&o.coords) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for Q {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        w.scale(self)
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        w.scale(q(self))
    }
}
