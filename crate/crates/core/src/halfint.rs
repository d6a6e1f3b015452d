use core::fmt;
use core::ops::{Add, Neg, Sub};

/// An element of ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { doubled: 2 * v }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if there is one.
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::from_int(v)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + o.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - o.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}
