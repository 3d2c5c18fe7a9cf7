use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// A pair of integers used for bi-degrees, deficits and shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Bidegree(pub i64, pub i64);

/// A bi-degree shift `(j, k)`, meaning the twist `(-j, -k)`.
pub type Shift = Bidegree;

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree(0, 0);

    pub fn le(self, o: Bidegree) -> bool {
        self.0 <= o.0 && self.1 <= o.1
    }

    pub fn ge(self, o: Bidegree) -> bool {
        o.le(self)
    }

    pub fn comparable(self, o: Bidegree) -> bool {
        self.le(o) || o.le(self)
    }

    pub fn min(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0.min(o.0), self.1.min(o.1))
    }

    pub fn max(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0.max(o.0), self.1.max(o.1))
    }

    pub fn get(self, c: usize) -> i64 {
        if c == 0 {
            self.0
        } else {
            self.1
        }
    }

    pub fn swap(self) -> Bidegree {
        Bidegree(self.1, self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0 - o.0, self.1 - o.1)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl From<(i64, i64)> for Bidegree {
    fn from(p: (i64, i64)) -> Self {
        Bidegree(p.0, p.1)
    }
}
