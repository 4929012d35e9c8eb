use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    GL,
    SL,
    U,
    SU,
    /// `GL(1)`.
    Torus,
}

impl Family {
    pub fn is_compact(self) -> bool {
        matches!(self, Family::U | Family::SU)
    }

    /// True for families whose elements have determinant one.
    pub fn is_special(self) -> bool {
        matches!(self, Family::SL | Family::SU)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::U => "U",
            Family::SU => "SU",
            Family::Torus => "TORUS",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "U" => Ok(Family::U),
            "SU" => Ok(Family::SU),
            "TORUS" => Ok(Family::Torus),
            _ => Err(Error::InvalidGroup(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("matrix size must be at least 1".into()));
        }
        if family == Family::Torus && n != 1 {
            return Err(Error::InvalidGroup("the torus family is GL(1)".into()));
        }
        Ok(GroupSpec { family, n })
    }

    pub fn gl(n: usize) -> Self {
        GroupSpec::new(Family::GL, n).expect("n >= 1")
    }

    pub fn sl(n: usize) -> Self {
        GroupSpec::new(Family::SL, n).expect("n >= 1")
    }

    pub fn u(n: usize) -> Self {
        GroupSpec::new(Family::U, n).expect("n >= 1")
    }

    pub fn su(n: usize) -> Self {
        GroupSpec::new(Family::SU, n).expect("n >= 1")
    }

    pub fn torus() -> Self {
        GroupSpec {
            family: Family::Torus,
            n: 1,
        }
    }

    /// Complex dimension; `None` for the compact families.
    pub fn dim(&self) -> Option<usize> {
        match self.family {
            Family::GL => Some(self.n * self.n),
            Family::SL => Some(self.n * self.n - 1),
            Family::Torus => Some(1),
            Family::U | Family::SU => None,
        }
    }

    /// Complex dimension of the center; `None` for the compact families.
    pub fn center_dim(&self) -> Option<usize> {
        match self.family {
            Family::GL | Family::Torus => Some(1),
            Family::SL => Some(0),
            Family::U | Family::SU => None,
        }
    }

    /// The compact form of this group (`U` for `GL`/torus, `SU` for `SL`).
    pub fn compact_form(&self) -> GroupSpec {
        let family = match self.family {
            Family::SL | Family::SU => Family::SU,
            _ => Family::U,
        };
        GroupSpec { family, n: self.n }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}
