//! The rational numerical Chow ring of a Picard-rank-1 Fano threefold, on
//! the basis `{1, H, L, P}`: the fundamental class, the ample generator, the
//! class of a line, the class of a point.
//!
//! Multiplication is determined by `H*H = d*L`, `H*L = P` and the vanishing
//! of everything in degree above three; `L*L = L*P = P*P = 0` since the
//! complementary degree is out of range. Numerical duality sends a class of
//! codimension `p` to `(-1)^p` times itself.

use crate::ratio::{int, render, Rat};
use crate::registry::FanoDescriptor;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("cycle classes live on different threefolds: {0} vs {1}")]
    ParentMismatch(FanoDescriptor, FanoDescriptor),
}

/// An element `x + yH + zL + wP` of the rational numerical Chow ring,
/// tagged with the threefold it lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    parent: FanoDescriptor,
    x: Rat,
    y: Rat,
    z: Rat,
    w: Rat,
}

impl CycleClass {
    pub fn new(parent: FanoDescriptor, x: Rat, y: Rat, z: Rat, w: Rat) -> Self {
        CycleClass { parent, x, y, z, w }
    }

    pub fn zero(parent: FanoDescriptor) -> Self {
        Self::new(parent, int(0), int(0), int(0), int(0))
    }

    pub fn one(parent: FanoDescriptor) -> Self {
        Self::new(parent, int(1), int(0), int(0), int(0))
    }

    pub fn h(parent: FanoDescriptor) -> Self {
        Self::new(parent, int(0), int(1), int(0), int(0))
    }

    pub fn l(parent: FanoDescriptor) -> Self {
        Self::new(parent, int(0), int(0), int(1), int(0))
    }

    pub fn p(parent: FanoDescriptor) -> Self {
        Self::new(parent, int(0), int(0), int(0), int(1))
    }

    pub fn parent(&self) -> FanoDescriptor {
        self.parent
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn z(&self) -> &Rat {
        &self.z
    }

    pub fn w(&self) -> &Rat {
        &self.w
    }

    /// Coefficient of the codimension-`p` basis class, `p` in `0..=3`.
    pub fn coeff(&self, p: usize) -> &Rat {
        match p {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            3 => &self.w,
            _ => panic!("codimension {p} out of range on a threefold"),
        }
    }

    /// Projection onto the codimension-`p` graded piece.
    pub fn graded_piece(&self, p: usize) -> Self {
        let mut out = Self::zero(self.parent);
        match p {
            0 => out.x = self.x.clone(),
            1 => out.y = self.y.clone(),
            2 => out.z = self.z.clone(),
            3 => out.w = self.w.clone(),
            _ => panic!("codimension {p} out of range on a threefold"),
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero() && self.w.is_zero()
    }

    fn same_parent(&self, other: &Self) -> Result<(), ChowError> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(ChowError::ParentMismatch(self.parent, other.parent))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_parent(other)?;
        Ok(Self::new(
            self.parent,
            &self.x + &other.x,
            &self.y + &other.y,
            &self.z + &other.z,
            &self.w + &other.w,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_parent(other)?;
        Ok(Self::new(
            self.parent,
            &self.x - &other.x,
            &self.y - &other.y,
            &self.z - &other.z,
            &self.w - &other.w,
        ))
    }

    /// Ring product. The only nontrivial structure constant is `H*H = d*L`;
    /// everything of total degree above three is truncated away.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_parent(other)?;
        let d = int(self.parent.degree() as i64);
        let (a, b) = (self, other);
        Ok(Self::new(
            self.parent,
            &a.x * &b.x,
            &a.x * &b.y + &a.y * &b.x,
            &a.x * &b.z + &a.z * &b.x + &d * &a.y * &b.y,
            &a.x * &b.w + &a.w * &b.x + &a.y * &b.z + &a.z * &b.y,
        ))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(
            self.parent,
            c * &self.x,
            c * &self.y,
            c * &self.z,
            c * &self.w,
        )
    }

    /// Numerical dual: `(-1)^codim` on each graded piece.
    pub fn dual(&self) -> Self {
        Self::new(
            self.parent,
            self.x.clone(),
            -self.y.clone(),
            self.z.clone(),
            -self.w.clone(),
        )
    }

    /// Coefficient of the point class, i.e. the degree of the top piece.
    pub fn top_degree(&self) -> Rat {
        self.w.clone()
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CycleClass {
            type Output = CycleClass;
            fn $method(self, rhs: &CycleClass) -> CycleClass {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &CycleClass {
    type Output = CycleClass;
    fn neg(self) -> CycleClass {
        self.scale(&int(-1))
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, bool)> = Vec::new();
        for (c, sym) in [(&self.x, ""), (&self.y, "H"), (&self.z, "L"), (&self.w, "P")] {
            if c.is_zero() {
                continue;
            }
            let neg = c < &int(0);
            let abs = if neg { -c.clone() } else { c.clone() };
            let body = if sym.is_empty() {
                render(&abs)
            } else if abs == int(1) {
                sym.to_string()
            } else if abs.is_integer() {
                format!("{}{}", render(&abs), sym)
            } else {
                format!("({}){}", render(&abs), sym)
            };
            terms.push((body, neg));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (body, neg)) in terms.iter().enumerate() {
            if i == 0 {
                if *neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *neg { "-" } else { "+" })?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl Serialize for CycleClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycleClass", 5)?;
        st.serialize_field("x", &render(&self.x))?;
        st.serialize_field("y", &render(&self.y))?;
        st.serialize_field("z", &render(&self.z))?;
        st.serialize_field("w", &render(&self.w))?;
        st.serialize_field("parent", &self.parent)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for CycleClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            x: String,
            y: String,
            z: String,
            w: String,
            parent: FanoDescriptor,
        }
        let raw = Raw::deserialize(d)?;
        let get = |s: &str| crate::ratio::parse(s).map_err(serde::de::Error::custom);
        Ok(CycleClass::new(
            raw.parent,
            get(&raw.x)?,
            get(&raw.y)?,
            get(&raw.z)?,
            get(&raw.w)?,
        ))
    }
}
