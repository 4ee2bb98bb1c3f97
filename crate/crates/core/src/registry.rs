//! The 17 deformation classes of Fano threefolds with Picard group `Z`.
//!
//! A class is pinned by its index `i` and degree `d = H^3`. For index 1 the
//! genus `g` with `d = 2g - 2` is the customary invariant; it is derived
//! here, never stored, so the two can not drift apart. Genus 11 does not
//! occur. Only discrete invariants and a description are kept: no geometry
//! is modeled beyond what the numerical Chow ring sees.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassificationError {
    #[error("index {0} is outside the range 1..=4 for Fano threefolds")]
    IndexOutOfRange(i64),
    #[error("degree {0} is not positive")]
    DegreeNotPositive(i64),
    #[error("index 4 forces degree 1 (projective 3-space); got degree {0}")]
    BadDegreeIndex4(i64),
    #[error("index 3 forces degree 2 (the quadric threefold); got degree {0}")]
    BadDegreeIndex3(i64),
    #[error("index 2 requires degree between 1 and 5; got degree {0}")]
    BadDegreeIndex2(i64),
    #[error("index 1 requires even degree 2g - 2; got odd degree {0}")]
    OddDegreeIndex1(i64),
    #[error("genus 11 (degree 20) does not occur")]
    GenusEleven,
    #[error("index 1 requires genus between 2 and 12; degree {degree} gives genus {genus}")]
    GenusOutOfRange { degree: i64, genus: i64 },
}

/// A deformation class, keyed by (index, degree). `Copy` and orderable so it
/// can serve as a map key and as the `parent` tag on cycle classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FanoDescriptor {
    index: u32,
    degree: u32,
}

impl FanoDescriptor {
    /// Validates (index, degree) against the classification. Every rejection
    /// names the violated constraint.
    pub fn new(index: i64, degree: i64) -> Result<Self, ClassificationError> {
        if !(1..=4).contains(&index) {
            return Err(ClassificationError::IndexOutOfRange(index));
        }
        if degree < 1 {
            return Err(ClassificationError::DegreeNotPositive(degree));
        }
        match index {
            4 if degree != 1 => return Err(ClassificationError::BadDegreeIndex4(degree)),
            3 if degree != 2 => return Err(ClassificationError::BadDegreeIndex3(degree)),
            2 if degree > 5 => return Err(ClassificationError::BadDegreeIndex2(degree)),
            1 => {
                if degree % 2 != 0 {
                    return Err(ClassificationError::OddDegreeIndex1(degree));
                }
                let genus = degree / 2 + 1;
                if genus == 11 {
                    return Err(ClassificationError::GenusEleven);
                }
                if !(2..=12).contains(&genus) {
                    return Err(ClassificationError::GenusOutOfRange { degree, genus });
                }
            }
            _ => {}
        }
        Ok(FanoDescriptor {
            index: index as u32,
            degree: degree as u32,
        })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Genus `g` with `degree = 2g - 2`; defined only for index 1.
    pub fn genus(&self) -> Option<u32> {
        (self.index == 1).then(|| self.degree / 2 + 1)
    }

    /// Customary name: `P^3`, `Q^3`, `Y_d`, `X_{2g-2}`.
    pub fn label(&self) -> String {
        match self.index {
            4 => "P^3".to_string(),
            3 => "Q^3".to_string(),
            2 => format!("Y_{}", self.degree),
            _ => format!("X_{}", self.degree),
        }
    }

    pub fn describe(&self) -> DescriptorInfo {
        DescriptorInfo {
            index: self.index,
            degree: self.degree,
            genus: self.genus(),
            description: description(self.index, self.degree),
        }
    }
}

impl fmt::Display for FanoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (index {}, degree {})", self.label(), self.index, self.degree)
    }
}

impl Serialize for FanoDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FanoDescriptor", 2)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("degree", &self.degree)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for FanoDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            index: i64,
            degree: i64,
        }
        let raw = Raw::deserialize(d)?;
        FanoDescriptor::new(raw.index, raw.degree).map_err(serde::de::Error::custom)
    }
}

/// Discrete invariants plus a one-line description, ready to serialize.
#[derive(Debug, Clone, Serialize)]
pub struct DescriptorInfo {
    pub index: u32,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    pub description: &'static str,
}

/// All 17 classes, indices descending, degrees ascending within an index.
pub fn all() -> Vec<FanoDescriptor> {
    let mut out = vec![
        FanoDescriptor::new(4, 1).unwrap(),
        FanoDescriptor::new(3, 2).unwrap(),
    ];
    for d in 1..=5 {
        out.push(FanoDescriptor::new(2, d).unwrap());
    }
    for g in (2..=12).filter(|&g| g != 11) {
        out.push(FanoDescriptor::new(1, 2 * g - 2).unwrap());
    }
    out
}

fn description(index: u32, degree: u32) -> &'static str {
    match (index, degree) {
        (4, 1) => "projective 3-space",
        (3, 2) => "quadric hypersurface in P^4",
        (2, 1) => "hypersurface of degree 6 in the weighted projective space P(3,2,1,1,1)",
        (2, 2) => "double covering of P^3 ramified in a quartic",
        (2, 3) => "cubic hypersurface in P^4",
        (2, 4) => "intersection of two 4-dimensional quadrics in P^5",
        (2, 5) => "linear section of codimension 3 of the Grassmannian Gr(2,5) in the Pluecker embedding",
        (1, 2) => "double covering of P^3 ramified in a sextic",
        (1, 4) => "quartic hypersurface in P^4",
        (1, 6) => "intersection of a quadric and a cubic in P^5",
        (1, 8) => "intersection of three quadrics in P^6",
        (1, 10) => "quadric section of a codimension-2 linear section of the Grassmannian Gr(2,5)",
        (1, 12) => "linear section of codimension 7 of the orthogonal Lagrangian Grassmannian OGr+(5,10) in the half-spinor embedding",
        (1, 14) => "linear section of codimension 5 of the Grassmannian Gr(2,6) in the Pluecker embedding",
        (1, 16) => "linear section of codimension 3 of the symplectic Lagrangian Grassmannian SGr(3,6)",
        (1, 18) => "linear section of codimension 2 of the G2-homogeneous space G2Gr(2,7)",
        (1, 22) => "zero locus of a general section of a rank-9 bundle (Lambda^2 U*)^3 on the Grassmannian Gr(3,7)",
        _ => unreachable!("descriptor outside the classification"),
    }
}
