//! Rank-2 bundle numerology: Chern data of the stable bundles featuring in
//! the index-1 and index-2 stories, their duals and twists, and the
//! dimension/degree coincidences between the two families.
//!
//! For rank 2, dualizing negates `c1` and `c3`, and twisting by `O(mH)`
//! sends `c1` to `c1 + 2mH`, `c2` to `c2 + m c1 H + m^2 H^2`, and leaves
//! `c3` alone; all three rules are forced by `ch(E(m)) = ch(E) exp(mH)`.

use crate::chow::CycleClass;
use crate::ratio::{frac, int, Rat};
use crate::registry::{ClassificationError, FanoDescriptor};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("degree {0} is outside 1..=5")]
    DegreeRange(i64),
    #[error("parameter {name} must be nonnegative; got {value}")]
    NegativeParameter { name: &'static str, value: i64 },
    #[error(transparent)]
    Classification(#[from] ClassificationError),
}

/// A rank-2 bundle datum: `c1 = c1_h * H`, `c2 = c2_l * L`, `c3 = c3_p * P`.
/// `c3` is zero for the bundles of interest but carried for generality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankTwoBundle {
    parent: FanoDescriptor,
    c1: i64,
    c2: i64,
    c3: i64,
}

impl RankTwoBundle {
    pub fn new(parent: FanoDescriptor, c1: i64, c2: i64) -> Self {
        RankTwoBundle {
            parent,
            c1,
            c2,
            c3: 0,
        }
    }

    pub fn with_c3(mut self, c3: i64) -> Self {
        self.c3 = c3;
        self
    }

    pub fn parent(&self) -> FanoDescriptor {
        self.parent
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn c3(&self) -> i64 {
        self.c3
    }

    /// Chern character `2 + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3c1c2 + 3c3)/6`,
    /// computed through the ring rather than by coefficient formulas.
    pub fn ch(&self) -> CycleClass {
        let f = self.parent;
        let c1 = CycleClass::h(f).scale(&int(self.c1));
        let c2 = CycleClass::l(f).scale(&int(self.c2));
        let c3 = CycleClass::p(f).scale(&int(self.c3));
        let c1sq = &c1 * &c1;
        let ch2 = (&c1sq - &c2.scale(&int(2))).scale(&frac(1, 2));
        let ch3 = (&(&(&c1sq * &c1) - &(&c1 * &c2).scale(&int(3))) + &c3.scale(&int(3)))
            .scale(&frac(1, 6));
        &(&(&CycleClass::one(f).scale(&int(2)) + &c1) + &ch2) + &ch3
    }

    pub fn dualize(&self) -> Self {
        RankTwoBundle {
            parent: self.parent,
            c1: -self.c1,
            c2: self.c2,
            c3: -self.c3,
        }
    }

    pub fn twist(&self, m: i64) -> Self {
        let d = self.parent.degree() as i64;
        RankTwoBundle {
            parent: self.parent,
            c1: self.c1 + 2 * m,
            c2: self.c2 + m * self.c1 * d + m * m * d,
            c3: self.c3,
        }
    }
}

fn to_i64(r: &Rat) -> i64 {
    assert!(r.is_integer(), "expected an integer, got {r}");
    let v = r.to_integer();
    i64::try_from(&v).expect("value fits in i64")
}

/// `deg(c1^3 - 2 c1 c2)`, the degree of the curve attached to the bundle.
fn degree_expression(b: &RankTwoBundle) -> i64 {
    let f = b.parent();
    let c1 = CycleClass::h(f).scale(&int(b.c1()));
    let c2 = CycleClass::l(f).scale(&int(b.c2()));
    let expr = &(&(&c1 * &c1) * &c1) - &(&c1 * &c2).scale(&int(2));
    to_i64(&expr.top_degree())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexOneInputs {
    pub d: u32,
    pub t: u32,
}

/// For `F` on `X_{4d+2}` with `c1 = -H`, `c2 = (d+2+t)L`: the Euler
/// characteristic of the dual and two readings of its curve degree. The
/// closed form `2d - 2 + 2t` circulates with `c2(F^*)` taken as
/// `(d+2-t)L`, but rank-2 duality forces `c2(F^*) = c2(F)`, which gives
/// `2d - 2 - 2t`; `discrepancy` records when the two disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexOneNumerology {
    pub inputs: IndexOneInputs,
    pub chi: i64,
    pub degree_computed: i64,
    pub degree_closed_form: i64,
    pub discrepancy: bool,
}

pub fn numerology_index1(d: i64, t: i64) -> Result<IndexOneNumerology, BundleError> {
    if !(1..=5).contains(&d) {
        return Err(BundleError::DegreeRange(d));
    }
    if t < 0 {
        return Err(BundleError::NegativeParameter {
            name: "t",
            value: t,
        });
    }
    let x = FanoDescriptor::new(1, 4 * d + 2)?;
    let f = RankTwoBundle::new(x, -1, d + 2 + t);
    let f_star = f.dualize();
    let chi = to_i64(&crate::ktheory::chi0(&f_star.ch()));
    let degree_computed = degree_expression(&f_star);
    let degree_closed_form = 2 * d - 2 + 2 * t;
    Ok(IndexOneNumerology {
        inputs: IndexOneInputs {
            d: d as u32,
            t: t as u32,
        },
        chi,
        degree_computed,
        degree_closed_form,
        discrepancy: degree_computed != degree_closed_form,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexTwoInputs {
    pub d: u32,
    pub k: u32,
}

/// For an instanton-type `E` on `Y_d` with `c1 = 0`, `c2 = kL`: the Euler
/// characteristic of `E^*(1)` and its curve degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexTwoNumerology {
    pub inputs: IndexTwoInputs,
    pub chi: i64,
    pub degree: i64,
}

pub fn numerology_index2(d: i64, k: i64) -> Result<IndexTwoNumerology, BundleError> {
    if !(1..=5).contains(&d) {
        return Err(BundleError::DegreeRange(d));
    }
    if k < 0 {
        return Err(BundleError::NegativeParameter {
            name: "k",
            value: k,
        });
    }
    let y = FanoDescriptor::new(2, d)?;
    let e = RankTwoBundle::new(y, 0, k);
    let twisted_dual = e.dualize().twist(1);
    let chi = to_i64(&crate::ktheory::chi0(&twisted_dual.ch()));
    let degree = degree_expression(&twisted_dual);
    Ok(IndexTwoNumerology {
        inputs: IndexTwoInputs {
            d: d as u32,
            k: k as u32,
        },
        chi,
        degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoincidenceInputs {
    pub d: u32,
    pub k: u32,
    pub t: u32,
}

/// Side-by-side evaluation of the two families' dimension and degree
/// expressions. Both coincidences are equivalent to `d + 1 = 2k - t`.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub inputs: CoincidenceInputs,
    pub dim_index1: i64,
    pub dim_index2: i64,
    pub dimensions_coincide: bool,
    pub degree_index1: i64,
    pub degree_index2: i64,
    pub degrees_coincide: bool,
    pub condition_holds: bool,
}

pub fn coincidence_check(d: i64, k: i64, t: i64) -> Result<CoincidenceReport, BundleError> {
    let one = numerology_index1(d, t)?;
    let two = numerology_index2(d, k)?;
    Ok(CoincidenceReport {
        inputs: CoincidenceInputs {
            d: d as u32,
            k: k as u32,
            t: t as u32,
        },
        dim_index1: one.chi,
        dim_index2: two.chi,
        dimensions_coincide: one.chi == two.chi,
        degree_index1: one.degree_computed,
        degree_index2: two.degree,
        degrees_coincide: one.degree_computed == two.degree,
        condition_holds: d + 1 == 2 * k - t,
    })
}
