//! Numerical K-theory: Euler pairings through Riemann-Roch, the
//! structure-sheaf lattice, and Chern characters of the distinguished
//! rank-2 bundles on the index-1 families.
//!
//! The Todd class is built from its defining expansion
//! `1 + c1/2 + (c1^2 + c2)/12 + c1*c2/24` with `c1 = iH` and `c2` pinned by
//! `deg(c1*c2) = 24`. Numerical K-classes are identified with their Chern
//! characters; the Euler pairing is `chi(u, v) = chi_0(u^* . v)`.

use crate::chow::{ChowError, CycleClass};
use crate::lattice::IntMatrix;
use crate::ratio::{frac, int, render, Rat};
use crate::registry::FanoDescriptor;
use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("Euler pairing is not an integer: {value}")]
    NonIntegralEuler { value: String },
    #[error("class is not in the structure-sheaf lattice; rational coordinates are [{}]", coords_string(.0))]
    NotInLattice(Box<[Rat; 4]>),
    #[error("Mukai bundles require an index-1 threefold, got {0}")]
    RequiresIndexOne(FanoDescriptor),
    #[error("genus {genus} is not the product {r} * {s}")]
    GenusFactorization { genus: u32, r: u32, s: u32 },
}

fn coords_string(coords: &[Rat; 4]) -> String {
    coords.iter().map(render).collect::<Vec<_>>().join(", ")
}

/// A numerical K-class, carried by its Chern character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    ch: CycleClass,
}

impl KClass {
    pub fn from_ch(ch: CycleClass) -> Self {
        KClass { ch }
    }

    pub fn ch(&self) -> &CycleClass {
        &self.ch
    }

    pub fn parent(&self) -> FanoDescriptor {
        self.ch.parent()
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coords = lattice_coordinates(&self.ch).ok();
        let n = if coords.is_some() { 6 } else { 5 };
        let mut st = s.serialize_struct("KClass", n)?;
        st.serialize_field("x", &render(self.ch.x()))?;
        st.serialize_field("y", &render(self.ch.y()))?;
        st.serialize_field("z", &render(self.ch.z()))?;
        st.serialize_field("w", &render(self.ch.w()))?;
        st.serialize_field("parent", &self.parent())?;
        if let Some(c) = coords {
            let c: Vec<String> = c.iter().map(BigInt::to_string).collect();
            st.serialize_field("lattice_coordinates", &c)?;
        }
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for KClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // coordinates are derived data; only the character is read back
        let ch = CycleClass::deserialize(d)?;
        Ok(KClass::from_ch(ch))
    }
}

/// Todd class `1 + (i/2)H + ((i^2 d + 24/i)/12)L + P`, assembled from the
/// Chern data rather than hard-coded.
pub fn todd(f: FanoDescriptor) -> CycleClass {
    let i = f.index() as i64;
    let c1 = CycleClass::h(f).scale(&int(i));
    let c2 = CycleClass::l(f).scale(&frac(24, i));
    let deg1 = c1.scale(&frac(1, 2));
    let deg2 = (&(&c1 * &c1) + &c2).scale(&frac(1, 12));
    let deg3 = (&c1 * &c2).scale(&frac(1, 24));
    &(&(&CycleClass::one(f) + &deg1) + &deg2) + &deg3
}

/// `chi_0(v) = deg(v . td)`, the Riemann-Roch functional.
pub fn chi0(v: &CycleClass) -> Rat {
    (v * &todd(v.parent())).top_degree()
}

/// Values of `chi_0` on the basis `(1, H, L, P)`.
pub fn chi0_coefficients(f: FanoDescriptor) -> [Rat; 4] {
    [
        chi0(&CycleClass::one(f)),
        chi0(&CycleClass::h(f)),
        chi0(&CycleClass::l(f)),
        chi0(&CycleClass::p(f)),
    ]
}

/// Euler pairing `chi(u, v) = chi_0(u^* . v)`. Integrality is part of the
/// contract: a fractional value means the inputs were not genuine K-classes
/// and is reported as an error, never rounded.
pub fn euler(u: &KClass, v: &KClass) -> Result<BigInt, KError> {
    let prod = u.ch.dual().checked_mul(&v.ch)?;
    let chi = chi0(&prod);
    if chi.is_integer() {
        Ok(chi.to_integer())
    } else {
        Err(KError::NonIntegralEuler {
            value: render(&chi),
        })
    }
}

/// The four structure sheaves generating numerical K-theory: the threefold
/// itself, a hyperplane section, a line, a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureSheaf {
    X,
    H,
    L,
    P,
}

impl StructureSheaf {
    pub const ALL: [StructureSheaf; 4] = [
        StructureSheaf::X,
        StructureSheaf::H,
        StructureSheaf::L,
        StructureSheaf::P,
    ];

    /// Codimension of the support.
    pub fn codim(&self) -> usize {
        match self {
            StructureSheaf::X => 0,
            StructureSheaf::H => 1,
            StructureSheaf::L => 2,
            StructureSheaf::P => 3,
        }
    }
}

/// `exp(mH)` as a Chow class, the character of `O(mH)`.
fn exp_h(f: FanoDescriptor, m: i64) -> CycleClass {
    let mh = CycleClass::h(f).scale(&int(m));
    let sq = &mh * &mh;
    let cube = &sq * &mh;
    &(&(&CycleClass::one(f) + &mh) + &sq.scale(&frac(1, 2))) + &cube.scale(&frac(1, 6))
}

pub fn line_bundle(f: FanoDescriptor, m: i64) -> KClass {
    KClass::from_ch(exp_h(f, m))
}

/// Chern character of the structure sheaf of a representative subvariety.
/// `O_H` comes from the ideal sequence as `1 - exp(-H)`; the point
/// correction on `O_L` is pinned by `chi(O_L) = 1` for a line.
pub fn structure_sheaf(f: FanoDescriptor, kind: StructureSheaf) -> KClass {
    let ch = match kind {
        StructureSheaf::X => CycleClass::one(f),
        StructureSheaf::H => &CycleClass::one(f) - &exp_h(f, -1),
        StructureSheaf::L => {
            let l = CycleClass::l(f);
            let c = int(1) - chi0(&l);
            &l + &CycleClass::p(f).scale(&c)
        }
        StructureSheaf::P => CycleClass::p(f),
    };
    KClass::from_ch(ch)
}

/// `[O_X, O_H, O_L, O_P]`, a triangular basis of the numerical K-lattice.
pub fn structure_sheaf_basis(f: FanoDescriptor) -> [KClass; 4] {
    StructureSheaf::ALL.map(|k| structure_sheaf(f, k))
}

/// Coordinates of a Chow class in the structure-sheaf basis. The basis is
/// unitriangular against the grading, so the solve is a back-substitution;
/// a class belongs to the lattice iff all four coordinates are integers.
pub fn lattice_coordinates(v: &CycleClass) -> Result<[BigInt; 4], KError> {
    let basis = structure_sheaf_basis(v.parent());
    let mut rem = v.clone();
    let mut coords: Vec<Rat> = Vec::with_capacity(4);
    for (p, b) in basis.iter().enumerate() {
        let c = rem.coeff(p).clone();
        rem = &rem - &b.ch().scale(&c);
        coords.push(c);
    }
    assert!(rem.is_zero(), "triangular solve left a remainder");
    let coords: [Rat; 4] = coords.try_into().unwrap();
    if coords.iter().all(Rat::is_integer) {
        Ok(coords.map(|c| c.to_integer()))
    } else {
        Err(KError::NotInLattice(Box::new(coords)))
    }
}

/// Chern character of the rank-r Mukai bundle on an index-1 threefold of
/// genus `g = r*s`: `r - H + (s - r)L + c3 P` with `c3` pinned by
/// `chi_0(ch) = 0`.
pub fn mukai_ch(f: FanoDescriptor, r: u32, s: u32) -> Result<KClass, KError> {
    if f.index() != 1 {
        return Err(KError::RequiresIndexOne(f));
    }
    let g = f.genus().expect("index 1 carries a genus");
    if r * s != g {
        return Err(KError::GenusFactorization { genus: g, r, s });
    }
    Ok(mukai_with_rank_slope(f, int(r as i64), int(s as i64 - r as i64)))
}

/// Rank-2 variant valid for every genus, even when `g/2` is not an integer:
/// the character `2 - H + (g/2 - 2)L + c3 P` makes sense as a Chow class
/// regardless, and lattice membership is then a genuine parity question.
pub fn mukai_rank2_ch(f: FanoDescriptor) -> Result<KClass, KError> {
    if f.index() != 1 {
        return Err(KError::RequiresIndexOne(f));
    }
    let g = f.genus().expect("index 1 carries a genus") as i64;
    Ok(mukai_with_rank_slope(f, int(2), frac(g, 2) - int(2)))
}

fn mukai_with_rank_slope(f: FanoDescriptor, rank: Rat, ch2: Rat) -> KClass {
    let partial = CycleClass::new(f, rank, int(-1), ch2, int(0));
    let c3 = -chi0(&partial);
    KClass::from_ch(&partial + &CycleClass::p(f).scale(&c3))
}

/// A basis of K-classes together with the matrix of all Euler pairings,
/// `matrix[i][j] = chi(basis[i], basis[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerGram {
    basis: Vec<KClass>,
    matrix: IntMatrix,
}

impl EulerGram {
    pub fn new(basis: Vec<KClass>) -> Result<Self, KError> {
        let n = basis.len();
        let mut matrix = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                matrix[(i, j)] = euler(&basis[i], &basis[j])?;
            }
        }
        Ok(EulerGram { basis, matrix })
    }

    pub fn basis(&self) -> &[KClass] {
        &self.basis
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}
