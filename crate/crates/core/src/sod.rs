//! Numerical shadows of semiorthogonal decompositions: exceptionality
//! reports for sequences of K-classes, right-orthogonal complements inside
//! the structure-sheaf lattice, and the end-to-end comparison between the
//! complement lattices of a degree-d index-2 threefold and its genus-(2d+2)
//! index-1 partner.

use crate::ktheory::{
    euler, line_bundle, mukai_ch, structure_sheaf, structure_sheaf_basis, EulerGram, KClass,
    KError, StructureSheaf,
};
use crate::lattice::{
    find_isometries, row_span_eq, saturated_kernel, BilinearLattice, IntMatrix, LatticeError,
};
use crate::ratio::{frac, int};
use crate::registry::{ClassificationError, FanoDescriptor};
use crate::chow::CycleClass;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SodError {
    #[error("a sequence of K-classes must be non-empty")]
    EmptyCollection,
    #[error("classes live on different threefolds: {0} vs {1}")]
    MixedParents(FanoDescriptor, FanoDescriptor),
    #[error("degree {0} is outside 1..=5")]
    DegreeRange(i64),
    #[error("{0} has odd genus; the rank-2 Mukai class is not in the integral lattice")]
    NoStandardCollection(FanoDescriptor),
    #[error(transparent)]
    K(#[from] KError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Classification(#[from] ClassificationError),
}

fn common_parent(classes: &[KClass]) -> Result<FanoDescriptor, SodError> {
    let first = classes.first().ok_or(SodError::EmptyCollection)?.parent();
    for c in classes {
        if c.parent() != first {
            return Err(SodError::MixedParents(first, c.parent()));
        }
    }
    Ok(first)
}

/// One failed exceptionality condition: `chi(classes[l], classes[k])` had
/// the given value, with `l == k` meaning a self-pairing that is not 1 and
/// `l > k` a later-to-earlier pairing that is not 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingPair {
    pub l: usize,
    pub k: usize,
    #[serde(with = "crate::ratio::serde_bigint")]
    pub value: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalSequenceReport {
    pub classes: Vec<KClass>,
    pub offending_pairs: Vec<OffendingPair>,
}

impl ExceptionalSequenceReport {
    pub fn is_numerically_exceptional(&self) -> bool {
        self.offending_pairs.is_empty()
    }
}

/// Checks `chi(c_j, c_j) = 1` and `chi(c_l, c_k) = 0` for `l > k`.
pub fn check_exceptional(classes: &[KClass]) -> Result<ExceptionalSequenceReport, SodError> {
    common_parent(classes)?;
    let mut offending = Vec::new();
    for l in 0..classes.len() {
        for k in 0..=l {
            let value = euler(&classes[l], &classes[k])?;
            let expected = if l == k { 1 } else { 0 };
            if value != BigInt::from(expected) {
                offending.push(OffendingPair { l, k, value });
            }
        }
    }
    Ok(ExceptionalSequenceReport {
        classes: classes.to_vec(),
        offending_pairs: offending,
    })
}

/// The right-orthogonal complement of a set of generators: all lattice
/// classes `v` with `chi(g, v) = 0` for every generator.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementResult {
    pub generators: Vec<KClass>,
    /// Basis classes, rows of `coordinates` expanded in the
    /// structure-sheaf basis.
    pub basis: Vec<KClass>,
    /// Hermite-form coordinates of the basis, one row per basis class.
    pub coordinates: IntMatrix,
    pub gram: EulerGram,
}

impl ComplementResult {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Computes the complement as the saturated kernel of the pairing matrix
/// `M[i][j] = chi(generators[i], b_j)` over the structure-sheaf basis.
pub fn right_orthogonal(generators: &[KClass]) -> Result<ComplementResult, SodError> {
    let f = common_parent(generators)?;
    let sheaves = structure_sheaf_basis(f);
    let mut m = IntMatrix::zero(generators.len(), 4);
    for (i, gen) in generators.iter().enumerate() {
        for (j, b) in sheaves.iter().enumerate() {
            m[(i, j)] = euler(gen, b)?;
        }
    }
    let coordinates = saturated_kernel(&m);
    let basis: Vec<KClass> = (0..coordinates.rows())
        .map(|r| {
            let mut ch = CycleClass::zero(f);
            for (j, b) in sheaves.iter().enumerate() {
                ch = &ch + &b.ch().scale(&crate::ratio::Rat::from_integer(coordinates[(r, j)].clone()));
            }
            KClass::from_ch(ch)
        })
        .collect();
    let gram = EulerGram::new(basis.clone())?;
    Ok(ComplementResult {
        generators: generators.to_vec(),
        basis,
        coordinates,
        gram,
    })
}

/// The distinguished exceptional collection whose complement is studied:
/// `(O, O(H), ..., O((i-1)H))` for index at least 2, and `(E_2, O)` with
/// `E_2` the rank-2 Mukai bundle for index 1 of even genus.
pub fn standard_collection(f: FanoDescriptor) -> Result<Vec<KClass>, SodError> {
    if f.index() >= 2 {
        return Ok((0..f.index() as i64).map(|m| line_bundle(f, m)).collect());
    }
    let g = f.genus().expect("index 1 carries a genus");
    if !g.is_multiple_of(2) {
        return Err(SodError::NoStandardCollection(f));
    }
    Ok(vec![
        mukai_ch(f, 2, g / 2)?,
        structure_sheaf(f, StructureSheaf::X),
    ])
}

/// Reference generators of the complement on the index-2 side:
/// `1 - L` and `H - (d/2)L + ((d-6)/6)P`.
pub fn reference_basis_index2(f: FanoDescriptor) -> Result<[KClass; 2], SodError> {
    if f.index() != 2 {
        return Err(SodError::DegreeRange(f.degree() as i64));
    }
    let d = f.degree() as i64;
    Ok([
        KClass::from_ch(CycleClass::new(f, int(1), int(0), int(-1), int(0))),
        KClass::from_ch(CycleClass::new(f, int(0), int(1), frac(-d, 2), frac(d - 6, 6))),
    ])
}

/// Reference generators of the complement on the index-1 side, genus even:
/// `1 - (g/2)L + ((g-4)/4)P` and `H - ((3g-6)/2)L + ((7g-40)/12)P`.
pub fn reference_basis_index1(f: FanoDescriptor) -> Result<[KClass; 2], SodError> {
    let g = match f.genus() {
        Some(g) if g % 2 == 0 => g as i64,
        _ => return Err(SodError::NoStandardCollection(f)),
    };
    Ok([
        KClass::from_ch(CycleClass::new(f, int(1), int(0), frac(-g, 2), frac(g - 4, 4))),
        KClass::from_ch(CycleClass::new(
            f,
            int(0),
            int(1),
            frac(-(3 * g - 6), 2),
            frac(7 * g - 40, 12),
        )),
    ])
}

/// The isometry `[[0,1],[-1,-2]]` that always shows up in the bound-3
/// search between the paired complement lattices.
pub fn distinguished_witness() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[-1, -2]])
}

/// Full comparison record for the pair `(Y_d, X_{4d+2})`.
#[derive(Debug, Clone, Serialize)]
pub struct RrVerification {
    pub d: u32,
    pub g: u32,
    #[serde(rename = "gramA")]
    pub gram_a: IntMatrix,
    #[serde(rename = "gramB")]
    pub gram_b: IntMatrix,
    pub witnesses: Vec<IntMatrix>,
    #[serde(rename = "basisA")]
    pub basis_a: Vec<KClass>,
    #[serde(rename = "basisB")]
    pub basis_b: Vec<KClass>,
    #[serde(rename = "witnessFound")]
    pub witness_found: bool,
    /// `W^T gramB W` for the distinguished witness `W = [[0,1],[-1,-2]]`.
    pub product: IntMatrix,
    #[serde(rename = "productMatchesGramA")]
    pub product_matches: bool,
    #[serde(rename = "spanMatchesA")]
    pub span_matches_a: bool,
    #[serde(rename = "spanMatchesB")]
    pub span_matches_b: bool,
}

impl RrVerification {
    pub fn passed(&self) -> bool {
        self.witness_found && self.product_matches && self.span_matches_a && self.span_matches_b
    }
}

fn coords_of(classes: &[KClass]) -> Result<IntMatrix, SodError> {
    let rows: Result<Vec<Vec<BigInt>>, KError> = classes
        .iter()
        .map(|c| crate::ktheory::lattice_coordinates(c.ch()).map(|a| a.to_vec()))
        .collect();
    Ok(IntMatrix::from_rows(rows?))
}

/// For `1 <= d <= 5`: computes both complements, both Euler Grams in the
/// reference bases, and the bound-3 isometry enumeration between them.
pub fn verify_rr(d: i64) -> Result<RrVerification, SodError> {
    if !(1..=5).contains(&d) {
        return Err(SodError::DegreeRange(d));
    }
    let y = FanoDescriptor::new(2, d)?;
    let x = FanoDescriptor::new(1, 4 * d + 2)?;
    let g = x.genus().expect("index 1 carries a genus");

    let comp_b = right_orthogonal(&standard_collection(y)?)?;
    let ref_b = reference_basis_index2(y)?;
    let gram_b = EulerGram::new(ref_b.to_vec())?;
    let span_b = row_span_eq(&coords_of(&ref_b)?, &comp_b.coordinates);

    let comp_a = right_orthogonal(&standard_collection(x)?)?;
    let ref_a = reference_basis_index1(x)?;
    let gram_a = EulerGram::new(ref_a.to_vec())?;
    let span_a = row_span_eq(&coords_of(&ref_a)?, &comp_a.coordinates);

    let lat_a = BilinearLattice::new(gram_a.matrix().clone())?;
    let lat_b = BilinearLattice::new(gram_b.matrix().clone())?;
    let witnesses = find_isometries(&lat_a, &lat_b, 3);
    let w = distinguished_witness();
    let witness_found = witnesses.contains(&w);
    let product = w.transpose().mul(gram_b.matrix()).mul(&w);
    let product_matches = product == *gram_a.matrix();

    Ok(RrVerification {
        d: d as u32,
        g,
        gram_a: gram_a.matrix().clone(),
        gram_b: gram_b.matrix().clone(),
        witnesses,
        basis_a: ref_a.to_vec(),
        basis_b: ref_b.to_vec(),
        witness_found,
        product,
        product_matches,
        span_matches_a: span_a,
        span_matches_b: span_b,
    })
}
