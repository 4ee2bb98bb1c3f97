//! AK-compatibility from intersection data alone. The input is the list of
//! numerical-cycle ranks of a smooth projective n-fold together with all
//! intersection pairings between complementary codimensions; the criterion
//! is that every pairing between codimensions `p` and `n - p` with
//! `3 <= p <= n - 1` is unimodular, and dimension at most 3 is always
//! compatible.

use crate::chow::CycleClass;
use crate::ktheory::{structure_sheaf_basis, KClass};
use crate::lattice::IntMatrix;
use crate::registry::FanoDescriptor;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AkError {
    #[error("dimension n must be positive")]
    NonPositiveDimension,
    #[error("expected {expected} ranks for dimension {n}, got {got}")]
    RankCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("rank m_{p} must be positive")]
    NonPositiveRank { p: usize },
    #[error("m_0 and m_n must both be 1; got m_0 = {m0}, m_n = {mn}")]
    FundamentalRank { m0: usize, mn: usize },
    #[error("missing pairing at codimension {p}")]
    MissingPairing { p: usize },
    #[error("pairing given at codimension {p}, which exceeds the dimension")]
    UnexpectedPairing { p: usize },
    #[error("pairing at codimension {p} must be {rows}x{cols}, got {got_rows}x{got_cols}")]
    PairingShape {
        p: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("the pairing of the fundamental class against the point class must be [[1]] at codimension {p}")]
    FundamentalPairing { p: usize },
    #[error("pairing at codimension {q} is not the transpose of the pairing at {p}")]
    TransposeSymmetry { p: usize, q: usize },
    #[error("codimension {p} is outside 0..={n}")]
    CodimOutOfRange { p: usize, n: usize },
}

/// Intersection data of an n-fold: `ranks[p]` is the rank of the numerical
/// cycle group in codimension `p`, `pairings[p]` the matrix of intersection
/// numbers between chosen bases in codimensions `p` and `n - p`. Always
/// validated on construction: `pairings[n - p]` must be the transpose of
/// `pairings[p]`, and the two fundamental pairings must be `[[1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingData {
    n: usize,
    ranks: Vec<usize>,
    pairings: BTreeMap<usize, IntMatrix>,
}

impl PairingData {
    pub fn new(
        n: usize,
        ranks: Vec<usize>,
        pairings: BTreeMap<usize, IntMatrix>,
    ) -> Result<Self, AkError> {
        if n == 0 {
            return Err(AkError::NonPositiveDimension);
        }
        if ranks.len() != n + 1 {
            return Err(AkError::RankCount {
                n,
                expected: n + 1,
                got: ranks.len(),
            });
        }
        if let Some(p) = (0..=n).find(|&p| ranks[p] == 0) {
            return Err(AkError::NonPositiveRank { p });
        }
        if ranks[0] != 1 || ranks[n] != 1 {
            return Err(AkError::FundamentalRank {
                m0: ranks[0],
                mn: ranks[n],
            });
        }
        if let Some(&p) = pairings.keys().find(|&&p| p > n) {
            return Err(AkError::UnexpectedPairing { p });
        }
        for p in 0..=n {
            let m = pairings.get(&p).ok_or(AkError::MissingPairing { p })?;
            if m.rows() != ranks[p] || m.cols() != ranks[n - p] {
                return Err(AkError::PairingShape {
                    p,
                    rows: ranks[p],
                    cols: ranks[n - p],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        let unit = IntMatrix::identity(1);
        if pairings[&0] != unit {
            return Err(AkError::FundamentalPairing { p: 0 });
        }
        if pairings[&n] != unit {
            return Err(AkError::FundamentalPairing { p: n });
        }
        for p in 0..=n {
            if pairings[&(n - p)] != pairings[&p].transpose() {
                return Err(AkError::TransposeSymmetry { p, q: n - p });
            }
        }
        Ok(PairingData { n, ranks, pairings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn pairing(&self, p: usize) -> Result<&IntMatrix, AkError> {
        self.pairings
            .get(&p)
            .ok_or(AkError::CodimOutOfRange { p, n: self.n })
    }
}

impl Serialize for PairingData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PairingData", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("ranks", &self.ranks)?;
        st.serialize_field("pairings", &self.pairings)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PairingData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            ranks: Vec<usize>,
            pairings: BTreeMap<usize, IntMatrix>,
        }
        let raw = Raw::deserialize(d)?;
        PairingData::new(raw.n, raw.ranks, raw.pairings).map_err(serde::de::Error::custom)
    }
}

/// The K_0 unimodularity criterion at codimension `p`: the pairing between
/// codimensions `p` and `n - p` is square with determinant of absolute
/// value 1.
pub fn k0_criterion_holds(data: &PairingData, p: usize) -> Result<bool, AkError> {
    let m = data.pairing(p)?;
    Ok(m.is_square() && m.det().abs().is_one())
}

#[derive(Debug, Clone, Serialize)]
pub struct AkVerdict {
    pub verdict: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_p: Option<usize>,
}

/// Compatibility: dimension at most 3 passes outright; above that, every
/// intersection pairing with `3 <= p <= n - 1` must be unimodular. The
/// first failing codimension is reported.
pub fn ak_compatible(data: &PairingData) -> AkVerdict {
    let n = data.n();
    if n <= 3 {
        return AkVerdict {
            verdict: true,
            reason: format!("dimension {n} is at most 3"),
            failing_p: None,
        };
    }
    for p in 3..n {
        if !k0_criterion_holds(data, p).expect("p is within range") {
            return AkVerdict {
                verdict: false,
                reason: format!(
                    "the intersection pairing between codimensions {p} and {} is not unimodular",
                    n - p
                ),
                failing_p: Some(p),
            };
        }
    }
    AkVerdict {
        verdict: true,
        reason: format!(
            "intersection pairings are unimodular for every p in [3, {}]",
            n - 1
        ),
        failing_p: None,
    }
}

/// Structure-sheaf basis of the K-lattice, cross-checking that each class
/// has the shape `Z + higher codimension`: the generator of codimension `p`
/// leads with coefficient 1 on the codimension-`p` cycle and has nothing
/// below it.
pub fn k0_basis_from_cycles(f: FanoDescriptor) -> [KClass; 4] {
    let basis = structure_sheaf_basis(f);
    for (p, b) in basis.iter().enumerate() {
        for q in 0..p {
            assert!(
                b.ch().coeff(q).is_zero(),
                "basis class {p} has a component below its codimension"
            );
        }
        assert!(
            b.ch().coeff(p).is_one(),
            "basis class {p} does not lead with its cycle"
        );
    }
    basis
}

/// Intersection data of a Picard-rank-1 Fano threefold, computed from the
/// Chow ring on the basis cycles `1, H, L, P`.
pub fn threefold_pairing_data(f: FanoDescriptor) -> PairingData {
    let cycles = [
        CycleClass::one(f),
        CycleClass::h(f),
        CycleClass::l(f),
        CycleClass::p(f),
    ];
    let mut pairings = BTreeMap::new();
    for p in 0..=3usize {
        let deg = (&cycles[p] * &cycles[3 - p]).top_degree();
        assert!(deg.is_integer());
        pairings.insert(
            p,
            IntMatrix::from_rows(vec![vec![deg.to_integer()]]),
        );
    }
    PairingData::new(3, vec![1; 4], pairings).expect("threefold data is well formed")
}
