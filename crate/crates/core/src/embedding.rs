//! Embedding a monomial complete intersection into a quadratic one.
//!
//! For `A = k[y1..yn] / (y1^(a1+1), ..., yn^(an+1))` with socle degree
//! `m = a1 + ... + an`, let `B = k[x1..xm] / (x1^2, ..., xm^2)` and send
//! `y_j` to the sum of the `a_j` consecutive variables of block `j`. The
//! kernel of this map is exactly the defining ideal of `A` whenever the
//! characteristic is 0 or exceeds `m`, so `A` sits inside `B` with the same
//! socle degree and `y1 + ... + yn` maps to `x1 + ... + xm`.
//!
//! Everything here is checked by computation: the image of the socle
//! generator, injectivity degree by degree (rank of the map against
//! `dim A_j`), and the Lefschetz middle maps of `A` through `B`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{graded_basis, hilbert_vector, AlgebraElement, AlgebraSpec, Polynomial};
use crate::error::{invalid, Result};
use crate::lefschetz::{
    map_list, multiplication_matrix, slp_check, CheckOptions, LefschetzReport, LinearForm,
    MapRecord, Mode, CERTIFYING_PRIME,
};
use crate::linalg::{rank_certified, rank_mod_p, IntMatrix, Integers, RankResult};
use crate::monomial::{squarefree_rank, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSpec {
    parts: Vec<u32>,
    /// `alpha_0 = 0 < ... < alpha_n = m`, block `j` is `alpha_j..alpha_{j+1}`.
    alpha: Vec<usize>,
    source: AlgebraSpec,
    target: AlgebraSpec,
}

impl EmbeddingSpec {
    /// From the block sizes `a_j` (source killed powers `a_j + 1`).
    pub fn from_parts(parts: Vec<u32>, characteristic: u64) -> Result<Self> {
        let source = AlgebraSpec::new(parts.iter().map(|a| a + 1).collect(), characteristic)?;
        let m = source.socle_degree();
        if m == 0 {
            return Err(invalid("the source algebra has socle degree 0"));
        }
        let target = AlgebraSpec::quadratic(m, characteristic)?;
        let mut alpha = vec![0usize];
        for &a in &parts {
            alpha.push(alpha.last().unwrap() + a as usize);
        }
        Ok(EmbeddingSpec {
            parts,
            alpha,
            source,
            target,
        })
    }

    /// From the source algebra's killed powers `d_j = a_j + 1`.
    pub fn from_killed_powers(exponents: &[u32], characteristic: u64) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(invalid("killed powers must be at least 1"));
        }
        EmbeddingSpec::from_parts(exponents.iter().map(|d| d - 1).collect(), characteristic)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn source(&self) -> &AlgebraSpec {
        &self.source
    }

    pub fn target(&self) -> &AlgebraSpec {
        &self.target
    }

    /// Socle degree shared by source and target.
    pub fn m(&self) -> usize {
        self.target.num_vars()
    }

    /// `phi(y_j)`.
    pub fn block_sum(&self, j: usize) -> AlgebraElement {
        let mut coefficients = vec![0i64; self.m()];
        for c in &mut coefficients[self.alpha[j]..self.alpha[j + 1]] {
            *c = 1;
        }
        AlgebraElement::linear(&self.target, &coefficients).expect("length m")
    }
}

/// The ring map `y_j -> x_(alpha_j + 1) + ... + x_(alpha_(j+1))` into `B`,
/// with powers of the block sums cached.
pub struct Phi<'a> {
    spec: &'a EmbeddingSpec,
    powers: Vec<Vec<AlgebraElement>>,
}

impl<'a> Phi<'a> {
    pub fn new(spec: &'a EmbeddingSpec) -> Self {
        let powers = (0..spec.parts.len())
            .map(|j| vec![AlgebraElement::one(&spec.target), spec.block_sum(j)])
            .collect();
        Phi { spec, powers }
    }

    fn block_power(&mut self, j: usize, k: usize) -> &AlgebraElement {
        while self.powers[j].len() <= k {
            let next = self.powers[j].last().unwrap().mul(&self.powers[j][1]).expect("same spec");
            self.powers[j].push(next);
        }
        &self.powers[j][k]
    }

    pub fn monomial(&mut self, y: &Monomial) -> Result<AlgebraElement> {
        if y.num_vars() != self.spec.parts.len() {
            return Err(invalid("monomial over the wrong number of variables"));
        }
        let mut acc = AlgebraElement::one(&self.spec.target);
        for (j, &e) in y.exponents().iter().enumerate() {
            if e > 0 {
                let factor = self.block_power(j, e as usize).clone();
                acc = acc.mul(&factor)?;
                if acc.is_zero() {
                    break;
                }
            }
        }
        Ok(acc)
    }

    pub fn polynomial(&mut self, f: &Polynomial) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(&self.spec.target);
        for (y, c) in &f.terms {
            acc = acc.add(&self.monomial(y)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `phi` on an element of `A`, using its standard-monomial expansion.
    pub fn element(&mut self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if f.spec() != &self.spec.source {
            return Err(invalid("element is not in the source algebra"));
        }
        self.polynomial(&Polynomial {
            terms: f.terms().clone(),
        })
    }
}

/// One-shot `phi` of a free polynomial in `y1..yn`.
pub fn phi(es: &EmbeddingSpec, f: &Polynomial) -> Result<AlgebraElement> {
    Phi::new(es).polynomial(f)
}

/// `phi(y1^a1 ... yn^an)` against `(a1! ... an!) x1 ... xm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleRecord {
    /// `prod a_j!` as an integer.
    pub scalar: BigInt,
    /// The computed image equals `scalar * x1...xm` in `B`.
    pub image_matches: bool,
    /// The scalar is nonzero in the characteristic.
    pub nonzero: bool,
}

pub fn verify_socle_image(es: &EmbeddingSpec) -> Result<SocleRecord> {
    let generator = Monomial::new(es.parts.iter().map(|&a| a as u8).collect());
    let image = Phi::new(es).monomial(&generator)?;
    let scalar: BigInt = es
        .parts
        .iter()
        .flat_map(|&a| 1..=a)
        .map(BigInt::from)
        .product();
    let top = Monomial::new(vec![1; es.m()]);
    let expected = AlgebraElement::from_monomial(&es.target, top, scalar.clone());
    Ok(SocleRecord {
        nonzero: !es.target.normalize(scalar.clone()).is_zero(),
        image_matches: image == expected,
        scalar,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub j: usize,
    pub dim_source: usize,
    pub rank: usize,
    pub ok: bool,
}

/// Matrix of `phi: A_j -> B_j` in the standard bases (columns = `A_j`).
pub fn phi_matrix(es: &EmbeddingSpec, phi: &mut Phi<'_>, j: usize) -> Result<IntMatrix> {
    let source = graded_basis(&es.source, j);
    let rows = num_integer::binomial(es.m(), j);
    let mut out = IntMatrix::zeros(Integers, rows, source.len());
    for (col, u) in source.iter().enumerate() {
        let image = phi.monomial(u)?;
        for (x, c) in image.terms() {
            let idx = squarefree_rank(x)?;
            out.set(idx.position, col, c.clone());
        }
    }
    Ok(out)
}

fn rank_in(spec: &AlgebraSpec, m: &IntMatrix) -> RankResult {
    match spec.characteristic() {
        0 => rank_certified(m, CERTIFYING_PRIME).expect("prime"),
        p => rank_mod_p(m, p).expect("validated characteristic"),
    }
}

/// Injectivity of `A_j -> B_j` for `j = 0..=up_to_degree`.
pub fn verify_kernel_dims(es: &EmbeddingSpec, up_to_degree: usize) -> Result<Vec<DegreeCheck>> {
    let h = hilbert_vector(&es.source);
    let mut phi = Phi::new(es);
    (0..=up_to_degree.min(es.m()))
        .map(|j| {
            let m = phi_matrix(es, &mut phi, j)?;
            let rank = rank_in(&es.target, &m).rank;
            let dim_source = h.get(j) as usize;
            Ok(DegreeCheck {
                j,
                dim_source,
                rank,
                ok: rank == dim_source,
            })
        })
        .collect()
}

/// The middle maps of `A` checked directly and through `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferReport {
    pub direct: LefschetzReport,
    pub via_embedding: LefschetzReport,
    pub agree: bool,
}

pub fn transfer_slp(es: &EmbeddingSpec) -> Result<TransferReport> {
    let source_form = LinearForm::sum(es.source.num_vars());
    let direct = slp_check(&es.source, &source_form, CheckOptions::middle())?;

    let start = Instant::now();
    let h = hilbert_vector(&es.source);
    let target_form = LinearForm::sum(es.m());
    let mut phi = Phi::new(es);
    let mut maps = Vec::new();
    for (i, t) in map_list(&es.source, Mode::Middle) {
        let map_start = Instant::now();
        let embed = phi_matrix(es, &mut phi, i)?;
        let middle = multiplication_matrix(&es.target, &target_form, i, t);
        let composite = middle.mat_mul(&embed)?;
        let result = rank_in(&es.target, &composite);
        let (rows, cols) = (h.get(i + t) as usize, h.get(i) as usize);
        // Injective on A_i, and dim A_i = dim A_(m-i) makes it bijective.
        let maximal = result.rank == cols && rows == cols;
        maps.push(MapRecord {
            i,
            t,
            rows,
            cols,
            expected: cols,
            rank: result.rank,
            maximal,
            method: result.method,
            ms: map_start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let via_embedding = LefschetzReport::assemble(
        &es.source,
        &source_form,
        Mode::Middle,
        maps,
        start.elapsed().as_secs_f64() * 1e3,
    );
    Ok(TransferReport {
        agree: direct.slp == via_embedding.slp,
        direct,
        via_embedding,
    })
}

/// The verification record printed by `embed-verify`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbedVerification {
    pub m: usize,
    pub socle: SocleRecord,
    pub degrees: Vec<DegreeCheck>,
    pub transfer: TransferReport,
}

impl EmbedVerification {
    pub fn run(es: &EmbeddingSpec) -> Result<Self> {
        Ok(EmbedVerification {
            m: es.m(),
            socle: verify_socle_image(es)?,
            degrees: verify_kernel_dims(es, es.m())?,
            transfer: transfer_slp(es)?,
        })
    }

    pub fn all_ok(&self) -> bool {
        self.socle.image_matches
            && self.socle.nonzero
            && self.degrees.iter().all(|d| d.ok)
            && self.transfer.agree
            && self.transfer.direct.slp
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "socle_scalar": self.socle.scalar.to_string(),
            "socle_nonzero": self.socle.nonzero,
            "socle_image_matches": self.socle.image_matches,
            "degrees": self.degrees,
            "slp_direct": self.transfer.direct.slp,
            "slp_via_embedding": self.transfer.via_embedding.slp,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn y(e: &[u8]) -> Polynomial {
        Polynomial::monomial(Monomial::new(e.to_vec()), BigInt::one())
    }

    #[test]
    fn block_powers_vanish() {
        let es = EmbeddingSpec::from_parts(vec![2, 3], 0).unwrap();
        assert!(phi(&es, &y(&[3, 0])).unwrap().is_zero());
        assert!(phi(&es, &y(&[0, 4])).unwrap().is_zero());
        assert!(!phi(&es, &y(&[2, 3])).unwrap().is_zero());
        assert_eq!(phi(&es, &y(&[0, 0])).unwrap(), AlgebraElement::one(es.target()));
    }

    #[test]
    fn product_of_blocks() {
        let es = EmbeddingSpec::from_parts(vec![2, 1], 0).unwrap();
        let img = phi(&es, &y(&[1, 1])).unwrap();
        let x1x3 = Monomial::from_support(3, &[0, 2]).unwrap();
        let x2x3 = Monomial::from_support(3, &[1, 2]).unwrap();
        assert_eq!(img.terms().len(), 2);
        assert_eq!(img.coefficient(&x1x3), BigInt::one());
        assert_eq!(img.coefficient(&x2x3), BigInt::one());
    }

    #[test]
    fn socle_scalars() {
        let r = verify_socle_image(&EmbeddingSpec::from_parts(vec![2, 2], 0).unwrap()).unwrap();
        assert_eq!(r.scalar, BigInt::from(4));
        assert!(r.image_matches && r.nonzero);
        let r = verify_socle_image(&EmbeddingSpec::from_parts(vec![1, 1, 1], 0).unwrap()).unwrap();
        assert_eq!(r.scalar, BigInt::one());
        let r = verify_socle_image(&EmbeddingSpec::from_parts(vec![3, 1], 3).unwrap()).unwrap();
        assert_eq!(r.scalar, BigInt::from(6));
        assert!(!r.nonzero);
        assert!(r.image_matches);
    }

    #[test]
    fn kernel_dims_small() {
        let es = EmbeddingSpec::from_parts(vec![2, 1], 0).unwrap();
        let m = phi_matrix(&es, &mut Phi::new(&es), 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap());
        let d = verify_kernel_dims(&es, 1).unwrap();
        assert_eq!(d[1].rank, 2);

        let es = EmbeddingSpec::from_parts(vec![2, 2], 0).unwrap();
        let ranks: Vec<usize> = verify_kernel_dims(&es, 4).unwrap().iter().map(|d| d.rank).collect();
        assert_eq!(ranks, vec![1, 2, 3, 2, 1]);

        let es = EmbeddingSpec::from_parts(vec![1, 1], 0).unwrap();
        assert!(verify_kernel_dims(&es, 2).unwrap().iter().all(|d| d.ok));
    }

    #[test]
    fn transfer_examples() {
        let r = transfer_slp(&EmbeddingSpec::from_parts(vec![2, 1], 0).unwrap()).unwrap();
        assert!(r.agree && r.direct.slp && r.via_embedding.slp);
        let ranks: Vec<usize> = r.via_embedding.maps.iter().map(|m| m.rank).collect();
        assert_eq!(ranks, vec![1, 2]);

        let r = transfer_slp(&EmbeddingSpec::from_parts(vec![1], 0).unwrap()).unwrap();
        assert!(r.agree && r.direct.slp);

        let r = transfer_slp(&EmbeddingSpec::from_parts(vec![2, 2], 5).unwrap()).unwrap();
        assert!(r.agree && r.direct.slp);
    }

    #[test]
    fn killed_power_convention() {
        let es = EmbeddingSpec::from_killed_powers(&[3, 2, 4], 0).unwrap();
        assert_eq!(es.parts(), &[2, 1, 3]);
        assert_eq!(es.alpha(), &[0, 2, 3, 6]);
        assert_eq!(verify_socle_image(&es).unwrap().scalar, BigInt::from(12));
        assert!(EmbeddingSpec::from_killed_powers(&[1, 1], 0).is_err());
    }

    #[test]
    fn json_record_shape() {
        let es = EmbeddingSpec::from_killed_powers(&[3, 3], 0).unwrap();
        let v = EmbedVerification::run(&es).unwrap();
        assert!(v.all_ok());
        let j = v.to_json();
        assert_eq!(j["m"], 4);
        assert_eq!(j["socle_scalar"], "4");
        assert_eq!(j["degrees"][2]["rank"], 3);
        assert_eq!(j["slp_via_embedding"], true);
    }
}
