//! Hom-space dimensions and the multiplicity-recovery oracle.
//!
//! For representations M, N of the same quiver, a morphism is a tuple of
//! vertex maps g_v commuting with every arrow. Stacking the entries of all
//! g_v into one unknown vector turns the commutation squares into a linear
//! system; dim Hom(M, N) is the kernel dimension of its constraint matrix.
//!
//! Since Hom is additive in both arguments over direct sums, the counts
//! h_i = dim Hom(M, I_i) against all indecomposables I_i determine the
//! multiplicities k of M's decomposition through Hᵀ·k = h, where
//! H[j][i] = dim Hom(I_j, I_i). That matrix is a fixed table; its
//! invertibility over the rationals is asserted at construction rather
//! than assumed.

use super::DecompError;
use crate::arq::{self, PersistenceDiagram};
use crate::exactla::Matrix;
use crate::ladder::{LadderRep, Orientation};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Kernel dimension of the morphism constraint system between two
/// representations of the quiver given by `arrows` (0-based vertex pairs).
/// `m_maps[k]` / `n_maps[k]` are the matrices on arrow k.
pub(crate) fn hom_dim_generic(
    p: u64,
    vertex_count: usize,
    arrows: &[(usize, usize)],
    m_dims: &[usize],
    m_maps: &[Matrix],
    n_dims: &[usize],
    n_maps: &[Matrix],
) -> usize {
    let mut offsets = vec![0usize; vertex_count + 1];
    for v in 0..vertex_count {
        offsets[v + 1] = offsets[v] + n_dims[v] * m_dims[v];
    }
    let unknowns = offsets[vertex_count];
    if unknowns == 0 {
        return 0;
    }
    let eq_count: usize = arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, _))| n_maps[k].rows() * m_dims[s])
        .sum();
    let mut system = Matrix::zeros(eq_count, unknowns, p);
    let mut eq = 0;
    for (k, &(s, t)) in arrows.iter().enumerate() {
        let na = &n_maps[k]; // n_dims[t] x n_dims[s]
        let ma = &m_maps[k]; // m_dims[t] x m_dims[s]
        // constraint: N_a * g_s - g_t * M_a = 0, entry (r, c)
        for r in 0..na.rows() {
            for c in 0..m_dims[s] {
                for x in 0..n_dims[s] {
                    let idx = offsets[s] + x * m_dims[s] + c;
                    let cur = system[(eq, idx)];
                    system.set(eq, idx, cur + na[(r, x)]);
                }
                for l in 0..m_dims[t] {
                    let idx = offsets[t] + r * m_dims[t] + l;
                    let cur = system[(eq, idx)];
                    system.set(eq, idx, cur + (p - ma[(l, c)]) % p);
                }
                eq += 1;
            }
        }
    }
    debug_assert_eq!(eq, eq_count);
    unknowns - system.rank()
}

/// dim Hom(M, N) for two ladder representations of the same orientation
/// and field.
pub fn hom_dim(m: &LadderRep, n: &LadderRep) -> Result<usize, DecompError> {
    if m.orientation() != n.orientation() || m.modulus() != n.modulus() {
        return Err(DecompError::Invariant(
            "hom_dim needs matching orientation and field".into(),
        ));
    }
    let arrows: Vec<(usize, usize)> = m.arrows().iter().map(|&(s, t)| (s - 1, t - 1)).collect();
    Ok(hom_dim_generic(
        m.modulus(),
        m.dims().len(),
        &arrows,
        m.dims(),
        m.maps(),
        n.dims(),
        n.maps(),
    ))
}

/// The table of pairwise hom dimensions between the canonical CL(fb)
/// indecomposables: `entry(j, i) = dim Hom(I_j, I_i)` with vertices in AR
/// table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMatrix {
    entries: Vec<Vec<u64>>,
}

impl HomMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, j: usize, i: usize) -> u64 {
        self.entries[j][i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Exact integer determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(
            self.entries
                .iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }
}

pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact division in Bareiss
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Builds the 30x30 hom-dimension table over GF(p) and asserts that it is
/// invertible over the rationals; a singular table means the committed
/// quiver data is wrong.
pub fn build_hom_matrix(p: u64) -> Result<HomMatrix, DecompError> {
    let quiver = arq::clfb_ar_quiver();
    let reps: Vec<LadderRep> = quiver
        .base_vertex_ids()
        .iter()
        .map(|&v| quiver.canonical_rep(v, p))
        .collect();
    let n = reps.len();
    let mut entries = vec![vec![0u64; n]; n];
    for j in 0..n {
        for i in 0..n {
            entries[j][i] = hom_dim(&reps[j], &reps[i])? as u64;
        }
    }
    let h = HomMatrix { entries };
    if h.determinant().is_zero() {
        return Err(DecompError::SingularHomMatrix);
    }
    Ok(h)
}

fn cached_hom_matrix(p: u64) -> Result<Arc<HomMatrix>, DecompError> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<HomMatrix>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("hom matrix cache poisoned");
    if let Some(h) = guard.get(&p) {
        return Ok(h.clone());
    }
    let h = Arc::new(build_hom_matrix(p)?);
    guard.insert(p, h.clone());
    Ok(h)
}

/// Exact solve of `Hᵀ k = h` for a nonnegative integer vector.
///
/// The candidate is produced modulo a large prime and then verified by
/// exact integer arithmetic, which rejects mod-candidates arising from
/// negative or non-integer rational solutions. Uniqueness follows from the
/// invertibility of H over the rationals.
pub(crate) fn solve_multiplicities(h_table: &[Vec<u64>], counts: &[u64]) -> Result<Vec<u64>, DecompError> {
    const SOLVE_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];
    let n = h_table.len();
    assert_eq!(counts.len(), n);
    for &big_p in SOLVE_PRIMES.iter() {
        // transpose of H, reduced mod big_p
        let ht = Matrix::from_fn(n, n, big_p, |i, j| h_table[j][i] % big_p);
        if !ht.is_invertible() {
            continue; // det divisible by this prime; try the next
        }
        let rhs = Matrix::from_fn(n, 1, big_p, |i, _| counts[i] % big_p);
        let sol = ht.solve(&rhs).expect("invertible system always solves");
        let candidate: Vec<u64> = (0..n).map(|i| sol[(i, 0)]).collect();
        // exact verification over the integers
        for i in 0..n {
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += BigInt::from(h_table[j][i]) * BigInt::from(candidate[j]);
            }
            if acc != BigInt::from(counts[i]) {
                return Err(DecompError::NoIntegerSolution);
            }
        }
        return Ok(candidate);
    }
    Err(DecompError::SingularHomMatrix)
}

/// Multiplicity recovery for a validating fb representation: computes
/// h_i = dim Hom(rep, I_i) for all 30 classes and solves the hom table.
pub fn oracle_decompose(rep: &LadderRep) -> Result<PersistenceDiagram, DecompError> {
    let h = cached_hom_matrix(rep.modulus())?;
    oracle_decompose_with_matrix(rep, &h)
}

/// Same as [`oracle_decompose`] but against a caller-supplied hom table;
/// lets tests inject corrupted tables to prove mismatches are detected.
pub fn oracle_decompose_with_matrix(
    rep: &LadderRep,
    h: &HomMatrix,
) -> Result<PersistenceDiagram, DecompError> {
    if !rep.orientation().is_fb() {
        return Err(DecompError::UnsupportedShape(rep.orientation().to_string()));
    }
    rep.validate().map_err(DecompError::InvalidInput)?;
    let quiver = arq::clfb_ar_quiver();
    let p = rep.modulus();
    let counts: Vec<u64> = quiver
        .base_vertex_ids()
        .iter()
        .map(|&v| hom_dim(rep, &quiver.canonical_rep(v, p)).map(|d| d as u64))
        .collect::<Result<_, _>>()?;
    let mult = solve_multiplicities(h.rows(), &counts)?;
    let mut diagram = PersistenceDiagram::empty(quiver.shape().clone());
    for (v, &k) in mult.iter().enumerate() {
        diagram.add(v, k);
    }
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::{random_cocktail, DimVector};

    fn canonical(dims: &[usize], p: u64) -> LadderRep {
        let q = arq::clfb_ar_quiver();
        let v = q.vertex_by_dims(&DimVector(dims.to_vec())).unwrap();
        q.canonical_rep(v, p)
    }

    #[test]
    fn hom_between_disjoint_simples_is_zero() {
        let s1 = canonical(&[1, 0, 0, 0, 0, 0], 5);
        let s2 = canonical(&[0, 1, 0, 0, 0, 0], 5);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    }

    #[test]
    fn hom_of_simple_with_itself_is_one() {
        let s2 = canonical(&[0, 1, 0, 0, 0, 0], 3);
        assert_eq!(hom_dim(&s2, &s2).unwrap(), 1);
    }

    #[test]
    fn endomorphisms_of_the_nonthin_class_are_scalars() {
        for p in [2u64, 3, 5] {
            let g = canonical(&[1, 2, 1, 1, 1, 1], p);
            assert_eq!(hom_dim(&g, &g).unwrap(), 1);
        }
    }

    #[test]
    fn hom_matrix_diagonal_and_determinant() {
        let h = build_hom_matrix(2).unwrap();
        for j in 0..h.size() {
            assert!(h.entry(j, j) >= 1, "identity endomorphism at {j}");
        }
        assert!(!h.determinant().is_zero());
    }

    #[test]
    fn hom_matrix_is_field_independent() {
        let h2 = build_hom_matrix(2).unwrap();
        let h3 = build_hom_matrix(3).unwrap();
        let h5 = build_hom_matrix(5).unwrap();
        assert_eq!(h2, h3);
        assert_eq!(h2, h5);
    }

    #[test]
    fn oracle_on_single_canonicals_is_unit_vector() {
        let q = arq::clfb_ar_quiver();
        for &v in q.base_vertex_ids().iter() {
            let rep = q.canonical_rep(v, 2);
            let d = oracle_decompose(&rep).unwrap();
            assert_eq!(d.entries(), vec![(v, 1)], "vertex {v}");
        }
    }

    #[test]
    fn oracle_is_additive_over_direct_sums() {
        let (a, da) = random_cocktail(&[(DimVector(vec![1, 2, 1, 1, 1, 1]), 1)], 3, 1).unwrap();
        let (b, db) = random_cocktail(&[(DimVector(vec![0, 1, 0, 1, 2, 1]), 2)], 3, 2).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let d = oracle_decompose(&sum).unwrap();
        assert_eq!(d, da.pointwise_sum(&db));
    }

    #[test]
    fn oracle_recovers_planted_diagrams() {
        for seed in 0..10u64 {
            let plant = vec![
                (DimVector(vec![1, 1, 1, 1, 1, 1]), (seed % 3) as usize),
                (DimVector(vec![1, 2, 1, 1, 1, 1]), 1),
                (DimVector(vec![0, 1, 0, 1, 2, 1]), (seed % 2) as usize),
                (DimVector(vec![1, 1, 0, 1, 1, 1]), 2),
            ];
            let (rep, planted) = random_cocktail(&plant, 5, seed).unwrap();
            assert_eq!(oracle_decompose(&rep).unwrap(), planted);
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let (rep, planted) = random_cocktail(
            &[
                (DimVector(vec![1, 1, 1, 1, 1, 1]), 2),
                (DimVector(vec![0, 1, 0, 0, 1, 0]), 1),
            ],
            2,
            9,
        )
        .unwrap();
        let good = build_hom_matrix(2).unwrap();
        let mut rows = good.rows().to_vec();
        rows[0][1] += 1;
        let corrupt = HomMatrix { entries: rows };
        match oracle_decompose_with_matrix(&rep, &corrupt) {
            Ok(d) => assert_ne!(d, planted, "corruption must not reproduce the plant"),
            Err(_) => {} // rejection is equally acceptable
        }
    }
}
