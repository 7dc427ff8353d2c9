//! Interval decomposition of short A_n modules by the hom-count method.
//!
//! Every A_n representation decomposes into interval representations
//! I[b,d]; for n <= 3 (the sizes the ladder marginals need) the
//! multiplicities are recovered exactly like the ladder oracle: count hom
//! dimensions against all intervals and solve the interval hom table.

use super::hom::{hom_dim_generic, solve_multiplicities};
use super::DecompError;
use crate::exactla::Matrix;
use crate::ladder::ArrowDir;

/// A representation of an A_n quiver with the given arrow directions:
/// `maps[i]` sits on the edge between vertices i and i+1 (0-based), with
/// shape dims[i+1] x dims[i] for a forward arrow and dims[i] x dims[i+1]
/// for a backward one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnRep {
    orientation: Vec<ArrowDir>,
    modulus: u64,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl AnRep {
    pub fn new(
        orientation: Vec<ArrowDir>,
        modulus: u64,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, DecompError> {
        let n = dims.len();
        if n == 0 || orientation.len() + 1 != n || maps.len() + 1 != n {
            return Err(DecompError::Invariant(format!(
                "inconsistent A_n data: {} dims, {} arrows, {} maps",
                n,
                orientation.len(),
                maps.len()
            )));
        }
        for (i, (m, d)) in maps.iter().zip(&orientation).enumerate() {
            let (want_rows, want_cols) = match d {
                ArrowDir::Forward => (dims[i + 1], dims[i]),
                ArrowDir::Backward => (dims[i], dims[i + 1]),
            };
            if m.rows() != want_rows || m.cols() != want_cols || m.modulus() != modulus {
                return Err(DecompError::Invariant(format!(
                    "map {i} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want_rows,
                    want_cols
                )));
            }
        }
        Ok(AnRep {
            orientation,
            modulus,
            dims,
            maps,
        })
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn arrows_zero_based(&self) -> Vec<(usize, usize)> {
        self.orientation
            .iter()
            .enumerate()
            .map(|(i, d)| match d {
                ArrowDir::Forward => (i, i + 1),
                ArrowDir::Backward => (i + 1, i),
            })
            .collect()
    }
}

/// The interval representation I[b,d] (1-based, b <= d) on the given
/// orientation: one-dimensional on vertices b..=d, identity maps inside
/// the support.
pub fn interval_rep(orientation: &[ArrowDir], b: usize, d: usize, p: u64) -> AnRep {
    let n = orientation.len() + 1;
    assert!(1 <= b && b <= d && d <= n, "interval out of range");
    let dims: Vec<usize> = (1..=n).map(|i| usize::from(b <= i && i <= d)).collect();
    let maps: Vec<Matrix> = orientation
        .iter()
        .enumerate()
        .map(|(i, dir)| {
            let (rows, cols) = match dir {
                ArrowDir::Forward => (dims[i + 1], dims[i]),
                ArrowDir::Backward => (dims[i], dims[i + 1]),
            };
            if rows == 1 && cols == 1 {
                Matrix::identity(1, p)
            } else {
                Matrix::zeros(rows, cols, p)
            }
        })
        .collect();
    AnRep::new(orientation.to_vec(), p, dims, maps).expect("interval is consistent")
}

fn an_hom_dim(m: &AnRep, n: &AnRep) -> usize {
    debug_assert_eq!(m.orientation, n.orientation);
    hom_dim_generic(
        m.modulus,
        m.n(),
        &m.arrows_zero_based(),
        &m.dims,
        &m.maps,
        &n.dims,
        &n.maps,
    )
}

/// All intervals of A_n in (b, d) lexicographic order.
fn intervals(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 1..=n {
        for d in b..=n {
            out.push((b, d));
        }
    }
    out
}

/// Interval multiplicities of an A_n module with n <= 3; returns pairs
/// ((b, d), multiplicity) for every interval, zeros included.
pub fn an_decompose(rep: &AnRep) -> Result<Vec<((usize, usize), u64)>, DecompError> {
    let n = rep.n();
    if n > 3 {
        return Err(DecompError::UnsupportedAn(n));
    }
    let ivals = intervals(n);
    let reps: Vec<AnRep> = ivals
        .iter()
        .map(|&(b, d)| interval_rep(&rep.orientation, b, d, rep.modulus))
        .collect();
    let table: Vec<Vec<u64>> = reps
        .iter()
        .map(|j| reps.iter().map(|i| an_hom_dim(j, i) as u64).collect())
        .collect();
    let counts: Vec<u64> = reps.iter().map(|i| an_hom_dim(rep, i) as u64).collect();
    let mult = solve_multiplicities(&table, &counts)?;
    Ok(ivals.into_iter().zip(mult).collect())
}
