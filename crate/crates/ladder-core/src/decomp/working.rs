//! Mutable working state for the echelon-reduction pipeline.
//!
//! A [`Working`] value holds the seven structure matrices of an fb module
//! in the current (repeatedly re-chosen) bases. Steps apply invertible
//! per-vertex basis changes and then carve off coordinate blocks claimed
//! to form summands of known isomorphism type. [`Working::extract`]
//! verifies every such claim against the canonical matrices before any
//! rows or columns are deleted, so a bug in a basis arrangement surfaces
//! as an invariant violation instead of a wrong diagram.

use super::DecompError;
use crate::arq;
use crate::exactla::Matrix;
use crate::ladder::LadderRep;
use std::sync::OnceLock;

pub(crate) const V1: usize = 0;
pub(crate) const V2: usize = 1;
pub(crate) const V3: usize = 2;
pub(crate) const V4: usize = 3;
pub(crate) const V5: usize = 4;
pub(crate) const V6: usize = 5;

/// Map indices into `Working::maps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Arrow {
    F12 = 0,
    F32 = 1,
    F14 = 2,
    F36 = 3,
    F25 = 4,
    F45 = 5,
    F65 = 6,
}

pub(crate) const ARROWS: [Arrow; 7] = [
    Arrow::F12,
    Arrow::F32,
    Arrow::F14,
    Arrow::F36,
    Arrow::F25,
    Arrow::F45,
    Arrow::F65,
];

impl Arrow {
    pub(crate) fn endpoints(self) -> (usize, usize) {
        match self {
            Arrow::F12 => (V1, V2),
            Arrow::F32 => (V3, V2),
            Arrow::F14 => (V1, V4),
            Arrow::F36 => (V3, V6),
            Arrow::F25 => (V2, V5),
            Arrow::F45 => (V4, V5),
            Arrow::F65 => (V6, V5),
        }
    }
}

/// A batch of summands of one isomorphism type to split off: `coords[v]`
/// lists the current coordinates of ladder vertex `v` belonging to the
/// batch, copy-major (each copy's canonical coordinates consecutive).
pub(crate) struct Extraction {
    pub type_idx: usize,
    pub count: usize,
    pub coords: [Vec<usize>; 6],
}

impl Extraction {
    pub(crate) fn new(type_idx: usize, count: usize) -> Self {
        Extraction {
            type_idx,
            count,
            coords: Default::default(),
        }
    }

    pub(crate) fn with(mut self, vertex: usize, coords: Vec<usize>) -> Self {
        self.coords[vertex] = coords;
        self
    }
}

struct SummandRecord {
    type_idx: usize,
    count: usize,
    /// Global (original-basis-transform) coordinate ids per vertex,
    /// copy-major; populated only when witnesses are tracked.
    global_coords: Option<[Vec<usize>; 6]>,
}

struct WitnessState {
    orig_dims: [usize; 6],
    /// Accumulated invertible transform per vertex, original dimension.
    basis: [Matrix; 6],
    /// Global coordinate id of each currently active coordinate.
    active: [Vec<usize>; 6],
}

pub(crate) struct Working {
    p: u64,
    dims: [usize; 6],
    maps: [Matrix; 7],
    records: Vec<SummandRecord>,
    witness: Option<WitnessState>,
}

/// The up-down symmetry of the AR table as a permutation of type indices.
fn type_sigma() -> &'static Vec<usize> {
    static SIGMA: OnceLock<Vec<usize>> = OnceLock::new();
    SIGMA.get_or_init(|| {
        arq::clfb_ar_quiver()
            .up_down_symmetry()
            .expect("CL(fb) has the up-down symmetry")
    })
}

/// Canonical dimension vector of AR table entry `t`.
pub(crate) fn type_dims(t: usize) -> [usize; 6] {
    static DIMS: OnceLock<Vec<[usize; 6]>> = OnceLock::new();
    DIMS.get_or_init(|| {
        arq::clfb_ar_quiver()
            .vertices()
            .iter()
            .map(|v| {
                let d = &v.dims.0;
                [d[0], d[1], d[2], d[3], d[4], d[5]]
            })
            .collect()
    })[t]
}

pub(crate) fn sigma_type(t: usize) -> usize {
    type_sigma()[t]
}

impl Working {
    pub(crate) fn new(rep: &LadderRep, track_witness: bool) -> Self {
        assert!(rep.orientation().is_fb());
        let d = rep.dims();
        let dims = [d[0], d[1], d[2], d[3], d[4], d[5]];
        let maps = [
            rep.map(1, 2).clone(),
            rep.map(3, 2).clone(),
            rep.map(1, 4).clone(),
            rep.map(3, 6).clone(),
            rep.map(2, 5).clone(),
            rep.map(4, 5).clone(),
            rep.map(6, 5).clone(),
        ];
        let witness = track_witness.then(|| WitnessState {
            orig_dims: dims,
            basis: std::array::from_fn(|v| Matrix::identity(dims[v], rep.modulus())),
            active: std::array::from_fn(|v| (0..dims[v]).collect()),
        });
        Working {
            p: rep.modulus(),
            dims,
            maps,
            records: Vec::new(),
            witness,
        }
    }

    pub(crate) fn p(&self) -> u64 {
        self.p
    }

    pub(crate) fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub(crate) fn mat(&self, a: Arrow) -> &Matrix {
        &self.maps[a as usize]
    }

    /// Invertible change of basis at vertex `v`: outgoing maps become
    /// `f * P`, incoming maps `P^{-1} * f`.
    pub(crate) fn apply(&mut self, v: usize, p_mat: &Matrix) -> Result<(), DecompError> {
        if p_mat.rows() != self.dims[v] || p_mat.cols() != self.dims[v] {
            return Err(DecompError::Invariant(format!(
                "basis change at vertex {} has shape {}x{}, space has dim {}",
                v + 1,
                p_mat.rows(),
                p_mat.cols(),
                self.dims[v]
            )));
        }
        let p_inv = p_mat
            .inverse()
            .map_err(|_| DecompError::Invariant(format!("basis change at vertex {} is singular", v + 1)))?;
        for a in ARROWS {
            let (s, t) = a.endpoints();
            if s == v {
                self.maps[a as usize] = self.maps[a as usize].mul(p_mat);
            }
            if t == v {
                self.maps[a as usize] = p_inv.mul(&self.maps[a as usize]);
            }
        }
        if let Some(w) = self.witness.as_mut() {
            // lift P to the original coordinate space: identity on frozen
            // coordinates, P on the active block
            let n = w.orig_dims[v];
            let mut lift = Matrix::identity(n, self.p);
            for (i, &gi) in w.active[v].iter().enumerate() {
                for (j, &gj) in w.active[v].iter().enumerate() {
                    lift.set(gi, gj, p_mat[(i, j)]);
                }
            }
            w.basis[v] = w.basis[v].mul(&lift);
        }
        Ok(())
    }

    pub(crate) fn require_injective(&self, a: Arrow, context: &str) -> Result<(), DecompError> {
        let m = self.mat(a);
        if m.rank() != m.cols() {
            return Err(DecompError::Invariant(format!(
                "{context}: map {a:?} expected injective"
            )));
        }
        Ok(())
    }

    /// Verifies that the claimed coordinate blocks really split off as
    /// direct sums of canonical representatives, then deletes them.
    /// Returns (type, count) pairs with zero counts dropped.
    pub(crate) fn extract(&mut self, exts: Vec<Extraction>) -> Result<Vec<(usize, u64)>, DecompError> {
        let exts: Vec<Extraction> = exts.into_iter().filter(|e| e.count > 0).collect();
        let quiver = arq::clfb_ar_quiver();
        // shape checks and per-vertex disjointness
        let mut taken: [Vec<usize>; 6] = Default::default();
        for e in &exts {
            let cdims = type_dims(e.type_idx);
            for v in 0..6 {
                if e.coords[v].len() != e.count * cdims[v] {
                    return Err(DecompError::Invariant(format!(
                        "extraction of type {} expects {} coords at vertex {}, got {}",
                        e.type_idx,
                        e.count * cdims[v],
                        v + 1,
                        e.coords[v].len()
                    )));
                }
                for &c in &e.coords[v] {
                    if c >= self.dims[v] || taken[v].contains(&c) {
                        return Err(DecompError::Invariant(format!(
                            "extraction coordinate {c} at vertex {} out of range or reused",
                            v + 1
                        )));
                    }
                    taken[v].push(c);
                }
            }
        }
        let residual: [Vec<usize>; 6] = std::array::from_fn(|v| {
            (0..self.dims[v]).filter(|c| !taken[v].contains(c)).collect()
        });
        // canonical block verification, arrow by arrow
        let canon: Vec<LadderRep> = exts
            .iter()
            .map(|e| quiver.canonical_rep(e.type_idx, self.p))
            .collect();
        for a in ARROWS {
            let (s, t) = a.endpoints();
            let f = self.mat(a);
            for (ea, ca) in exts.iter().zip(&canon) {
                for eb in exts.iter() {
                    let block = f.select_rows(&ea.coords[t]).select_cols(&eb.coords[s]);
                    let expected = if std::ptr::eq(ea, eb) {
                        let arrows = ca.arrows();
                        let idx = arrows
                            .iter()
                            .position(|&(cs, ct)| (cs - 1, ct - 1) == (s, t))
                            .expect("arrow exists");
                        Matrix::identity(ea.count, self.p).kron(&ca.maps()[idx])
                    } else {
                        Matrix::zeros(ea.coords[t].len(), eb.coords[s].len(), self.p)
                    };
                    if block != expected {
                        return Err(DecompError::Invariant(format!(
                            "extracted block on {a:?} between types {} and {} is not canonical",
                            ea.type_idx, eb.type_idx
                        )));
                    }
                }
                // no leakage between extracted and residual coordinates
                if !f.select_rows(&ea.coords[t]).select_cols(&residual[s]).is_zero()
                    || !f.select_rows(&residual[t]).select_cols(&ea.coords[s]).is_zero()
                {
                    return Err(DecompError::Invariant(format!(
                        "extracted type {} does not split off along {a:?}",
                        ea.type_idx
                    )));
                }
            }
        }
        // record, then delete
        for e in &exts {
            let global_coords = self.witness.as_ref().map(|w| {
                std::array::from_fn(|v| e.coords[v].iter().map(|&c| w.active[v][c]).collect())
            });
            self.records.push(SummandRecord {
                type_idx: e.type_idx,
                count: e.count,
                global_coords,
            });
        }
        for a in ARROWS {
            let (s, t) = a.endpoints();
            self.maps[a as usize] = self.maps[a as usize]
                .select_rows(&residual[t])
                .select_cols(&residual[s]);
        }
        if let Some(w) = self.witness.as_mut() {
            for v in 0..6 {
                w.active[v] = residual[v].iter().map(|&c| w.active[v][c]).collect();
            }
        }
        for v in 0..6 {
            self.dims[v] = residual[v].len();
        }
        Ok(exts.iter().map(|e| (e.type_idx, e.count as u64)).collect())
    }

    /// The left-right flip of the ladder, applied to the whole state
    /// (including already-extracted records, whose types relabel under the
    /// quiver symmetry). An involution, so wrapping a pass in two flips
    /// runs its mirror image.
    pub(crate) fn flip(&mut self) {
        self.dims.swap(V1, V3);
        self.dims.swap(V4, V6);
        self.maps.swap(Arrow::F12 as usize, Arrow::F32 as usize);
        self.maps.swap(Arrow::F14 as usize, Arrow::F36 as usize);
        self.maps.swap(Arrow::F45 as usize, Arrow::F65 as usize);
        for r in &mut self.records {
            r.type_idx = sigma_type(r.type_idx);
            if let Some(c) = r.global_coords.as_mut() {
                c.swap(V1, V3);
                c.swap(V4, V6);
            }
        }
        if let Some(w) = self.witness.as_mut() {
            w.orig_dims.swap(V1, V3);
            w.orig_dims.swap(V4, V6);
            w.basis.swap(V1, V3);
            w.basis.swap(V4, V6);
            w.active.swap(V1, V3);
            w.active.swap(V4, V6);
        }
    }

    pub(crate) fn require_empty(&self) -> Result<(), DecompError> {
        if self.dims.iter().any(|&d| d != 0) {
            return Err(DecompError::Invariant(format!(
                "residual module is nonzero after the final stage: dims {:?}",
                self.dims
            )));
        }
        Ok(())
    }

    /// Total multiplicity per AR type across all records.
    pub(crate) fn multiplicities(&self) -> Vec<(usize, u64)> {
        let mut acc = std::collections::BTreeMap::new();
        for r in &self.records {
            *acc.entry(r.type_idx).or_insert(0u64) += r.count as u64;
        }
        acc.into_iter().collect()
    }

    /// Assembles the final per-vertex witnesses: invertible matrices W_v
    /// such that f ↦ W_t^{-1} f W_s maps the original representation onto
    /// the block direct sum of canonical representatives grouped by type
    /// in table order.
    pub(crate) fn witnesses(&self) -> Option<Vec<Matrix>> {
        let w = self.witness.as_ref()?;
        let mut order: [Vec<usize>; 6] = Default::default();
        let mut by_type: Vec<&SummandRecord> = self.records.iter().collect();
        // stable by type; extraction order breaks ties
        by_type.sort_by_key(|r| r.type_idx);
        for r in by_type {
            let coords = r.global_coords.as_ref().expect("witness coords recorded");
            for v in 0..6 {
                order[v].extend_from_slice(&coords[v]);
            }
        }
        Some(
            (0..6)
                .map(|v| {
                    debug_assert_eq!(order[v].len(), w.orig_dims[v]);
                    w.basis[v].select_cols(&order[v])
                })
                .collect(),
        )
    }
}
