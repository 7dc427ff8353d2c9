//! Representations of commutative ladders: dimension vectors, structure
//! maps, commutativity validation, direct sums, and seeded random instance
//! generation with a planted decomposition.
//!
//! Vertices of a length-`n` ladder are numbered 1..n along the bottom row
//! and n+1..2n along the top row; the map along the arrow from vertex `i`
//! to vertex `j` is called `f_ij`. For the length-3 ladder `fb` the arrows
//! are f12, f32 (bottom), f45, f65 (top), and f14, f25, f36 (vertical).
//! Dimension vectors are always serialized bottom row first.

use crate::arq;
use crate::exactla::{is_prime, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

/// Arrow direction in one row of the ladder: `f` points rightward
/// (i -> i+1), `b` leftward (i+1 -> i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrowDir {
    Forward,
    Backward,
}

/// The orientation word of a ladder: one symbol per horizontal edge,
/// shared by the top and bottom rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation(Vec<ArrowDir>);

impl Orientation {
    pub fn new(dirs: Vec<ArrowDir>) -> Result<Self, LadderError> {
        if dirs.is_empty() {
            return Err(LadderError::EmptyOrientation);
        }
        Ok(Orientation(dirs))
    }

    /// Parses words like "fb", "f", "fff".
    pub fn parse(s: &str) -> Result<Self, LadderError> {
        let dirs = s
            .chars()
            .map(|c| match c {
                'f' => Ok(ArrowDir::Forward),
                'b' => Ok(ArrowDir::Backward),
                other => Err(LadderError::BadOrientationSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Orientation::new(dirs)
    }

    pub fn fb() -> Self {
        Orientation(vec![ArrowDir::Forward, ArrowDir::Backward])
    }

    /// Number of vertices per row.
    pub fn length(&self) -> usize {
        self.0.len() + 1
    }

    pub fn dirs(&self) -> &[ArrowDir] {
        &self.0
    }

    pub fn is_fb(&self) -> bool {
        self.0 == [ArrowDir::Forward, ArrowDir::Backward]
    }

    /// Arrows of the commutative ladder as 1-based vertex pairs (src, tgt):
    /// bottom-row arrows, top-row arrows, then verticals i -> n+i.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.length();
        let mut out = Vec::with_capacity(3 * n - 2);
        for (i, d) in self.0.iter().enumerate() {
            let (a, b) = (i + 1, i + 2);
            match d {
                ArrowDir::Forward => out.push((a, b)),
                ArrowDir::Backward => out.push((b, a)),
            }
        }
        for (i, d) in self.0.iter().enumerate() {
            let (a, b) = (n + i + 1, n + i + 2);
            match d {
                ArrowDir::Forward => out.push((a, b)),
                ArrowDir::Backward => out.push((b, a)),
            }
        }
        for i in 1..=n {
            out.push((i, n + i));
        }
        out
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for d in &self.0 {
            write!(f, "{}", if *d == ArrowDir::Forward { 'f' } else { 'b' })?;
        }
        Ok(())
    }
}

/// Per-vertex dimensions, bottom row first: ⟨d1,...,dn,d(n+1),...,d(2n)⟩.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.0.len(), other.0.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|d| d * k).collect())
    }

    pub fn zero(len: usize) -> DimVector {
        DimVector(vec![0; len])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("orientation must have at least one arrow")]
    EmptyOrientation,
    #[error("orientation symbol {0:?} is not 'f' or 'b'")]
    BadOrientationSymbol(char),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("map f{src}{tgt} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    MapShape {
        src: usize,
        tgt: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("wrong number of maps: got {got}, expected {want}")]
    MapCount { got: usize, want: usize },
    #[error("dimension vector has length {got}, expected {want}")]
    DimsLength { got: usize, want: usize },
    #[error(
        "commutativity fails on square ({a},{b},{c},{d}): \
         path via {b} gives {via_b:?}, path via {d} gives {via_d:?}"
    )]
    SquareViolation {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        via_b: Vec<u64>,
        via_d: Vec<u64>,
    },
    #[error("operands differ in orientation or field")]
    Incompatible,
    #[error("unknown quiver vertex {0}")]
    UnknownVertex(String),
    #[error("mixed moduli in maps")]
    MixedModuli,
}

/// A representation of the commutative ladder CL(orientation) over GF(p):
/// a dimension per vertex and one matrix per arrow, shape-checked on
/// construction. Commutativity is checked by [`LadderRep::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRep {
    orientation: Orientation,
    modulus: u64,
    dims: Vec<usize>,
    /// One matrix per arrow, in the order of `Orientation::arrows`.
    maps: Vec<Matrix>,
}

impl LadderRep {
    pub fn new(
        orientation: Orientation,
        modulus: u64,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, LadderError> {
        if !is_prime(modulus) {
            return Err(LadderError::NotPrime(modulus));
        }
        let n2 = 2 * orientation.length();
        if dims.len() != n2 {
            return Err(LadderError::DimsLength {
                got: dims.len(),
                want: n2,
            });
        }
        let arrows = orientation.arrows();
        if maps.len() != arrows.len() {
            return Err(LadderError::MapCount {
                got: maps.len(),
                want: arrows.len(),
            });
        }
        for (m, &(src, tgt)) in maps.iter().zip(&arrows) {
            if m.modulus() != modulus {
                return Err(LadderError::MixedModuli);
            }
            if m.rows() != dims[tgt - 1] || m.cols() != dims[src - 1] {
                return Err(LadderError::MapShape {
                    src,
                    tgt,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: dims[tgt - 1],
                    want_cols: dims[src - 1],
                });
            }
        }
        Ok(LadderRep {
            orientation,
            modulus,
            dims,
            maps,
        })
    }

    /// The zero representation with the given dimensions.
    pub fn zero(orientation: Orientation, modulus: u64, dims: Vec<usize>) -> Self {
        let arrows = orientation.arrows();
        let maps = arrows
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t - 1], dims[s - 1], modulus))
            .collect();
        LadderRep::new(orientation, modulus, dims, maps).expect("zero rep is shape-consistent")
    }

    /// Convenience constructor for the length-3 `fb` ladder. Maps are given
    /// in the fixed order f12, f32, f14, f36, f25, f45, f65.
    pub fn new_fb(
        modulus: u64,
        dims: [usize; 6],
        f12: Matrix,
        f32: Matrix,
        f14: Matrix,
        f36: Matrix,
        f25: Matrix,
        f45: Matrix,
        f65: Matrix,
    ) -> Result<Self, LadderError> {
        // Orientation::arrows for fb yields: (1,2), (3,2), (4,5), (6,5),
        // (1,4), (2,5), (3,6).
        LadderRep::new(
            Orientation::fb(),
            modulus,
            dims.to_vec(),
            vec![f12, f32, f45, f65, f14, f25, f36],
        )
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex - 1]
    }

    pub fn dimension_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.orientation.arrows()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// The matrix on the arrow src -> tgt; panics if no such arrow exists.
    pub fn map(&self, src: usize, tgt: usize) -> &Matrix {
        let arrows = self.orientation.arrows();
        let idx = arrows
            .iter()
            .position(|&a| a == (src, tgt))
            .unwrap_or_else(|| panic!("no arrow {src} -> {tgt}"));
        &self.maps[idx]
    }

    /// Commutativity check. Every square of the ladder must commute
    /// exactly; the first violated square is reported together with both
    /// composite matrices.
    pub fn validate(&self) -> Result<(), LadderError> {
        let n = self.orientation.length();
        for (i, d) in self.orientation.dirs().iter().enumerate() {
            // Horizontal edge between columns i+1 and i+2; vertical maps go
            // bottom -> top. For a forward arrow the square is
            //   (i+1) -> (i+2) -> (n+i+2)  vs  (i+1) -> (n+i+1) -> (n+i+2),
            // for a backward arrow source and sink swap columns.
            let (lo_src, lo_tgt) = match d {
                ArrowDir::Forward => (i + 1, i + 2),
                ArrowDir::Backward => (i + 2, i + 1),
            };
            let (hi_src, hi_tgt) = (n + lo_src, n + lo_tgt);
            let via_bottom = self.map(lo_src, lo_tgt); // bottom then up
            let up_at_tgt = self.map(lo_tgt, hi_tgt);
            let up_at_src = self.map(lo_src, hi_src);
            let via_top = self.map(hi_src, hi_tgt);
            let lhs = up_at_tgt.mul(via_bottom);
            let rhs = via_top.mul(up_at_src);
            if lhs != rhs {
                return Err(LadderError::SquareViolation {
                    a: lo_src,
                    b: lo_tgt,
                    c: hi_tgt,
                    d: hi_src,
                    via_b: lhs.entries().to_vec(),
                    via_d: rhs.entries().to_vec(),
                });
            }
        }
        Ok(())
    }

    /// Componentwise direct sum: dimensions add and every structure map is
    /// the block diagonal of the summands' maps.
    pub fn direct_sum(&self, other: &LadderRep) -> Result<LadderRep, LadderError> {
        if self.orientation != other.orientation || self.modulus != other.modulus {
            return Err(LadderError::Incompatible);
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps: Vec<Matrix> = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        LadderRep::new(self.orientation.clone(), self.modulus, dims, maps)
    }

    /// Applies an invertible change of basis per vertex: the map on arrow
    /// i -> j becomes T_j^{ -1} . f . T_i. The result is isomorphic to the
    /// input, and validity is preserved.
    pub fn conjugate(&self, basis: &[Matrix]) -> Result<LadderRep, LadderError> {
        assert_eq!(basis.len(), self.dims.len(), "one basis matrix per vertex");
        let inverses: Vec<Matrix> = basis
            .iter()
            .map(|t| t.inverse().expect("basis change must be invertible"))
            .collect();
        let arrows = self.orientation.arrows();
        let maps: Vec<Matrix> = self
            .maps
            .iter()
            .zip(&arrows)
            .map(|(f, &(s, t))| inverses[t - 1].mul(f).mul(&basis[s - 1]))
            .collect();
        LadderRep::new(self.orientation.clone(), self.modulus, self.dims.clone(), maps)
    }

    /// The left-right flip of an `fb` representation: vertices 1<->3 and
    /// 4<->6 swap, f12<->f32, f14<->f36, f45<->f65. This is again a valid
    /// `fb` representation.
    pub fn flip_fb(&self) -> LadderRep {
        assert!(self.orientation.is_fb(), "flip is defined for fb ladders");
        let d = &self.dims;
        let dims = [d[2], d[1], d[0], d[5], d[4], d[3]];
        LadderRep::new_fb(
            self.modulus,
            dims,
            self.map(3, 2).clone(),
            self.map(1, 2).clone(),
            self.map(3, 6).clone(),
            self.map(1, 4).clone(),
            self.map(2, 5).clone(),
            self.map(6, 5).clone(),
            self.map(4, 5).clone(),
        )
        .expect("flip preserves shape consistency")
    }
}

/// Draws a uniformly seeded invertible matrix by rejection sampling;
/// over GF(p >= 2) the expected number of retries is a small constant.
pub fn random_invertible(n: usize, p: u64, rng: &mut ChaCha20Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, p, |_, _| rng.gen_range(0..p));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Builds the direct sum of canonical indecomposables of CL(fb) selected by
/// `multiplicities` (pairs of AR-quiver dimension vector and count), then
/// hides the block structure behind a seeded random change of basis at
/// every vertex. Returns the representation together with the planted
/// diagram, which the decomposition algorithms must reproduce.
pub fn random_cocktail(
    multiplicities: &[(DimVector, usize)],
    p: u64,
    seed: u64,
) -> Result<(LadderRep, arq::PersistenceDiagram), LadderError> {
    let quiver = arq::clfb_ar_quiver();
    let mut rep = LadderRep::zero(Orientation::fb(), p, vec![0; 6]);
    let mut diagram = arq::PersistenceDiagram::empty(quiver.shape().clone());
    for (dimvec, count) in multiplicities {
        let vertex = quiver
            .vertex_by_dims(dimvec)
            .ok_or_else(|| LadderError::UnknownVertex(dimvec.to_string()))?;
        let canonical = quiver.canonical_rep(vertex, p);
        for _ in 0..*count {
            rep = rep.direct_sum(&canonical)?;
        }
        if *count > 0 {
            diagram.add(vertex, *count as u64);
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let basis: Vec<Matrix> = rep
        .dims()
        .iter()
        .map(|&d| random_invertible(d, p, &mut rng))
        .collect();
    let rep = rep.conjugate(&basis)?;
    debug_assert!(rep.validate().is_ok());
    Ok((rep, diagram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arq;

    fn eq8_rep(p: u64) -> LadderRep {
        // the non-thin indecomposable <1,2,1,1,1,1>
        LadderRep::new_fb(
            p,
            [1, 2, 1, 1, 1, 1],
            Matrix::from_rows(2, 1, &[1, 0], p),
            Matrix::from_rows(2, 1, &[0, 1], p),
            Matrix::identity(1, p),
            Matrix::identity(1, p),
            Matrix::from_rows(1, 2, &[1, 1], p),
            Matrix::identity(1, p),
            Matrix::identity(1, p),
        )
        .unwrap()
    }

    fn eq9_rep(p: u64) -> LadderRep {
        // the non-thin indecomposable <0,1,0,1,2,1>
        LadderRep::new_fb(
            p,
            [0, 1, 0, 1, 2, 1],
            Matrix::zeros(1, 0, p),
            Matrix::zeros(1, 0, p),
            Matrix::zeros(1, 0, p),
            Matrix::zeros(1, 0, p),
            Matrix::from_rows(2, 1, &[1, 1], p),
            Matrix::from_rows(2, 1, &[1, 0], p),
            Matrix::from_rows(2, 1, &[0, 1], p),
        )
        .unwrap()
    }

    #[test]
    fn zero_rep_validates() {
        for dims in [[0usize; 6], [2, 3, 1, 0, 4, 2]] {
            let rep = LadderRep::zero(Orientation::fb(), 5, dims.to_vec());
            assert!(rep.validate().is_ok());
        }
    }

    #[test]
    fn eq8_validates_and_has_expected_dims() {
        let rep = eq8_rep(2);
        assert!(rep.validate().is_ok());
        assert_eq!(rep.dimension_vector(), DimVector(vec![1, 2, 1, 1, 1, 1]));
    }

    #[test]
    fn eq9_dimension_vector() {
        let rep = eq9_rep(3);
        assert!(rep.validate().is_ok());
        assert_eq!(rep.dimension_vector(), DimVector(vec![0, 1, 0, 1, 2, 1]));
    }

    #[test]
    fn eq8_with_broken_f25_reports_right_square() {
        let p = 5;
        let rep = LadderRep::new_fb(
            p,
            [1, 2, 1, 1, 1, 1],
            Matrix::from_rows(2, 1, &[1, 0], p),
            Matrix::from_rows(2, 1, &[0, 1], p),
            Matrix::identity(1, p),
            Matrix::identity(1, p),
            Matrix::from_rows(1, 2, &[1, 0], p), // breaks the (3,2,5,6) square
            Matrix::identity(1, p),
            Matrix::identity(1, p),
        )
        .unwrap();
        match rep.validate() {
            Err(LadderError::SquareViolation { a, b, c, d, .. }) => {
                assert_eq!((a, b, c, d), (3, 2, 5, 6));
            }
            other => panic!("expected square violation, got {other:?}"),
        }
    }

    #[test]
    fn direct_sum_adds_dims_and_validates() {
        let a = eq8_rep(7);
        let b = eq9_rep(7);
        let s = a.direct_sum(&b).unwrap();
        assert!(s.validate().is_ok());
        assert_eq!(s.dimension_vector(), DimVector(vec![1, 3, 1, 2, 3, 2]));
    }

    #[test]
    fn direct_sum_with_zero_keeps_dims() {
        let a = eq8_rep(2);
        let z = LadderRep::zero(Orientation::fb(), 2, vec![0; 6]);
        let s = a.direct_sum(&z).unwrap();
        assert_eq!(s.dimension_vector(), a.dimension_vector());
    }

    #[test]
    fn thin_direct_sum_dims() {
        let p = 2;
        let quiver = arq::clfb_ar_quiver();
        let a = quiver.canonical_rep(quiver.vertex_by_dims(&DimVector(vec![1, 1, 0, 0, 0, 0])).unwrap(), p);
        let b = quiver.canonical_rep(quiver.vertex_by_dims(&DimVector(vec![0, 0, 1, 1, 0, 0])).unwrap(), p);
        // <1,1,0,0,0,0> + <0,0,1,1,0,0> -- the two thin reps are disjoint
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.dimension_vector(), DimVector(vec![1, 1, 1, 1, 0, 0]));
        assert!(s.validate().is_ok());
    }

    #[test]
    fn conjugation_preserves_validity() {
        let rep = eq8_rep(5).direct_sum(&eq9_rep(5)).unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(42);
        let basis: Vec<Matrix> = rep
            .dims()
            .iter()
            .map(|&d| random_invertible(d, 5, &mut rng))
            .collect();
        let conj = rep.conjugate(&basis).unwrap();
        assert!(conj.validate().is_ok());
        assert_eq!(conj.dimension_vector(), rep.dimension_vector());
    }

    #[test]
    fn cocktail_empty_is_zero() {
        let (rep, diagram) = random_cocktail(&[], 2, 0).unwrap();
        assert_eq!(rep.dimension_vector(), DimVector(vec![0; 6]));
        assert!(diagram.is_empty());
    }

    #[test]
    fn cocktail_full_times_five() {
        let full = DimVector(vec![1, 1, 1, 1, 1, 1]);
        let (rep, diagram) = random_cocktail(&[(full.clone(), 5)], 2, 0).unwrap();
        assert_eq!(rep.dimension_vector(), DimVector(vec![5; 6]));
        assert!(rep.validate().is_ok());
        assert_eq!(diagram.total_multiplicity(), 5);
        let quiver = arq::clfb_ar_quiver();
        let v = quiver.vertex_by_dims(&full).unwrap();
        assert_eq!(diagram.multiplicity(v), 5);
    }

    #[test]
    fn cocktail_mixed_dims() {
        let (rep, _) = random_cocktail(
            &[
                (DimVector(vec![1, 2, 1, 1, 1, 1]), 2),
                (DimVector(vec![0, 1, 0, 1, 2, 1]), 1),
            ],
            5,
            7,
        )
        .unwrap();
        assert_eq!(rep.dimension_vector(), DimVector(vec![2, 5, 2, 3, 4, 3]));
        assert!(rep.validate().is_ok());
    }

    #[test]
    fn cocktail_unknown_vertex_errors() {
        let bogus = DimVector(vec![9, 9, 9, 9, 9, 9]);
        assert!(matches!(
            random_cocktail(&[(bogus, 1)], 2, 0),
            Err(LadderError::UnknownVertex(_))
        ));
    }

    #[test]
    fn cocktail_is_deterministic_under_seed() {
        let plant = vec![(DimVector(vec![1, 1, 1, 1, 1, 1]), 2)];
        let (a, _) = random_cocktail(&plant, 5, 123).unwrap();
        let (b, _) = random_cocktail(&plant, 5, 123).unwrap();
        assert_eq!(a, b);
        let (c, _) = random_cocktail(&plant, 5, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn flip_is_involution_and_valid() {
        let rep = eq8_rep(3).direct_sum(&eq9_rep(3)).unwrap();
        let flipped = rep.flip_fb();
        assert!(flipped.validate().is_ok());
        assert_eq!(flipped.flip_fb(), rep);
    }
}
