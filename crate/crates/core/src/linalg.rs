//! Exact rational linear algebra and canonical subspaces.
//!
//! A linear subspace W ⊆ C^n is stored by the space of linear forms
//! vanishing on it, kept in reduced row echelon form. RREF is a canonical
//! form for a row space, so two `Subspace` values are equal as sets of
//! points iff they compare equal structurally — the rest of the crate
//! dedupes and orders subspaces on that basis.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::ratio::Rat;
use crate::Result;

/// Coefficient vector of a linear form on C^n.
pub type Covector = Vec<Rat>;

/// Reduces `rows` in place to reduced row echelon form and drops zero rows.
/// Returns the rank. Pivots are 1 and are the only nonzero entries in their
/// columns; rows are ordered by pivot column.
pub fn rref(rows: &mut Vec<Covector>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

/// Reduces `v` against RREF rows; the remainder is zero iff `v` lies in
/// their row span.
fn reduce_against(rows: &[Covector], v: &Covector) -> Covector {
    let mut v = v.clone();
    for row in rows {
        let pivot = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("RREF rows are nonzero");
        if !v[pivot].is_zero() {
            let factor = v[pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let delta = &factor * r;
                *x = &*x - &delta;
            }
        }
    }
    v
}

fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// n×n identity matrix.
pub fn identity(n: usize) -> Vec<Covector> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

/// Exact inverse by Gauss–Jordan on the augmented matrix.
/// Panics on singular input; callers only invert matrices they built to be
/// invertible (adapted bases).
pub fn invert(mat: &[Covector]) -> Vec<Covector> {
    let n = mat.len();
    let mut aug: Vec<Covector> = mat
        .iter()
        .zip(identity(n))
        .map(|(row, id_row)| {
            assert_eq!(row.len(), n, "invert: matrix must be square");
            row.iter().cloned().chain(id_row).collect()
        })
        .collect();
    let rank = rref(&mut aug);
    assert_eq!(rank, n, "invert: singular matrix");
    for (i, row) in aug.iter().enumerate() {
        assert!(row[i].is_one(), "invert: singular matrix");
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Row vector times matrix.
pub fn row_times_matrix(row: &[Rat], mat: &[Covector]) -> Covector {
    let ncols = mat.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| {
            row.iter()
                .zip(mat)
                .fold(Rat::zero(), |acc, (x, mrow)| acc + x * &mrow[j])
        })
        .collect()
}

/// Basis of the column null space {v : M v = 0}, via RREF free variables.
pub fn kernel(mat: &[Covector], ncols: usize) -> Vec<Covector> {
    let mut rows = mat.to_vec();
    let rank = rref(&mut rows);
    let pivots: Vec<usize> = rows
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            v[p] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Canonical RREF basis of the intersection of two row spaces in C^N.
/// An element of both spans is λ·A where (λ, μ) annihilates the stacked
/// matrix [A; B] by left multiplication.
pub fn intersect_rowspaces(a: &[Covector], b: &[Covector], ncols: usize) -> Vec<Covector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let stacked: Vec<Covector> = a.iter().chain(b).cloned().collect();
    // Row kernel of `stacked` = column kernel of its transpose.
    let transpose: Vec<Covector> = (0..ncols)
        .map(|j| stacked.iter().map(|row| row[j].clone()).collect())
        .collect();
    let mut result: Vec<Covector> = kernel(&transpose, stacked.len())
        .into_iter()
        .map(|lam| row_times_matrix(&lam[..a.len()], a))
        .filter(|v| !is_zero_vec(v))
        .collect();
    rref(&mut result);
    result
}

/// A linear subspace of C^n, canonically presented by the RREF basis of the
/// linear forms vanishing on it. `codim` = number of stored forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ambient: usize,
    normals: Vec<Covector>,
}

impl Subspace {
    /// Builds the common zero locus of the given linear forms.
    pub fn from_normals(ambient: usize, rows: Vec<Covector>) -> Result<Subspace> {
        if ambient == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        for row in &rows {
            if row.len() != ambient {
                return Err(Error::invalid(format!(
                    "linear form has {} coefficients in ambient dimension {ambient}",
                    row.len()
                )));
            }
        }
        let mut normals = rows;
        rref(&mut normals);
        Ok(Subspace { ambient, normals })
    }

    /// The whole space V = C^n (no defining forms).
    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            normals: Vec::new(),
        }
    }

    /// The origin {0} ⊂ C^n.
    pub fn origin(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            normals: identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical defining forms (RREF rows).
    pub fn normals(&self) -> &[Covector] {
        &self.normals
    }

    pub fn codim(&self) -> usize {
        self.normals.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.normals.len()
    }

    pub fn is_full(&self) -> bool {
        self.normals.is_empty()
    }

    /// Intersection as point sets: the union of the defining forms,
    /// re-canonicalized. Mixing ambient dimensions is a caller bug.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut normals: Vec<Covector> =
            self.normals.iter().chain(&other.normals).cloned().collect();
        rref(&mut normals);
        Subspace {
            ambient: self.ambient,
            normals,
        }
    }

    /// True iff `self` ⊇ `inner` as point sets, i.e. every defining form of
    /// `self` already vanishes on `inner`.
    pub fn contains(&self, inner: &Subspace) -> bool {
        assert_eq!(self.ambient, inner.ambient, "ambient dimension mismatch");
        self.normals
            .iter()
            .all(|row| is_zero_vec(&reduce_against(&inner.normals, row)))
    }

    /// True iff the given point lies on the subspace.
    pub fn contains_point(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.ambient, "ambient dimension mismatch");
        self.normals.iter().all(|row| {
            row.iter()
                .zip(point)
                .fold(Rat::zero(), |acc, (c, x)| acc + c * x)
                .is_zero()
        })
    }

    /// A basis of the subspace itself (solutions of the defining forms).
    pub fn point_basis(&self) -> Vec<Covector> {
        if self.normals.is_empty() {
            return identity(self.ambient);
        }
        kernel(&self.normals, self.ambient)
    }

    /// An invertible change of coordinates adapted to the subspace: the
    /// first `codim` new coordinates are exactly the canonical defining
    /// forms, so the subspace becomes {y_1 = … = y_r = 0}. The remaining
    /// coordinates are the standard coordinates of the non-pivot columns.
    pub fn adapted_basis(&self) -> CoordChange {
        let n = self.ambient;
        let mut forward = self.normals.clone();
        let pivots: Vec<usize> = forward
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        for j in 0..n {
            if !pivots.contains(&j) {
                let mut unit = vec![Rat::zero(); n];
                unit[j] = Rat::one();
                forward.push(unit);
            }
        }
        let inverse = invert(&forward);
        CoordChange { forward, inverse }
    }
}

/// An invertible linear change of coordinates y = F·x.
///
/// `forward` rows are the new coordinates as linear forms in the old ones;
/// `inverse` expresses the old coordinates in the new ones (x = F⁻¹·y).
#[derive(Clone, Debug)]
pub struct CoordChange {
    pub forward: Vec<Covector>,
    pub inverse: Vec<Covector>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    fn v(xs: &[i64]) -> Covector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_canonicalizes() {
        // x - y, y - z reduce to x - z, y - z.
        let mut rows = vec![v(&[1, -1, 0]), v(&[0, 1, -1])];
        assert_eq!(rref(&mut rows), 2);
        assert_eq!(rows, vec![v(&[1, 0, -1]), v(&[0, 1, -1])]);

        // Dependent rows collapse.
        let mut rows = vec![v(&[1, 1]), v(&[2, 2])];
        assert_eq!(rref(&mut rows), 1);
        assert_eq!(rows, vec![v(&[1, 1])]);

        // Empty input: rank 0.
        let mut rows: Vec<Covector> = vec![];
        assert_eq!(rref(&mut rows), 0);
    }

    #[test]
    fn rref_scales_pivots() {
        let mut rows = vec![vec![rat(2, 3), int(4)]];
        rref(&mut rows);
        assert_eq!(rows, vec![vec![int(1), int(6)]]);
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let a = Subspace::from_normals(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap();
        let b = Subspace::from_normals(3, vec![v(&[0, 2, -2]), v(&[3, -3, 0])]).unwrap();
        let c = Subspace::from_normals(3, vec![v(&[1, 0, -1]), v(&[0, 1, -1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.codim(), 2);
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn intersect_two_planes() {
        let p1 = Subspace::from_normals(3, vec![v(&[1, -1, 0])]).unwrap();
        let p2 = Subspace::from_normals(3, vec![v(&[0, 1, -1])]).unwrap();
        let line = p1.intersect(&p2);
        assert_eq!(line.codim(), 2);
        assert_eq!(
            line,
            Subspace::from_normals(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap()
        );
        // Commutative up to canonical form.
        assert_eq!(line, p2.intersect(&p1));
    }

    #[test]
    fn containment_is_pointwise() {
        let plane = Subspace::from_normals(3, vec![v(&[1, -1, 0])]).unwrap();
        let diag = Subspace::from_normals(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap();
        let origin = Subspace::origin(3);
        assert!(plane.contains(&diag));
        assert!(!diag.contains(&plane));
        assert!(plane.contains(&origin));
        assert!(diag.contains(&origin));
        assert!(Subspace::full(3).contains(&plane));
        // Reflexive.
        assert!(plane.contains(&plane));
        // The hyperplane x = 0 contains the origin of C².
        let h = Subspace::from_normals(2, vec![v(&[1, 0])]).unwrap();
        assert!(h.contains(&Subspace::origin(2)));
    }

    #[test]
    fn codim_subadditive() {
        let p1 = Subspace::from_normals(3, vec![v(&[1, 0, 0])]).unwrap();
        let p2 = Subspace::from_normals(3, vec![v(&[1, 1, 0])]).unwrap();
        let both = p1.intersect(&p2);
        assert_eq!(both.codim(), 2); // independent normals: equality
        let same = p1.intersect(&p1);
        assert_eq!(same.codim(), 1); // dependent normals: strict
    }

    #[test]
    fn adapted_basis_cuts_out_subspace() {
        let diag = Subspace::from_normals(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap();
        let change = diag.adapted_basis();
        // First r rows are the canonical defining forms.
        assert_eq!(&change.forward[..2], diag.normals());
        // forward · inverse = identity.
        let prod: Vec<Covector> = change
            .forward
            .iter()
            .map(|row| row_times_matrix(row, &change.inverse))
            .collect();
        assert_eq!(prod, identity(3));
        // Points of the diagonal are exactly where the first two new
        // coordinates vanish: check on a spanning point.
        let p = vec![int(1), int(1), int(1)];
        for row in &change.forward[..2] {
            let val: Rat = row.iter().zip(&p).map(|(c, x)| c * x).sum();
            assert!(val.is_zero());
        }
    }

    #[test]
    fn adapted_basis_of_origin_is_identity() {
        let change = Subspace::origin(3).adapted_basis();
        assert_eq!(change.forward, identity(3));
        assert_eq!(change.inverse, identity(3));
    }

    #[test]
    fn kernel_solves() {
        // x + y + z = 0 has a 2-dimensional solution space.
        let ker = kernel(&[v(&[1, 1, 1])], 3);
        assert_eq!(ker.len(), 2);
        for sol in &ker {
            let s: Rat = sol.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rowspace_intersection() {
        // span{(1,0,0),(0,1,0)} ∩ span{(0,1,0),(0,0,1)} = span{(0,1,0)}.
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let meet = intersect_rowspaces(&a, &b, 3);
        assert_eq!(meet, vec![v(&[0, 1, 0])]);
        // Transverse planes in C^4 meet trivially.
        let a = vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])];
        let b = vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])];
        assert!(intersect_rowspaces(&a, &b, 4).is_empty());
    }

    #[test]
    fn point_basis_spans() {
        let diag = Subspace::from_normals(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap();
        let basis = diag.point_basis();
        assert_eq!(basis.len(), 1);
        assert!(diag.contains_point(&basis[0]));
    }

    #[test]
    fn bad_constructions_error() {
        assert!(Subspace::from_normals(0, vec![]).is_err());
        assert!(Subspace::from_normals(2, vec![v(&[1, 0, 0])]).is_err());
    }

    #[test]
    #[should_panic(expected = "ambient dimension mismatch")]
    fn mixing_ambient_dimensions_panics() {
        let a = Subspace::from_normals(2, vec![v(&[1, 0])]).unwrap();
        let b = Subspace::from_normals(3, vec![v(&[1, 0, 0])]).unwrap();
        let _ = a.contains(&b);
    }
}
