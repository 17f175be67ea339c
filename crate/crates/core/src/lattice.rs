//! The intersection lattice of a central arrangement: all subspaces
//! obtainable as intersections of hyperplanes, each carrying its rank
//! (codimension) and multiplicity (how many hyperplanes contain it).

use std::collections::{BTreeSet, VecDeque};

use crate::arrangement::Arrangement;
use crate::error::Error;
use crate::linalg::Subspace;
use crate::ratio::{rat, Rat};
use crate::Result;

/// One lattice element W with its combinatorial data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub subspace: Subspace,
    /// Codimension r(W).
    pub rank: usize,
    /// Number of hyperplanes containing W, written s(W).
    pub mult: usize,
    /// Indices of those hyperplanes.
    pub hyperplanes: BTreeSet<usize>,
}

impl Flat {
    /// The ratio r(W)/s(W), the flat's contribution to the threshold
    /// minimum. Defined only for proper flats (rank ≥ 1).
    pub fn threshold_ratio(&self) -> Rat {
        assert!(self.rank >= 1, "threshold ratio of the ambient space");
        rat(self.rank as i64, self.mult as i64)
    }
}

/// All flats of a central arrangement, sorted by (rank, canonical normals).
/// The ambient space V sits first with rank 0 and multiplicity 0.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    ambient: usize,
    size: usize,
    flats: Vec<Flat>,
}

/// Closes the hyperplane subspaces under pairwise intersection by breadth
/// first search. Duplicate subspaces merge automatically because reduced
/// row echelon normals are a canonical representation.
pub fn build_lattice(arrangement: &Arrangement) -> Result<IntersectionLattice> {
    if !arrangement.is_central() {
        return Err(Error::NonCentral(
            "the intersection lattice is defined for central arrangements".into(),
        ));
    }
    let n = arrangement.ambient();
    let hyperplane_subspaces: Vec<Subspace> = arrangement
        .hyperplanes()
        .iter()
        .map(|h| Subspace::from_normals(n, vec![h.normal().to_vec()]))
        .collect::<Result<_>>()?;

    let mut discovered: BTreeSet<Subspace> = BTreeSet::new();
    let mut queue: VecDeque<Subspace> = VecDeque::new();
    discovered.insert(Subspace::full(n));
    queue.push_back(Subspace::full(n));
    while let Some(w) = queue.pop_front() {
        for h in &hyperplane_subspaces {
            let finer = w.intersect(h);
            if discovered.insert(finer.clone()) {
                queue.push_back(finer);
            }
        }
    }

    let mut flats: Vec<Flat> = discovered
        .into_iter()
        .map(|subspace| {
            let hyperplanes: BTreeSet<usize> = hyperplane_subspaces
                .iter()
                .enumerate()
                .filter_map(|(i, h)| h.contains(&subspace).then_some(i))
                .collect();
            Flat {
                rank: subspace.codim(),
                mult: hyperplanes.len(),
                hyperplanes,
                subspace,
            }
        })
        .collect();
    flats.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.subspace.cmp(&b.subspace)));
    Ok(IntersectionLattice {
        ambient: n,
        size: arrangement.size(),
        flats,
    })
}

impl IntersectionLattice {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of hyperplanes in the underlying arrangement.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Flats other than the ambient space, i.e. the actual intersections.
    pub fn proper_flats(&self) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(|f| f.rank >= 1)
    }

    pub fn find(&self, subspace: &Subspace) -> Option<&Flat> {
        self.flats.iter().find(|f| &f.subspace == subspace)
    }

    /// Proper flats whose subspace contains `w`.
    pub fn flats_through<'a>(&'a self, w: &'a Subspace) -> impl Iterator<Item = &'a Flat> {
        self.proper_flats().filter(|f| f.subspace.contains(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    fn lattice_of(a: &Arrangement) -> IntersectionLattice {
        build_lattice(a).unwrap()
    }

    #[test]
    fn pencil_lattice() {
        let l = lattice_of(&Arrangement::pencil(3).unwrap());
        // V, three lines, the origin.
        assert_eq!(l.flats().len(), 5);
        assert_eq!(l.proper_flats().count(), 4);
        let origin = l.find(&Subspace::origin(2)).unwrap();
        assert_eq!(origin.rank, 2);
        assert_eq!(origin.mult, 3);
        assert_eq!(origin.threshold_ratio(), rat(2, 3));
        let rank1: Vec<_> = l.proper_flats().filter(|f| f.rank == 1).collect();
        assert_eq!(rank1.len(), 3);
        assert!(rank1.iter().all(|f| f.mult == 1));
    }

    #[test]
    fn boolean_lattice() {
        let l = lattice_of(&Arrangement::boolean(2).unwrap());
        assert_eq!(l.flats().len(), 4);
        assert_eq!(l.find(&Subspace::origin(2)).unwrap().mult, 2);
    }

    #[test]
    fn diagonal_lattices_count_set_partitions() {
        // Flats of the diagonal arrangement correspond to set partitions.
        let l3 = lattice_of(&Arrangement::braid(3).unwrap());
        assert_eq!(l3.flats().len(), 5);
        let l4 = lattice_of(&Arrangement::braid(4).unwrap());
        assert_eq!(l4.flats().len(), 15);
        // The full diagonal of C⁴ has rank 3 and meets all 6 hyperplanes.
        let diag = Subspace::from_normals(
            4,
            vec![
                vec![int(1), int(-1), int(0), int(0)],
                vec![int(0), int(1), int(-1), int(0)],
                vec![int(0), int(0), int(1), int(-1)],
            ],
        )
        .unwrap();
        let top = l4.find(&diag).unwrap();
        assert_eq!(top.rank, 3);
        assert_eq!(top.mult, 6);
        // Rank-2 flats: four triple diagonals (mult 3) and three pairs of
        // disjoint transpositions (mult 2).
        let rank2: Vec<_> = l4.proper_flats().filter(|f| f.rank == 2).collect();
        assert_eq!(rank2.len(), 7);
        assert_eq!(rank2.iter().filter(|f| f.mult == 3).count(), 4);
        assert_eq!(rank2.iter().filter(|f| f.mult == 2).count(), 3);
    }

    #[test]
    fn generic_lattice_shape() {
        let l = lattice_of(&Arrangement::generic(3, 6, 7).unwrap());
        // V + 6 planes + C(6,2) lines + origin.
        assert_eq!(l.flats().len(), 1 + 6 + 15 + 1);
        let origin = l.find(&Subspace::origin(3)).unwrap();
        assert_eq!(origin.mult, 6);
        assert!(l
            .proper_flats()
            .filter(|f| f.rank == 2)
            .all(|f| f.mult == 2));
    }

    #[test]
    fn flats_through_walks_up() {
        let l = lattice_of(&Arrangement::pencil(3).unwrap());
        let origin = Subspace::origin(2);
        let through_origin: Vec<_> = l.flats_through(&origin).collect();
        assert_eq!(through_origin.len(), 4); // three lines and the origin
        let hyperplanes_only: Vec<_> = through_origin
            .iter()
            .filter(|f| f.rank == 1)
            .collect();
        assert_eq!(hyperplanes_only.len(), 3);
    }

    #[test]
    fn empty_and_noncentral() {
        let empty = Arrangement::parse("dim 2\n").unwrap();
        let l = lattice_of(&empty);
        assert_eq!(l.flats().len(), 1);
        assert_eq!(l.proper_flats().count(), 0);
        let affine = Arrangement::parse("dim 2\n1 0 -1\n").unwrap();
        assert!(matches!(build_lattice(&affine), Err(Error::NonCentral(_))));
    }

    #[test]
    fn hyperplane_flats_have_mult_one_each() {
        for a in [
            Arrangement::braid(4).unwrap(),
            Arrangement::generic(2, 5, 3).unwrap(),
        ] {
            let l = lattice_of(&a);
            let rank1 = l.proper_flats().filter(|f| f.rank == 1).count();
            assert_eq!(rank1, a.size());
            assert!(l
                .proper_flats()
                .filter(|f| f.rank == 1)
                .all(|f| f.mult == 1));
        }
    }
}
