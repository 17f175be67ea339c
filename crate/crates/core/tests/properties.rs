//! Randomized invariants, checked with proptest. These pin the structural
//! guarantees the rest of the engine leans on: canonical linear algebra,
//! order properties of subspaces, closure of the lattice, presentation
//! invariance of Gröbner bases, agreement of the two membership routes,
//! and stability of the λ-side combinatorics.

use proptest::prelude::*;

use arrmult_core::arrangement::{Arrangement, Hyperplane};
use arrmult_core::ideal::{
    intersect_pair, matches_slices, truncated_intersection, Ideal,
};
use arrmult_core::lattice::build_lattice;
use arrmult_core::linalg::Subspace;
use arrmult_core::multiplier::{
    candidate_jumping_numbers, is_jumping_number, left_limit_ideal, multiplier_ideal, JumpMethod,
};
use arrmult_core::poly::{MonomialOrder, Poly};
use arrmult_core::ratio::{fmt_rat, int, parse_rat, rat, Rat};
use arrmult_core::verify::membership_trials;
use arrmult_core::EngineConfig;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn to_rats(rows: Vec<Vec<i64>>) -> Vec<Vec<Rat>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(int).collect())
        .collect()
}

fn arb_rows(ambient: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(
        proptest::collection::vec(-2..=2i64, ambient),
        0..=max_rows,
    )
}

fn arb_subspace() -> impl Strategy<Value = Subspace> {
    arb_rows(3, 3).prop_map(|rows| Subspace::from_normals(3, to_rats(rows)).unwrap())
}

fn arb_proper_subspace() -> impl Strategy<Value = Subspace> {
    arb_subspace().prop_filter("proper", |w| !w.is_full())
}

fn arb_arrangement() -> impl Strategy<Value = Arrangement> {
    (2..=3usize)
        .prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-2..=2i64, n), 1..=4)
                .prop_filter_map("distinct nonzero normals", move |rows| {
                    let hyperplanes: Option<Vec<Hyperplane>> = rows
                        .into_iter()
                        .map(|r| {
                            Hyperplane::new(
                                r.into_iter().map(int).collect(),
                                Rat::from_integer(0.into()),
                            )
                            .ok()
                        })
                        .collect();
                    Arrangement::new(n, hyperplanes?).ok()
                })
        })
        .no_shrink()
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    (1..=3usize).prop_flat_map(|n| {
        proptest::collection::vec(
            (
                proptest::collection::vec(0..=3u32, n),
                (-5..=5i64).prop_filter("nonzero", |c| *c != 0),
            ),
            0..=4,
        )
        .prop_map(move |terms| {
            let mut p = Poly::zero(n);
            for (exps, c) in terms {
                p.add_term(arrmult_core::poly::Mono(exps), int(c));
            }
            p
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // Exact rationals: parse/format round-trips and arithmetic inverts.
    #[test]
    fn rational_exactness(a in -40..=40i64, b in 1..=40i64, c in -40..=40i64, d in 1..=40i64) {
        let x = rat(a, b);
        let y = rat(c, d);
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
        prop_assert_eq!(parse_rat(&fmt_rat(&x)).unwrap(), x);
    }

    // RREF is canonical: scaling rows and permuting them changes nothing.
    #[test]
    fn subspace_presentation_invariance(
        rows in arb_rows(3, 3),
        scale in (1..=5i64).prop_map(int),
        reverse in proptest::bool::ANY,
    ) {
        let a = Subspace::from_normals(3, to_rats(rows.clone())).unwrap();
        let mut scaled: Vec<Vec<Rat>> = to_rats(rows)
            .into_iter()
            .map(|r| r.into_iter().map(|x| &x * &scale).collect())
            .collect();
        if reverse {
            scaled.reverse();
        }
        let b = Subspace::from_normals(3, scaled).unwrap();
        prop_assert_eq!(a, b);
    }

    // Containment is a partial order compatible with intersection.
    #[test]
    fn containment_partial_order(
        a in arb_subspace(),
        b in arb_subspace(),
        c in arb_subspace(),
    ) {
        prop_assert!(a.contains(&a));
        if a.contains(&b) && b.contains(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.contains(&b) && b.contains(&c) {
            prop_assert!(a.contains(&c));
        }
        let meet = a.intersect(&b);
        prop_assert!(a.contains(&meet));
        prop_assert!(b.contains(&meet));
    }

    // codim(A ∩ B) is between max(codims) and their (capped) sum.
    #[test]
    fn codim_subadditivity(a in arb_subspace(), b in arb_subspace()) {
        let meet = a.intersect(&b);
        let lo = a.codim().max(b.codim());
        let hi = (a.codim() + b.codim()).min(3);
        prop_assert!(meet.codim() >= lo);
        prop_assert!(meet.codim() <= hi);
    }

    // Polynomial text form parses back to the same polynomial.
    #[test]
    fn poly_display_parse_round_trip(p in arb_poly()) {
        let text = p.to_string();
        let back = Poly::parse(&text, p.nvars()).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The intersection lattice is closed under intersection, and every
    // flat is recovered by intersecting the hyperplanes through it.
    #[test]
    fn lattice_closure(a in arb_arrangement()) {
        let lattice = build_lattice(&a).unwrap();
        for f in lattice.flats() {
            for g in lattice.flats() {
                let meet = f.subspace.intersect(&g.subspace);
                prop_assert!(lattice.find(&meet).is_some());
            }
        }
        for f in lattice.proper_flats() {
            let mut meet = Subspace::full(a.ambient());
            for &i in &f.hyperplanes {
                let h = Subspace::from_normals(
                    a.ambient(),
                    vec![a.hyperplanes()[i].normal().to_vec()],
                ).unwrap();
                meet = meet.intersect(&h);
            }
            prop_assert_eq!(&meet, &f.subspace);
        }
    }

    // Multiplier ideals of central arrangements expand to homogeneous
    // generators, and the expansion of I(λ) sits inside Ĩ(λ)'s.
    #[test]
    fn expansion_homogeneous_and_nested(
        a in arb_arrangement(),
        p in 1..=6i64,
        q in 1..=4i64,
    ) {
        let lattice = build_lattice(&a).unwrap();
        let lambda = rat(p, q);
        let at = multiplier_ideal(&lattice, &lambda).unwrap().expand(&cfg()).unwrap();
        prop_assert!(at.is_homogeneous());
        let below = left_limit_ideal(&lattice, &lambda).unwrap().expand(&cfg()).unwrap();
        prop_assert!(below.contains_ideal(&at, &cfg()).unwrap());
    }

    // λ that is not of the form (r(W) + m)/s(W) never jumps, and its two
    // symbolic presentations agree exactly.
    #[test]
    fn non_candidates_do_not_jump(a in arb_arrangement(), p in 1..=9i64, q in 1..=7i64) {
        let lattice = build_lattice(&a).unwrap();
        let lambda = rat(p, q);
        let candidates = candidate_jumping_numbers(&lattice, &rat(9, 1)).unwrap();
        prop_assume!(!candidates.contains_key(&lambda));
        let at = multiplier_ideal(&lattice, &lambda).unwrap();
        let below = left_limit_ideal(&lattice, &lambda).unwrap();
        prop_assert!(at.same_shape(&below));
        let decision = is_jumping_number(&lattice, &lambda, JumpMethod::All, &cfg()).unwrap();
        prop_assert!(!decision.jumping);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // The reduced basis does not depend on the presentation.
    #[test]
    fn groebner_presentation_invariance(
        g1 in arb_poly(),
        g2 in arb_poly(),
        scale in (1..=7i64).prop_map(int),
    ) {
        prop_assume!(g1.nvars() == g2.nvars());
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let n = g1.nvars();
        let a = Ideal::new(n, vec![g1.clone(), g2.clone()]);
        let b = Ideal::new(n, vec![g2.scale(&scale), g1.scale(&scale)]);
        let ga = a.groebner(MonomialOrder::GrevLex, &cfg());
        let gb = b.groebner(MonomialOrder::GrevLex, &cfg());
        if let (Ok(ga), Ok(gb)) = (ga, gb) {
            prop_assert_eq!(&*ga, &*gb);
        }
    }

    // Both membership routes agree on constructed instances.
    #[test]
    fn membership_routes_agree(seed in proptest::num::u64::ANY) {
        prop_assert_eq!(membership_trials(2, seed, &cfg()).unwrap(), 2);
    }

    // Power and product build the same ideals.
    #[test]
    fn power_product_consistency(w in arb_proper_subspace(), a in 0..=2u32, b in 1..=2u32) {
        let i = Ideal::of_subspace(&w);
        let lhs = i.power(a + b);
        let rhs = i.power(a).product(&i.power(b));
        prop_assert!(lhs.equal(&rhs, &cfg()).unwrap());
    }

    // Basis-computed intersections match the degree-sliced ones.
    #[test]
    fn intersection_matches_truncation(
        w1 in arb_proper_subspace(),
        w2 in arb_proper_subspace(),
        e1 in 1..=2u32,
        e2 in 1..=2u32,
    ) {
        let i1 = Ideal::of_subspace(&w1).power(e1);
        let i2 = Ideal::of_subspace(&w2).power(e2);
        let meet = intersect_pair(&i1, &i2, &cfg()).unwrap();
        let slices = truncated_intersection(3, &[i1, i2], 4).unwrap();
        prop_assert!(matches_slices(&meet, &slices).unwrap());
    }
}
