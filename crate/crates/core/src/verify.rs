//! Independent verification sweeps. Each runner checks one layer of the
//! machinery against a route that shares as little code as possible with
//! the primary implementation, and returns the number of assertions that
//! passed. These back both the command-line `verify` subcommand and the
//! acceptance suite.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::config::EngineConfig;
use crate::error::Error;
use crate::ideal::{matches_slices, truncated_intersection, vanishing_order_along, Ideal};
use crate::lattice::{build_lattice, IntersectionLattice};
use crate::linalg::Subspace;
use crate::multiplier::{
    candidate_jumping_numbers, generic_closed_form, is_jumping_number, maximal_support_flats,
    multiplier_ideal, JumpMethod,
};
use crate::poly::Poly;
use crate::ratio::{int, rat, Rat};
use crate::Result;

fn check(condition: bool, what: &'static str, detail: String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::CrossCheckFailed { what, detail })
    }
}

/// Sweeps a certified general-position arrangement through every candidate
/// λ ≤ 1 (and the midpoints between consecutive candidates) and matches the
/// lattice-driven multiplier ideal against the closed form: the power
/// m^{⌊λd⌋−n+1} of the maximal ideal for λ < 1, and the principal ideal (f)
/// at λ = 1 — where the closed form genuinely breaks, which is asserted
/// too.
pub fn generic_closed_form_sweep(
    n: usize,
    d: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<usize> {
    if n < 2 {
        return Err(Error::invalid(
            "the closed-form sweep needs ambient dimension at least 2",
        ));
    }
    let arrangement = Arrangement::generic(n, d, seed)?;
    check(
        arrangement.general_position_certificate(),
        "general position",
        format!("sampled arrangement (n={n}, d={d}, seed={seed}) lost its certificate"),
    )?;
    let lattice = build_lattice(&arrangement)?;
    let mut lambdas: Vec<Rat> = candidate_jumping_numbers(&lattice, &int(1))?
        .keys()
        .cloned()
        .collect();
    let midpoints: Vec<Rat> = lambdas
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / int(2))
        .collect();
    lambdas.extend(midpoints);
    lambdas.sort();
    let mut assertions = 0usize;
    for lambda in &lambdas {
        let computed = multiplier_ideal(&lattice, lambda)?.expand(cfg)?;
        if lambda < &int(1) {
            let expected = generic_closed_form(n, d, lambda)?.expand(cfg)?;
            check(
                computed.equal(&expected, cfg)?,
                "general-position closed form",
                format!("mismatch at λ = {lambda} (n={n}, d={d}, seed={seed})"),
            )?;
        } else {
            // At λ = 1 the multiplier ideal of any reduced defining
            // polynomial is the principal ideal it generates…
            let principal = Ideal::new(n, vec![arrangement.defining_polynomial()]);
            check(
                computed.equal(&principal, cfg)?,
                "multiplier ideal at λ = 1",
                format!("I(1) is not (f) for n={n}, d={d}, seed={seed}"),
            )?;
            // …and the λ < 1 closed form does NOT extend to λ = 1.
            let closed = generic_closed_form(n, d, lambda)?.expand(cfg)?;
            check(
                !computed.equal(&closed, cfg)?,
                "multiplier ideal at λ = 1",
                format!("the power of the maximal ideal unexpectedly equals I(1) (n={n}, d={d})"),
            )?;
        }
        assertions += 1;
    }
    Ok(assertions)
}

/// Runs seeded random membership trials: g ∈ I_W^k is decided once through
/// vanishing orders in adapted coordinates and once through Gröbner-basis
/// membership, with the expected answer known by construction.
pub fn membership_trials(trials: usize, seed: u64, cfg: &EngineConfig) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0usize;
    while done < trials {
        let n = rng.gen_range(2..=4usize);
        // A random proper subspace with small integer normals.
        let r = rng.gen_range(1..=n);
        let normals: Vec<Vec<Rat>> = (0..r)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let w = Subspace::from_normals(n, normals)?;
        if w.is_full() {
            continue; // all sampled rows were zero; try again
        }
        let k = rng.gen_range(1..=5u32);
        let inside = rng.gen_bool(0.5);
        let order = if inside { k } else { rng.gen_range(0..k) };
        // Product of `order` random nonzero combinations of the defining
        // forms of W, times a unit-at-the-origin factor: vanishing order
        // along W is exactly `order`.
        let forms = w.normals();
        let mut g = random_unit_factor(&mut rng, n);
        for _ in 0..order {
            g = g.mul(&random_combination(&mut rng, forms, n));
        }
        // Half the time, add a summand two steps deeper in the filtration;
        // it cannot change the vanishing order or the membership answer,
        // but it keeps the test elements from being pure products.
        if rng.gen_bool(0.5) {
            let mut deep = Poly::one(n);
            for _ in 0..(order + 2) {
                deep = deep.mul(&random_combination(&mut rng, forms, n));
            }
            g = g.add(&deep);
        }
        let expected = inside; // order ≥ k exactly when inside
        let by_order = vanishing_order_along(&g, &w)?;
        check(
            by_order == Some(order),
            "membership trials",
            format!("vanishing order {by_order:?} ≠ constructed order {order}"),
        )?;
        let by_ideal = Ideal::of_subspace(&w).power(k).member(&g, cfg)?;
        check(
            by_ideal == expected,
            "membership trials",
            format!("basis membership disagrees with construction (n={n}, k={k})"),
        )?;
        check(
            (by_order.unwrap() >= k) == by_ideal,
            "membership trials",
            "order route and basis route disagree".to_string(),
        )?;
        done += 1;
    }
    Ok(done)
}

fn random_combination(rng: &mut ChaCha8Rng, forms: &[Vec<Rat>], n: usize) -> Poly {
    loop {
        let coeffs: Vec<Rat> = (0..forms.len())
            .map(|_| int(rng.gen_range(-2..=2)))
            .collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let mut row = vec![Rat::zero(); n];
        for (c, form) in coeffs.iter().zip(forms) {
            for (entry, f) in row.iter_mut().zip(form) {
                *entry += c * f;
            }
        }
        return Poly::linear(&row, Rat::zero());
    }
}

/// 1 + (random linear form): a unit in the local ring at the origin, so it
/// never changes vanishing orders.
fn random_unit_factor(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let row: Vec<Rat> = (0..n).map(|_| int(rng.gen_range(-1..=1))).collect();
    Poly::linear(&row, Rat::one())
}

/// Expands I(λ) through the basis engine and replays the intersection
/// degree by degree with exact linear algebra up to `bound`.
pub fn truncation_check(
    lattice: &IntersectionLattice,
    lambda: &Rat,
    bound: u32,
    cfg: &EngineConfig,
) -> Result<usize> {
    let symbolic = multiplier_ideal(lattice, lambda)?;
    let expanded = symbolic.expand(cfg)?;
    let factors: Vec<Ideal> = symbolic
        .terms()
        .iter()
        .map(|(flat, e)| Ideal::of_subspace(&flat.subspace).power(*e))
        .collect();
    let slices = truncated_intersection(lattice.ambient(), &factors, bound)?;
    check(
        matches_slices(&expanded, &slices)?,
        "truncated intersection",
        format!("degree-sliced comparison fails at λ = {lambda}"),
    )?;
    Ok(slices.len())
}

/// Assesses every candidate ≤ max with all decision methods at once
/// (disagreements surface as engine errors inside the call).
pub fn methods_agreement(
    lattice: &IntersectionLattice,
    max: &Rat,
    cfg: &EngineConfig,
) -> Result<usize> {
    let mut count = 0usize;
    for lambda in candidate_jumping_numbers(lattice, max)?.keys() {
        is_jumping_number(lattice, lambda, JumpMethod::All, cfg)?;
        count += 1;
    }
    Ok(count)
}

/// Checks that the zero locus of the expanded I(λ) is the union of the
/// maximal support flats: generators vanish on every support flat, and on
/// each non-support flat some generator survives at a sample point.
pub fn support_points_check(
    lattice: &IntersectionLattice,
    lambda: &Rat,
    cfg: &EngineConfig,
) -> Result<usize> {
    let expanded = multiplier_ideal(lattice, lambda)?.expand(cfg)?;
    let maximal = maximal_support_flats(lattice, lambda);
    let mut assertions = 0usize;
    for flat in lattice.proper_flats() {
        let in_support = lambda >= &flat.threshold_ratio();
        let basis = flat.subspace.point_basis();
        if basis.is_empty() {
            // The origin: non-trivially supported there exactly when some
            // support flat exists at all.
            let vanish = expanded
                .gens()
                .iter()
                .all(|g| g.eval(&vec![Rat::zero(); lattice.ambient()]).is_zero());
            let covered = !maximal.is_empty();
            check(
                vanish == covered,
                "support locus",
                format!("origin coverage mismatch at λ = {lambda}"),
            )?;
            assertions += 1;
            continue;
        }
        // Sample points t ↦ Σ t^i b_i for a few values of t; a flat inside
        // the zero locus keeps all generators at zero everywhere.
        let mut vanish_everywhere = true;
        for t in 1..=3i64 {
            let mut point = vec![Rat::zero(); lattice.ambient()];
            let mut scale = Rat::one();
            for b in &basis {
                for (p, c) in point.iter_mut().zip(b) {
                    *p += &scale * c;
                }
                scale *= int(t);
            }
            let vanishes = expanded.gens().iter().all(|g| g.eval(&point).is_zero());
            if !vanishes {
                vanish_everywhere = false;
                break;
            }
        }
        let covered = in_support
            || maximal
                .iter()
                .any(|m| m.subspace.contains(&flat.subspace));
        check(
            vanish_everywhere == covered,
            "support locus",
            format!(
                "flat of rank {} at λ = {lambda}: sampled vanishing = {vanish_everywhere}, \
                 combinatorial support = {covered}",
                flat.rank
            ),
        )?;
        assertions += 1;
    }
    Ok(assertions)
}

/// Convenience bundle used by the command-line `verify` subcommand when no
/// specific oracle is named: a small instance of each sweep.
pub fn standard_bundle(seed: u64, cfg: &EngineConfig) -> Result<usize> {
    let mut total = 0usize;
    total += generic_closed_form_sweep(2, 4, seed, cfg)?;
    total += membership_trials(25, seed, cfg)?;
    let pencil = build_lattice(&Arrangement::pencil(4)?)?;
    total += truncation_check(&pencil, &rat(3, 4), 6, cfg)?;
    total += methods_agreement(&pencil, &int(1), cfg)?;
    total += support_points_check(&pencil, &rat(3, 4), cfg)?;
    Ok(total)
}
