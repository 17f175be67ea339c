//! Multiplier ideals of central hyperplane arrangements and everything
//! derived from them: log canonical thresholds, candidate and actual
//! jumping numbers, set-theoretic jumping data, and closed-form criteria
//! for special shapes.
//!
//! The central object is the combinatorial presentation
//!
//! ```text
//! I(λ) = ⋂_W  I_W^{⌊λ·s(W)⌋ − r(W) + 1}
//! ```
//!
//! over the proper flats W of the intersection lattice, where r(W) is the
//! codimension, s(W) the number of hyperplanes through W, and powers with
//! non-positive exponent are the whole ring. Replacing ⌊·⌋+1 by ⌈·⌉ gives
//! the one-sided limit Ĩ(λ) of I(t) as t approaches λ from below, and λ is
//! a jumping number exactly when the two differ.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::config::EngineConfig;
use crate::error::Error;
use crate::ideal::{
    intersect_all, matches_slices, truncated_intersection, vanishing_order_along, Ideal,
};
use crate::lattice::{Flat, IntersectionLattice};
use crate::linalg::Subspace;
use crate::ratio::{fmt_rat, int, rat, Rat};
use crate::Result;

/// Exponent of I_W in I(λ): ⌊λ·s(W)⌋ − r(W) + 1 (may be ≤ 0, meaning the
/// factor is trivial).
pub fn floor_exponent(lambda: &Rat, flat: &Flat) -> i64 {
    let scaled = lambda * int(flat.mult as i64);
    let fl = scaled.floor().to_integer().to_i64().expect("tiny exponent");
    fl - flat.rank as i64 + 1
}

/// Exponent of I_W in the one-sided limit Ĩ(λ): ⌈λ·s(W)⌉ − r(W).
pub fn ceiling_exponent(lambda: &Rat, flat: &Flat) -> i64 {
    let scaled = lambda * int(flat.mult as i64);
    let ce = scaled.ceil().to_integer().to_i64().expect("tiny exponent");
    ce - flat.rank as i64
}

/// An ideal presented as a finite intersection of powers of flat ideals.
/// This symbolic form is exact and cheap; [`FlatPowerIdeal::expand`]
/// converts it to generators when actual polynomials are needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatPowerIdeal {
    ambient: usize,
    /// (flat, exponent ≥ 1), sorted by (rank, canonical normals).
    terms: Vec<(Flat, u32)>,
}

impl FlatPowerIdeal {
    fn new(ambient: usize, mut terms: Vec<(Flat, u32)>) -> FlatPowerIdeal {
        terms.sort_by(|a, b| {
            a.0.rank
                .cmp(&b.0.rank)
                .then_with(|| a.0.subspace.cmp(&b.0.subspace))
        });
        FlatPowerIdeal { ambient, terms }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> &[(Flat, u32)] {
        &self.terms
    }

    /// True when the intersection is empty, i.e. the ideal is the whole
    /// ring.
    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }

    /// Identical symbolic presentations (same flats, same exponents).
    pub fn same_shape(&self, other: &FlatPowerIdeal) -> bool {
        self.ambient == other.ambient
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|(a, b)| a.0.subspace == b.0.subspace && a.1 == b.1)
    }

    /// Expands the symbolic intersection into polynomial generators (a
    /// reduced Gröbner basis). When the configuration carries a check
    /// degree, the result is verified degree by degree against an
    /// independent linear-algebra intersection.
    pub fn expand(&self, cfg: &EngineConfig) -> Result<Ideal> {
        let factors: Vec<Ideal> = self
            .terms
            .iter()
            .map(|(flat, e)| Ideal::of_subspace(&flat.subspace).power(*e))
            .collect();
        let result = intersect_all(self.ambient, &factors, cfg)?;
        if let Some(bound) = cfg.expand_check_degree {
            let slices = truncated_intersection(self.ambient, &factors, bound)?;
            if !matches_slices(&result, &slices)? {
                return Err(Error::CrossCheckFailed {
                    what: "intersection expansion",
                    detail: "degree-sliced linear algebra disagrees with the basis computation"
                        .into(),
                });
            }
        }
        Ok(result)
    }
}

/// The multiplier ideal I(λ) in symbolic form. Requires λ > 0.
pub fn multiplier_ideal(lattice: &IntersectionLattice, lambda: &Rat) -> Result<FlatPowerIdeal> {
    require_positive_lambda(lambda)?;
    let terms = lattice
        .proper_flats()
        .filter_map(|f| {
            let e = floor_exponent(lambda, f);
            (e >= 1).then(|| (f.clone(), e as u32))
        })
        .collect();
    Ok(FlatPowerIdeal::new(lattice.ambient(), terms))
}

/// The one-sided limit Ĩ(λ) = I(λ − ε) for all small ε > 0, in symbolic
/// form. Requires λ > 0.
pub fn left_limit_ideal(lattice: &IntersectionLattice, lambda: &Rat) -> Result<FlatPowerIdeal> {
    require_positive_lambda(lambda)?;
    let terms = lattice
        .proper_flats()
        .filter_map(|f| {
            let e = ceiling_exponent(lambda, f);
            (e >= 1).then(|| (f.clone(), e as u32))
        })
        .collect();
    Ok(FlatPowerIdeal::new(lattice.ambient(), terms))
}

fn require_positive_lambda(lambda: &Rat) -> Result<()> {
    if !lambda.is_positive() {
        return Err(Error::invalid("the parameter λ must be positive"));
    }
    Ok(())
}

/// Flats whose ideal power actually shows up in I(λ), i.e. λ ≥ r(W)/s(W).
pub fn support_flats<'a>(lattice: &'a IntersectionLattice, lambda: &Rat) -> Vec<&'a Flat> {
    lattice
        .proper_flats()
        .filter(|f| lambda >= &f.threshold_ratio())
        .collect()
}

/// The subspace-maximal elements of the support: their union is the locus
/// where I(λ) fails to be trivial.
pub fn maximal_support_flats<'a>(
    lattice: &'a IntersectionLattice,
    lambda: &Rat,
) -> Vec<&'a Flat> {
    let support = support_flats(lattice, lambda);
    support
        .iter()
        .filter(|f| {
            !support
                .iter()
                .any(|g| g.subspace != f.subspace && g.subspace.contains(&f.subspace))
        })
        .copied()
        .collect()
}

/// Log canonical threshold: the smallest jumping number, computed as the
/// minimum of r(W)/s(W) over proper flats. Returns `None` for the empty
/// arrangement (the germ is smooth; no finite threshold). The defining
/// property — I(λ) trivial strictly below the value, nontrivial at it — is
/// re-checked symbolically and a failure is reported as an engine error.
pub fn lct(lattice: &IntersectionLattice) -> Result<Option<Rat>> {
    let Some(min) = lattice
        .proper_flats()
        .map(Flat::threshold_ratio)
        .min()
    else {
        return Ok(None);
    };
    let at = multiplier_ideal(lattice, &min)?;
    let below = left_limit_ideal(lattice, &min)?;
    if at.is_trivial() || !below.is_trivial() {
        return Err(Error::CrossCheckFailed {
            what: "log canonical threshold",
            detail: format!(
                "I(λ) near λ = {} does not change triviality as required",
                fmt_rat(&min)
            ),
        });
    }
    Ok(Some(min))
}

/// A candidate witness: the flat W and the integer m ≥ 0 with
/// λ = (r(W) + m)/s(W).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub flat: Flat,
    pub m: u32,
}

/// All candidate jumping numbers in (0, max], keyed by value, each with
/// the witnesses that produce it. Every jumping number is a candidate;
/// the converse can fail.
pub fn candidate_jumping_numbers(
    lattice: &IntersectionLattice,
    max: &Rat,
) -> Result<BTreeMap<Rat, Vec<Witness>>> {
    require_positive_lambda(max)?;
    let mut out: BTreeMap<Rat, Vec<Witness>> = BTreeMap::new();
    for flat in lattice.proper_flats() {
        let mut m = 0u32;
        loop {
            let lambda = rat(flat.rank as i64 + m as i64, flat.mult as i64);
            if &lambda > max {
                break;
            }
            out.entry(lambda).or_default().push(Witness {
                flat: flat.clone(),
                m,
            });
            m += 1;
        }
    }
    Ok(out)
}

/// The witnesses placing λ among the candidates, if any.
fn witnesses_at(lattice: &IntersectionLattice, lambda: &Rat) -> Vec<Witness> {
    let mut out = Vec::new();
    for flat in lattice.proper_flats() {
        let scaled = lambda * int(flat.mult as i64);
        if scaled.denom().is_one() {
            let value = scaled.to_integer().to_i64().expect("tiny candidate index");
            if value >= flat.rank as i64 {
                out.push(Witness {
                    flat: flat.clone(),
                    m: (value - flat.rank as i64) as u32,
                });
            }
        }
    }
    out
}

/// How to decide whether a candidate actually jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpMethod {
    /// Expand I(λ) and Ĩ(λ) and compare them as ideals.
    Compare,
    /// Look for a witness (W, m) with Ĩ(λ) ⊄ I_W^{m+1}.
    Witness,
    /// Same, but Ĩ is intersected only over flats containing W.
    WitnessRestricted,
    /// Run all three and require agreement.
    All,
}

impl JumpMethod {
    pub fn parse(name: &str) -> Result<JumpMethod> {
        match name {
            "compare" => Ok(JumpMethod::Compare),
            "witness" => Ok(JumpMethod::Witness),
            "witness-restricted" => Ok(JumpMethod::WitnessRestricted),
            "all" => Ok(JumpMethod::All),
            _ => Err(Error::invalid(format!(
                "unknown method `{name}` (expected compare, witness, witness-restricted, or all)"
            ))),
        }
    }
}

/// Outcome of a jumping-number decision at one value of λ.
#[derive(Debug, Clone)]
pub struct JumpAssessment {
    pub lambda: Rat,
    pub jumping: bool,
    /// The verified witnesses, when a witness method ran (empty for the
    /// direct comparison).
    pub witnesses: Vec<Witness>,
}

/// Decides whether λ is a jumping number. Values that are not candidates
/// resolve immediately (the symbolic presentations of I(λ) and Ĩ(λ)
/// coincide); candidates are decided by the requested method, and `All`
/// reports disagreement between methods as an engine failure.
pub fn is_jumping_number(
    lattice: &IntersectionLattice,
    lambda: &Rat,
    method: JumpMethod,
    cfg: &EngineConfig,
) -> Result<JumpAssessment> {
    let at = multiplier_ideal(lattice, lambda)?;
    let below = left_limit_ideal(lattice, lambda)?;
    if at.same_shape(&below) {
        // Identical presentations: λ is not even a candidate.
        return Ok(JumpAssessment {
            lambda: lambda.clone(),
            jumping: false,
            witnesses: Vec::new(),
        });
    }
    match method {
        JumpMethod::Compare => {
            let jumping = !at.expand(cfg)?.equal(&below.expand(cfg)?, cfg)?;
            Ok(JumpAssessment {
                lambda: lambda.clone(),
                jumping,
                witnesses: Vec::new(),
            })
        }
        JumpMethod::Witness => {
            let expanded_below = below.expand(cfg)?;
            let witnesses = verify_witnesses_against(lattice, lambda, &expanded_below)?;
            Ok(JumpAssessment {
                lambda: lambda.clone(),
                jumping: !witnesses.is_empty(),
                witnesses,
            })
        }
        JumpMethod::WitnessRestricted => {
            let mut witnesses = Vec::new();
            for w in witnesses_at(lattice, lambda) {
                let restricted_terms: Vec<(Flat, u32)> = below
                    .terms()
                    .iter()
                    .filter(|(f, _)| f.subspace.contains(&w.flat.subspace))
                    .cloned()
                    .collect();
                let restricted = FlatPowerIdeal::new(lattice.ambient(), restricted_terms);
                let expanded = restricted.expand(cfg)?;
                if escapes_flat_power(&expanded, &w)? {
                    witnesses.push(w);
                }
            }
            Ok(JumpAssessment {
                lambda: lambda.clone(),
                jumping: !witnesses.is_empty(),
                witnesses,
            })
        }
        JumpMethod::All => {
            let compare = is_jumping_number(lattice, lambda, JumpMethod::Compare, cfg)?;
            let global = is_jumping_number(lattice, lambda, JumpMethod::Witness, cfg)?;
            let restricted =
                is_jumping_number(lattice, lambda, JumpMethod::WitnessRestricted, cfg)?;
            if compare.jumping != global.jumping || compare.jumping != restricted.jumping {
                return Err(Error::CrossCheckFailed {
                    what: "jumping-number decision",
                    detail: format!(
                        "methods disagree at λ = {}: compare={}, witness={}, restricted={}",
                        fmt_rat(lambda),
                        compare.jumping,
                        global.jumping,
                        restricted.jumping
                    ),
                });
            }
            // A witness verified against the full limit ideal must also be
            // verified against the restricted one (a larger ideal).
            for w in &global.witnesses {
                if !restricted
                    .witnesses
                    .iter()
                    .any(|v| v.flat.subspace == w.flat.subspace && v.m == w.m)
                {
                    return Err(Error::CrossCheckFailed {
                        what: "jumping-number decision",
                        detail: format!(
                            "witness verified globally but not in restriction at λ = {}",
                            fmt_rat(lambda)
                        ),
                    });
                }
            }
            Ok(JumpAssessment {
                lambda: lambda.clone(),
                jumping: global.jumping,
                witnesses: global.witnesses,
            })
        }
    }
}

/// Verifies which witnesses (W, m) at λ satisfy `source` ⊄ I_W^{m+1},
/// testing generator by generator through vanishing orders.
fn verify_witnesses_against(
    lattice: &IntersectionLattice,
    lambda: &Rat,
    source: &Ideal,
) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for w in witnesses_at(lattice, lambda) {
        if escapes_flat_power(source, &w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// True when some generator of `source` lies outside I_W^{m+1}, detected
/// by a vanishing order along W of at most m.
fn escapes_flat_power(source: &Ideal, w: &Witness) -> Result<bool> {
    if source.gens().is_empty() {
        // The zero ideal is contained in everything.
        return Ok(false);
    }
    for g in source.gens() {
        let order = vanishing_order_along(g, &w.flat.subspace)?;
        match order {
            Some(o) if o <= w.m => return Ok(true),
            _ => {}
        }
    }
    Ok(false)
}

/// Assesses every candidate in (0, max] and returns them in increasing
/// order. The jumping numbers are the entries with `jumping == true`.
pub fn jumping_numbers(
    lattice: &IntersectionLattice,
    max: &Rat,
    method: JumpMethod,
    cfg: &EngineConfig,
) -> Result<Vec<JumpAssessment>> {
    let mut out = Vec::new();
    for lambda in candidate_jumping_numbers(lattice, max)?.keys() {
        out.push(is_jumping_number(lattice, lambda, method, cfg)?);
    }
    Ok(out)
}

/// For every proper flat W, the smallest λ whose multiplier ideal vanishes
/// on W: the minimum of r(W′)/s(W′) over flats W′ ⊇ W. Flats are grouped
/// by that value.
pub fn set_theoretic_jumping(lattice: &IntersectionLattice) -> BTreeMap<Rat, Vec<Flat>> {
    let mut out: BTreeMap<Rat, Vec<Flat>> = BTreeMap::new();
    for flat in lattice.proper_flats() {
        let rho = lattice
            .flats_through(&flat.subspace)
            .map(|f| f.threshold_ratio())
            .min()
            .expect("a flat contains itself");
        out.entry(rho).or_default().push(flat.clone());
    }
    out
}

/// Closed form for d hyperplanes in general position in C^n and 0 < λ ≤ 1:
/// the power m^{⌊λd⌋ − n + 1} of the maximal ideal (the whole ring when the
/// exponent is not positive). Stated only for d ≥ n; rejects λ outside
/// (0, 1].
pub fn generic_closed_form(n: usize, d: usize, lambda: &Rat) -> Result<FlatPowerIdeal> {
    require_positive_lambda(lambda)?;
    if lambda > &int(1) {
        return Err(Error::invalid(
            "the general-position closed form is stated for λ ≤ 1",
        ));
    }
    if d < n {
        return Err(Error::invalid(
            "the general-position closed form requires at least n hyperplanes",
        ));
    }
    let scaled = lambda * int(d as i64);
    let e = scaled.floor().to_integer().to_i64().expect("tiny exponent") - n as i64 + 1;
    let terms = if e >= 1 {
        let origin = Flat {
            subspace: Subspace::origin(n),
            rank: n,
            mult: d,
            hyperplanes: (0..d).collect(),
        };
        vec![(origin, e as u32)]
    } else {
        Vec::new()
    };
    Ok(FlatPowerIdeal::new(n, terms))
}

/// Numeric jumping test for an essential arrangement of rank 3 at λ = j/d,
/// for j ∈ {3, 4, 5} or j = d − 1, provided j/d is not of the form
/// a/s(P) (2 ≤ a ≤ s(P) − 1) for a rank-2 flat P. Under those hypotheses
/// the answer depends only on the rank-2 multiplicities:
///
///   j = 3: jumping ⟺ 3·s(P) ≤ 2d for every rank-2 flat P
///   j = 4: jumping ⟺ 4·s(P) ≤ 3d
///   j = 5: jumping ⟺ 5·s(P) ≤ 4d
///   j = d−1: jumping ⟺ no rank-2 flat has s(P) = d − 1
pub fn rank3_fraction_is_jumping(lattice: &IntersectionLattice, j: usize) -> Result<bool> {
    if lattice.ambient() != 3 {
        return Err(Error::invalid(
            "the rank-3 criterion requires an arrangement in C^3",
        ));
    }
    let essential = lattice.proper_flats().any(|f| f.rank == 3);
    if !essential {
        return Err(Error::invalid(
            "the rank-3 criterion requires an essential arrangement (essentialize first)",
        ));
    }
    let d = lattice.size();
    let applicable_j = matches!(j, 3 | 4 | 5) || (d >= 1 && j == d - 1);
    if !applicable_j || j < 3 || j > d - 1 {
        return Err(Error::invalid(format!(
            "the criterion covers j in {{3, 4, 5, d−1}} with 3 ≤ j ≤ d−1; got j = {j}, d = {d}"
        )));
    }
    let lambda = rat(j as i64, d as i64);
    let rank2: Vec<&Flat> = lattice.proper_flats().filter(|f| f.rank == 2).collect();
    for p in &rank2 {
        for a in 2..p.mult {
            if rat(a as i64, p.mult as i64) == lambda {
                return Err(Error::invalid(format!(
                    "j/d = {} collides with a local candidate of a rank-2 flat; \
                     the criterion does not apply",
                    fmt_rat(&lambda)
                )));
            }
        }
    }
    let by_bound = |factor_num: usize, factor_den: usize| {
        rank2
            .iter()
            .all(|p| p.mult * factor_den <= factor_num * d)
    };
    let result = match j {
        3 => by_bound(2, 3),
        4 => by_bound(3, 4),
        5 => by_bound(4, 5),
        _ => rank2.iter().all(|p| p.mult != d - 1),
    };
    if matches!(j, 3 | 4 | 5) && j == d - 1 {
        let alt = rank2.iter().all(|p| p.mult != d - 1);
        debug_assert_eq!(result, alt, "overlapping criteria must agree");
    }
    Ok(result)
}

// ---------------------------------------------------------------------
// JSON views (deterministic: object keys serialize sorted).
// ---------------------------------------------------------------------

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn subspace_json(w: &Subspace) -> Value {
    json!({
        "ambient": w.ambient(),
        "dim": w.dim(),
        "normals": w
            .normals()
            .iter()
            .map(|row| row.iter().map(fmt_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn flat_json(f: &Flat) -> Value {
    json!({
        "rank": f.rank,
        "mult": f.mult,
        "hyperplanes": f.hyperplanes.iter().collect::<Vec<_>>(),
        "subspace": subspace_json(&f.subspace),
    })
}

pub fn lattice_json(l: &IntersectionLattice) -> Value {
    json!({
        "ambient": l.ambient(),
        "hyperplanes": l.size(),
        "flats": l.flats().iter().map(flat_json).collect::<Vec<_>>(),
    })
}

pub fn flat_power_json(i: &FlatPowerIdeal) -> Value {
    json!({
        "ambient": i.ambient(),
        "trivial": i.is_trivial(),
        "factors": i
            .terms()
            .iter()
            .map(|(f, e)| json!({ "flat": flat_json(f), "exponent": e }))
            .collect::<Vec<_>>(),
    })
}

pub fn ideal_json(i: &Ideal) -> Value {
    json!({
        "nvars": i.nvars(),
        "gens": i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    json!({ "flat": flat_json(&w.flat), "m": w.m })
}

pub fn assessment_json(a: &JumpAssessment) -> Value {
    json!({
        "lambda": rat_json(&a.lambda),
        "jumping": a.jumping,
        "witnesses": a.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::lattice::build_lattice;
    use crate::poly::Poly;
    use num_traits::Zero;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn lat(a: &Arrangement) -> IntersectionLattice {
        build_lattice(a).unwrap()
    }

    fn jumps_up_to_one(a: &Arrangement) -> Vec<Rat> {
        jumping_numbers(&lat(a), &int(1), JumpMethod::All, &cfg())
            .unwrap()
            .into_iter()
            .filter_map(|j| j.jumping.then_some(j.lambda))
            .collect()
    }

    #[test]
    fn concurrent_lines_threshold_and_jumps() {
        let a = Arrangement::pencil(3).unwrap();
        assert_eq!(lct(&lat(&a)).unwrap(), Some(rat(2, 3)));
        assert_eq!(jumps_up_to_one(&a), vec![rat(2, 3), int(1)]);
        let a5 = Arrangement::pencil(5).unwrap();
        assert_eq!(lct(&lat(&a5)).unwrap(), Some(rat(2, 5)));
        assert_eq!(
            jumps_up_to_one(&a5),
            vec![rat(2, 5), rat(3, 5), rat(4, 5), int(1)]
        );
    }

    #[test]
    fn coordinate_cross_jumps_only_at_one() {
        let a = Arrangement::boolean(2).unwrap();
        assert_eq!(lct(&lat(&a)).unwrap(), Some(int(1)));
        assert_eq!(jumps_up_to_one(&a), vec![int(1)]);
    }

    #[test]
    fn multiplier_ideal_shapes_for_concurrent_lines() {
        let l = lat(&Arrangement::pencil(3).unwrap());
        let at = multiplier_ideal(&l, &rat(2, 3)).unwrap();
        assert_eq!(at.terms().len(), 1);
        assert_eq!(at.terms()[0].0.rank, 2);
        assert_eq!(at.terms()[0].1, 1);
        assert!(left_limit_ideal(&l, &rat(2, 3)).unwrap().is_trivial());
        // Below the threshold everything is trivial.
        assert!(multiplier_ideal(&l, &rat(1, 2)).unwrap().is_trivial());
        let expanded = at.expand(&cfg()).unwrap();
        let maximal = Ideal::new(2, vec![
            Poly::parse("x", 2).unwrap(),
            Poly::parse("y", 2).unwrap(),
        ]);
        assert!(expanded.equal(&maximal, &cfg()).unwrap());
    }

    #[test]
    fn ideal_at_one_is_principal() {
        for a in [
            Arrangement::pencil(3).unwrap(),
            Arrangement::boolean(2).unwrap(),
            Arrangement::braid(3).unwrap(),
        ] {
            let l = lat(&a);
            let expanded = multiplier_ideal(&l, &int(1)).unwrap().expand(&cfg()).unwrap();
            let principal = Ideal::new(a.ambient(), vec![a.defining_polynomial()]);
            assert!(expanded.equal(&principal, &cfg()).unwrap(), "{a:?}");
        }
    }

    #[test]
    fn diagonal_c3_matches_its_essentialization() {
        let b = Arrangement::braid(3).unwrap();
        let (ess, _) = b.essentialize().unwrap();
        assert_eq!(lct(&lat(&b)).unwrap(), Some(rat(2, 3)));
        assert_eq!(lct(&lat(&ess)).unwrap(), Some(rat(2, 3)));
        assert_eq!(jumps_up_to_one(&b), jumps_up_to_one(&ess));
    }

    #[test]
    fn non_candidates_resolve_fast() {
        let l = lat(&Arrangement::braid(3).unwrap());
        let strict = EngineConfig::profile("strict").unwrap();
        // 17/23 is no candidate; even a tiny budget decides it.
        let a = is_jumping_number(&l, &rat(17, 23), JumpMethod::All, &strict).unwrap();
        assert!(!a.jumping);
        assert!(a.witnesses.is_empty());
    }

    #[test]
    fn witnesses_back_the_jump_at_one() {
        let l = lat(&Arrangement::pencil(3).unwrap());
        let a = is_jumping_number(&l, &int(1), JumpMethod::Witness, &cfg()).unwrap();
        assert!(a.jumping);
        // Three lines with m = 0 and the origin with m = 1 all witness it.
        assert_eq!(a.witnesses.len(), 4);
        assert!(a.witnesses.iter().any(|w| w.flat.rank == 2 && w.m == 1));
    }

    #[test]
    fn shifting_by_one_preserves_jumping() {
        let l = lat(&Arrangement::pencil(3).unwrap());
        for (lambda, expected) in [
            (rat(2, 3), true),
            (rat(5, 3), true),
            (int(1), true),
            (int(2), true),
        ] {
            let a = is_jumping_number(&l, &lambda, JumpMethod::All, &cfg()).unwrap();
            assert_eq!(a.jumping, expected, "λ = {lambda}");
        }
    }

    #[test]
    fn support_grows_with_lambda() {
        let l = lat(&Arrangement::pencil(3).unwrap());
        let at_threshold = support_flats(&l, &rat(2, 3));
        assert_eq!(at_threshold.len(), 1);
        assert_eq!(at_threshold[0].rank, 2);
        assert_eq!(maximal_support_flats(&l, &rat(2, 3)).len(), 1);
        let at_one = support_flats(&l, &int(1));
        assert_eq!(at_one.len(), 4);
        // The lines swallow the origin once they enter the support.
        let maximal = maximal_support_flats(&l, &int(1));
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|f| f.rank == 1));
    }

    #[test]
    fn set_theoretic_groups() {
        let pencil = set_theoretic_jumping(&lat(&Arrangement::pencil(3).unwrap()));
        assert_eq!(pencil.len(), 2);
        assert_eq!(pencil[&rat(2, 3)].len(), 1);
        assert_eq!(pencil[&rat(2, 3)][0].rank, 2);
        assert_eq!(pencil[&int(1)].len(), 3);
        let cross = set_theoretic_jumping(&lat(&Arrangement::boolean(2).unwrap()));
        assert_eq!(cross.len(), 1);
        assert_eq!(cross[&int(1)].len(), 3);
    }

    #[test]
    fn closed_form_for_general_position() {
        let i = generic_closed_form(2, 4, &rat(3, 4)).unwrap();
        assert_eq!(i.terms().len(), 1);
        assert_eq!(i.terms()[0].1, 2); // ⌊3⌋ − 2 + 1
        assert!(generic_closed_form(2, 4, &rat(1, 4)).unwrap().is_trivial());
        assert!(generic_closed_form(2, 4, &rat(5, 4)).is_err());
        assert!(generic_closed_form(2, 4, &Rat::zero()).is_err());
        assert!(generic_closed_form(3, 2, &rat(1, 2)).is_err());
    }

    #[test]
    fn candidates_enumerate_flat_fractions() {
        let l = lat(&Arrangement::pencil(3).unwrap());
        let c = candidate_jumping_numbers(&l, &int(1)).unwrap();
        let values: Vec<Rat> = c.keys().cloned().collect();
        assert_eq!(values, vec![rat(2, 3), int(1)]);
        // At λ = 1 both the lines (m = 0) and the origin (m = 1) testify.
        assert_eq!(c[&int(1)].len(), 4);
    }

    #[test]
    fn rank3_criterion_preconditions() {
        let pencil = lat(&Arrangement::pencil(4).unwrap());
        assert!(rank3_fraction_is_jumping(&pencil, 3).is_err()); // not C³
        let diag = lat(&Arrangement::braid(3).unwrap());
        assert!(rank3_fraction_is_jumping(&diag, 3).is_err()); // not essential
    }

    #[test]
    fn rank3_criterion_general_position() {
        let l = lat(&Arrangement::generic(3, 6, 7).unwrap());
        for j in [3, 4, 5] {
            assert!(rank3_fraction_is_jumping(&l, j).unwrap(), "j = {j}");
        }
    }

    #[test]
    fn rank3_criterion_rejects_colliding_fractions() {
        // Five planes through the z-axis plus z = 0: the axis has s = 5,
        // so 3/6 = a/s never collides but 4/6 = 2/3 does not either; take
        // the two-pencil shape where 1/2 collides instead.
        let a = Arrangement::parse("dim 3\nx\ny\nx + y\nx - y\nz\ny - z\n").unwrap();
        let l = lat(&a);
        assert!(rank3_fraction_is_jumping(&l, 3).is_err()); // 3/6 = 2/4
        assert!(rank3_fraction_is_jumping(&l, 4).is_err()); // 4/6 = 2/3
        assert!(rank3_fraction_is_jumping(&l, 5).unwrap()); // d−1 rule holds
    }

    #[test]
    fn lct_of_empty_germ_is_unbounded() {
        let empty = Arrangement::parse("dim 2\n").unwrap();
        assert_eq!(lct(&lat(&empty)).unwrap(), None);
        assert!(jumps_up_to_one(&empty).is_empty());
    }

    #[test]
    fn json_views_are_stable() {
        let l = lat(&Arrangement::boolean(2).unwrap());
        let v = lattice_json(&l);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"ambient\":2"));
        assert!(text.contains("\"flats\""));
        let a = is_jumping_number(&l, &int(1), JumpMethod::Witness, &cfg()).unwrap();
        let aj = serde_json::to_string(&assessment_json(&a)).unwrap();
        assert!(aj.contains("\"lambda\":\"1\""));
        assert!(aj.contains("\"jumping\":true"));
    }
}
