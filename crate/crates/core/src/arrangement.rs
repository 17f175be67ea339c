//! Hyperplane arrangements in C^n: input parsing, built-in families,
//! localization at a point, and essentialization.
//!
//! A hyperplane is the zero set of ℓ·x + c with ℓ ≠ 0. An arrangement is
//! *central* when every constant term is zero (all hyperplanes pass through
//! the origin); the combinatorial machinery downstream requires centrality,
//! and affine inputs reach it through [`Arrangement::localize`].

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::linalg::{rref, Covector, Subspace};
use crate::poly::Poly;
use crate::ratio::{fmt_rat, int, parse_rat, Rat};
use crate::Result;

/// Zero set of ℓ·x + c. The normal ℓ is kept in a projective canonical
/// form: first nonzero entry scaled to 1 (the constant scales along).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Covector,
    constant: Rat,
}

impl Hyperplane {
    pub fn new(normal: Covector, constant: Rat) -> Result<Hyperplane> {
        let lead = normal
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or_else(|| Error::invalid("hyperplane with zero normal vector"))?;
        let normal = normal.iter().map(|c| c / &lead).collect();
        Ok(Hyperplane {
            normal,
            constant: constant / lead,
        })
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    pub fn is_linear(&self) -> bool {
        self.constant.is_zero()
    }

    /// The defining affine form ℓ·x + c as a polynomial.
    pub fn form(&self) -> Poly {
        Poly::linear(&self.normal, self.constant.clone())
    }

    pub fn contains_point(&self, point: &[Rat]) -> bool {
        let mut acc = self.constant.clone();
        for (c, x) in self.normal.iter().zip(point) {
            acc += c * x;
        }
        acc.is_zero()
    }
}

/// A finite set of pairwise distinct hyperplanes in C^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    ambient: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Validates dimensions and rejects repeated hyperplanes (the defining
    /// polynomial must be reduced).
    pub fn new(ambient: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        if ambient == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        for h in &hyperplanes {
            if h.normal.len() != ambient {
                return Err(Error::invalid(format!(
                    "hyperplane normal has {} entries in ambient dimension {}",
                    h.normal.len(),
                    ambient
                )));
            }
        }
        for (i, a) in hyperplanes.iter().enumerate() {
            for b in hyperplanes.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::invalid(format!(
                        "repeated hyperplane {} = 0",
                        a.form()
                    )));
                }
            }
        }
        Ok(Arrangement {
            ambient,
            hyperplanes,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of hyperplanes.
    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(Hyperplane::is_linear)
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Product of the defining forms.
    pub fn defining_polynomial(&self) -> Poly {
        let mut f = Poly::one(self.ambient);
        for h in &self.hyperplanes {
            f = f.mul(&h.form());
        }
        f
    }

    /// Rank of the arrangement: codimension of the common intersection of
    /// all hyperplanes (central arrangements only).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Covector> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        rref(&mut rows)
    }

    /// Indices of the hyperplanes passing through `point`.
    pub fn vanishing_at(&self, point: &[Rat]) -> Vec<usize> {
        self.hyperplanes
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.contains_point(point).then_some(i))
            .collect()
    }

    /// Restricts to the hyperplanes through `point` and recenters there,
    /// producing a central arrangement (possibly empty, when no hyperplane
    /// passes through the point).
    pub fn localize(&self, point: &[Rat]) -> Result<Arrangement> {
        if point.len() != self.ambient {
            return Err(Error::invalid(format!(
                "point has {} coordinates in ambient dimension {}",
                point.len(),
                self.ambient
            )));
        }
        let hyperplanes = self
            .hyperplanes
            .iter()
            .filter(|h| h.contains_point(point))
            .map(|h| Hyperplane {
                normal: h.normal.clone(),
                constant: Rat::zero(),
            })
            .collect();
        Arrangement::new(self.ambient, hyperplanes)
    }

    /// Quotients a central arrangement by the common intersection T of all
    /// its hyperplanes, yielding an essential arrangement in C^rank whose
    /// combinatorics (and multiplier data) match the original. Returns the
    /// essential arrangement together with T.
    pub fn essentialize(&self) -> Result<(Arrangement, Subspace)> {
        if !self.is_central() {
            return Err(Error::NonCentral(
                "essentialization requires a central arrangement".into(),
            ));
        }
        if self.is_empty() {
            return Err(Error::invalid("cannot essentialize an empty arrangement"));
        }
        let normals: Vec<Covector> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        let center = Subspace::from_normals(self.ambient, normals)?;
        let r = center.codim();
        let change = center.adapted_basis();
        // In adapted coordinates every defining form involves only the
        // first r variables; read off those coefficients.
        let mut hyperplanes = Vec::with_capacity(self.size());
        for h in &self.hyperplanes {
            let rewritten = h.form().change_coordinates(&change);
            let mut normal = vec![Rat::zero(); r];
            for (m, c) in rewritten.terms() {
                let var = m
                    .0
                    .iter()
                    .position(|&e| e == 1)
                    .expect("linear form has single-variable terms");
                assert!(
                    var < r,
                    "defining form survives outside the essential coordinates"
                );
                normal[var] = c.clone();
            }
            hyperplanes.push(Hyperplane::new(normal, Rat::zero())?);
        }
        Ok((Arrangement::new(r, hyperplanes)?, center))
    }

    /// Parses the line-oriented text format:
    ///
    /// ```text
    /// dim 3
    /// # numeric rows: n coefficients, optional trailing constant
    /// 1 -1 0
    /// 0 1 -1 5
    /// # symbolic rows: any affine form in x, y, z (or x1..xn)
    /// x + 2y - 1
    /// ```
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut ambient: Option<usize> = None;
        let mut hyperplanes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some(n) = ambient else {
                let rest = line
                    .strip_prefix("dim")
                    .ok_or_else(|| Error::parse(lineno, "expected a `dim <n>` header line"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, "expected a `dim <n>` header line"))?;
                if n == 0 {
                    return Err(Error::parse(lineno, "ambient dimension must be at least 1"));
                }
                ambient = Some(n);
                continue;
            };
            let h = if line.chars().any(|c| c.is_ascii_alphabetic()) {
                parse_symbolic_row(line, n, lineno)?
            } else {
                parse_numeric_row(line, n, lineno)?
            };
            hyperplanes.push(h);
        }
        let ambient =
            ambient.ok_or_else(|| Error::parse(0, "missing `dim <n>` header line"))?;
        Arrangement::new(ambient, hyperplanes)
    }

    /// Serializes back to the numeric text format ([`Arrangement::parse`]
    /// round-trips it). Constants are printed only for affine arrangements.
    pub fn to_text(&self) -> String {
        let affine = !self.is_central();
        let mut out = format!("dim {}\n", self.ambient);
        for h in &self.hyperplanes {
            let mut cells: Vec<String> = h.normal.iter().map(fmt_rat).collect();
            if affine {
                cells.push(fmt_rat(&h.constant));
            }
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// The coordinate arrangement x1 ⋯ xn = 0.
    pub fn boolean(n: usize) -> Result<Arrangement> {
        let hyperplanes = (0..n)
            .map(|i| {
                let mut normal = vec![Rat::zero(); n];
                normal[i] = Rat::one();
                Hyperplane::new(normal, Rat::zero())
            })
            .collect::<Result<_>>()?;
        Arrangement::new(n.max(1), hyperplanes)
    }

    /// `s` concurrent lines through the origin of C²:
    /// x, y, x − y, x − 2y, …, x − (s−2)y.
    pub fn pencil(s: usize) -> Result<Arrangement> {
        if s == 0 {
            return Err(Error::invalid("a pencil needs at least one line"));
        }
        let mut hyperplanes = vec![Hyperplane::new(vec![Rat::one(), Rat::zero()], Rat::zero())?];
        if s >= 2 {
            hyperplanes.push(Hyperplane::new(vec![Rat::zero(), Rat::one()], Rat::zero())?);
        }
        for k in 1..=s.saturating_sub(2) {
            hyperplanes.push(Hyperplane::new(
                vec![Rat::one(), -int(k as i64)],
                Rat::zero(),
            )?);
        }
        Arrangement::new(2, hyperplanes)
    }

    /// All diagonal hyperplanes x_i = x_j, i < j, in C^n.
    pub fn braid(n: usize) -> Result<Arrangement> {
        if n < 2 {
            return Err(Error::invalid(
                "the diagonal arrangement needs ambient dimension at least 2",
            ));
        }
        let mut hyperplanes = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut normal = vec![Rat::zero(); n];
                normal[i] = Rat::one();
                normal[j] = -Rat::one();
                hyperplanes.push(Hyperplane::new(normal, Rat::zero())?);
            }
        }
        Arrangement::new(n, hyperplanes)
    }

    /// `d` hyperplanes through the origin of C^n in general position: every
    /// subset of min(d, n) normals is linearly independent. The construction
    /// draws small integer normals from a seeded generator and retries until
    /// the general-position certificate holds, so it is deterministic per
    /// seed.
    pub fn generic(n: usize, d: usize, seed: u64) -> Result<Arrangement> {
        if n == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        if d == 0 {
            return Err(Error::invalid("need at least one hyperplane"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        'attempt: for _ in 0..10_000 {
            let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(d);
            for _ in 0..d {
                let normal: Covector = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
                match Hyperplane::new(normal, Rat::zero()) {
                    Ok(h) => hyperplanes.push(h),
                    Err(_) => continue 'attempt,
                }
            }
            let arrangement = match Arrangement::new(n, hyperplanes) {
                Ok(a) => a,
                Err(_) => continue 'attempt,
            };
            if arrangement.general_position_certificate() {
                return Ok(arrangement);
            }
        }
        Err(Error::invalid(format!(
            "failed to sample {d} hyperplanes in general position in C^{n}"
        )))
    }

    /// Certifies general position: every subset of min(d, n) normals has
    /// full rank. Smaller subsets inherit independence automatically.
    pub fn general_position_certificate(&self) -> bool {
        use itertools::Itertools;
        let k = self.size().min(self.ambient);
        self.hyperplanes
            .iter()
            .combinations(k)
            .all(|subset| {
                let mut rows: Vec<Covector> =
                    subset.iter().map(|h| h.normal.clone()).collect();
                rref(&mut rows) == k
            })
    }
}

fn parse_numeric_row(line: &str, n: usize, lineno: usize) -> Result<Hyperplane> {
    let cells: Vec<&str> = line.split_whitespace().collect();
    if cells.len() != n && cells.len() != n + 1 {
        return Err(Error::parse(
            lineno,
            format!(
                "expected {n} coefficients (optionally with a trailing constant), found {}",
                cells.len()
            ),
        ));
    }
    let mut values = Vec::with_capacity(cells.len());
    for cell in &cells {
        values.push(parse_rat(cell).map_err(|e| Error::parse(lineno, e.to_string()))?);
    }
    let constant = if values.len() == n + 1 {
        values.pop().unwrap()
    } else {
        Rat::zero()
    };
    Hyperplane::new(values, constant).map_err(|e| Error::parse(lineno, e.to_string()))
}

fn parse_symbolic_row(line: &str, n: usize, lineno: usize) -> Result<Hyperplane> {
    let poly = Poly::parse(line, n).map_err(|e| Error::parse(lineno, e.to_string()))?;
    match poly.total_degree() {
        Some(1) => {}
        _ => {
            return Err(Error::parse(
                lineno,
                "a hyperplane must be defined by a form of degree exactly 1",
            ))
        }
    }
    let mut normal = vec![Rat::zero(); n];
    let mut constant = Rat::zero();
    for (m, c) in poly.terms() {
        if m.is_one() {
            constant = c.clone();
        } else {
            let var = m.0.iter().position(|&e| e == 1).unwrap();
            normal[var] = c.clone();
        }
    }
    Hyperplane::new(normal, constant).map_err(|e| Error::parse(lineno, e.to_string()))
}
