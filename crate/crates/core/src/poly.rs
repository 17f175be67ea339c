//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector (structural order),
//! so a polynomial is a canonical value: equal maps ⟺ equal polynomials,
//! and iteration is deterministic. Monomial *orders* (graded reverse-lex,
//! lex, block elimination) are applied on top by the ideal engine; they are
//! comparison strategies, not storage layouts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::Covector;
use crate::ratio::{fmt_rat, Rat};
use crate::Result;

/// Exponent vector; index i is the exponent of the i-th variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Mono {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn div_into(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded reverse-lex comparison of two exponent slices.
fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    // Smaller exponent on the latest differing variable wins.
                    return if x < y { Ordering::Greater } else { Ordering::Less };
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

/// Term orders used by the ideal engine. Variables are ordered
/// x1 > x2 > … > xn throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default everywhere).
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the
    /// leading block, ties broken by grevlex on the rest. Any monomial
    /// involving an eliminated variable beats any monomial that does not.
    Elim(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match *self {
            MonomialOrder::GrevLex => grevlex_slice(&a.0, &b.0),
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elim(k) => match grevlex_slice(&a.0[..k], &b.0[..k]) {
                Ordering::Equal => grevlex_slice(&a.0[k..], &b.0[k..]),
                o => o,
            },
        }
    }
}

/// A sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::var(nvars, i), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, m: Mono, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// Σ coeffs[i]·x_i + constant.
    pub fn linear(coeffs: &Covector, constant: Rat) -> Poly {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::var(n, i), c.clone());
        }
        p.add_term(Mono::one(n), constant);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c·m`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// self · (c·m).
    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m0, c0)| (m0.mul(m), c0 * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Mono::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Splits into (degree, component) pairs, ascending by degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Poly)> {
        let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.degree())
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Minimum over all terms of the total degree in the first `r`
    /// variables; `None` for the zero polynomial.
    pub fn min_degree_in_prefix(&self, r: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.0[..r].iter().sum())
            .min()
    }

    /// Leading (monomial, coefficient) under `ord`.
    pub fn leading(&self, ord: MonomialOrder) -> Option<(&Mono, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: MonomialOrder) -> Poly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Substitutes `images[i]` for variable i. Images must share a common
    /// variable count, which becomes the result's.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(self.nvars, Poly::nvars);
        // Memoized powers, one ladder per variable.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|im| vec![Poly::one(out_vars), im.clone()])
            .collect();
        let mut power = |i: usize, e: u32| -> Poly {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&powers[i][1]);
                powers[i].push(next);
            }
            powers[i][e as usize].clone()
        };
        let mut out = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut piece = Poly::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    piece = piece.mul(&power(i, e));
                }
            }
            out = out.add(&piece);
        }
        out
    }

    /// Rewrites the polynomial in the coordinates y = F·x, i.e. substitutes
    /// x = F⁻¹·y using the change's inverse matrix.
    pub fn change_coordinates(&self, change: &crate::linalg::CoordChange) -> Poly {
        let n = self.nvars;
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let row: Covector = (0..n).map(|j| change.inverse[i][j].clone()).collect();
                Poly::linear(&row, Rat::zero())
            })
            .collect();
        self.substitute(&images)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = &v * &point[i];
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Re-embeds into nvars+1 variables with a fresh first variable
    /// (exponent 0 everywhere). Used for the elimination construction.
    pub fn prepend_var(&self) -> Poly {
        Poly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = Vec::with_capacity(m.0.len() + 1);
                    e.push(0);
                    e.extend_from_slice(&m.0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of `prepend_var`; requires degree 0 in the first variable.
    pub fn strip_front_var(&self) -> Poly {
        Poly {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert_eq!(m.0[0], 0);
                    (Mono(m.0[1..].to_vec()), c.clone())
                })
                .collect(),
        }
    }

    /// Degree in the first variable (0 means the variable is absent).
    pub fn degree_in_first_var(&self) -> u32 {
        self.terms.keys().map(|m| m.0[0]).max().unwrap_or(0)
    }

    /// Parses textual polynomial syntax: rational coefficients, variables
    /// x1..xn (x, y, z accepted as aliases when n ≤ 3), `^` powers, and
    /// optional `*` between factors.
    pub fn parse(input: &str, nvars: usize) -> Result<Poly> {
        parse_poly(input, nvars)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut sorted: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(b, a));
        for (idx, (m, c)) in sorted.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono_str = mono_string(m, self.nvars);
            if mono_str.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono_str}")?;
            } else {
                write!(f, "{}*{mono_str}", fmt_rat(&abs))?;
            }
        }
        Ok(())
    }
}

/// Display name of variable `i` among `nvars`.
pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn mono_string(m: &Mono, nvars: usize) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(nvars, i)),
            _ => parts.push(format!("{}^{e}", var_name(nvars, i))),
        }
    }
    parts.join("*")
}

/// All monomials of total degree `d` in `nvars` variables, graded
/// reverse-lex descending (the canonical column order for degree slices).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if pos + 1 == nvars {
            cur.push(left);
            out.push(Mono(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, pos + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b, a));
    out
}

// --- parsing -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str, nvars: usize) -> Result<Vec<Tok>> {
    let bytes: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut text: String = bytes[start..i].iter().collect();
            // A '/' directly followed by digits extends the literal to a
            // fraction; division is not an operator in this grammar.
            if i < bytes.len() && bytes[i] == '/' {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 {
                    text.push('/');
                    text.extend(bytes[i + 1..j].iter());
                    i = j;
                } else {
                    return Err(Error::invalid("dangling `/` in polynomial"));
                }
            }
            toks.push(Tok::Num(crate::ratio::parse_rat(&text)?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let name: String = bytes[start..i].iter().collect();
            toks.push(Tok::Var(resolve_var(&name, nvars)?));
        } else {
            match c {
                '+' => toks.push(Tok::Plus),
                '-' => toks.push(Tok::Minus),
                '*' => toks.push(Tok::Star),
                '^' => toks.push(Tok::Caret),
                _ => {
                    return Err(Error::invalid(format!(
                        "unexpected character `{c}` in polynomial"
                    )))
                }
            }
            i += 1;
        }
    }
    Ok(toks)
}

fn resolve_var(name: &str, nvars: usize) -> Result<usize> {
    let idx = match name {
        "x" if nvars <= 3 => Some(0),
        "y" if nvars <= 3 => Some(1),
        "z" if nvars <= 3 => Some(2),
        _ => name
            .strip_prefix('x')
            .and_then(|digits| digits.parse::<usize>().ok())
            .and_then(|k| k.checked_sub(1)),
    };
    match idx {
        Some(i) if i < nvars => Ok(i),
        _ => Err(Error::invalid(format!(
            "unknown variable `{name}` (ambient dimension {nvars})"
        ))),
    }
}

fn parse_poly(input: &str, nvars: usize) -> Result<Poly> {
    let toks = tokenize(input, nvars)?;
    if toks.is_empty() {
        return Err(Error::invalid("empty polynomial"));
    }
    let mut out = Poly::zero(nvars);
    let mut i = 0;
    loop {
        // Sign prefix for this term.
        let mut sign = Rat::one();
        while i < toks.len() {
            match toks[i] {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= toks.len() {
            return Err(Error::invalid("polynomial ends with an operator"));
        }
        // One term: a product of factors, `*` optional.
        let mut coeff = sign;
        let mut mono = Mono::one(nvars);
        let mut saw_factor = false;
        loop {
            match toks.get(i) {
                Some(Tok::Num(c)) => {
                    coeff = &coeff * c;
                    i += 1;
                    saw_factor = true;
                }
                Some(Tok::Var(v)) => {
                    let v = *v;
                    i += 1;
                    let mut exp: u32 = 1;
                    if toks.get(i) == Some(&Tok::Caret) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Num(e)) if e.is_integer() && !e.is_negative() => {
                                exp = u32::try_from(&e.to_integer()).map_err(|_| {
                                    Error::invalid("exponent out of range")
                                })?;
                                i += 1;
                            }
                            _ => {
                                return Err(Error::invalid(
                                    "`^` must be followed by a nonnegative integer",
                                ))
                            }
                        }
                    }
                    mono.0[v] += exp;
                    saw_factor = true;
                }
                Some(Tok::Star) => {
                    i += 1;
                    if !matches!(toks.get(i), Some(Tok::Num(_)) | Some(Tok::Var(_))) {
                        return Err(Error::invalid("`*` must be followed by a factor"));
                    }
                }
                Some(Tok::Caret) => return Err(Error::invalid("`^` must follow a variable")),
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
            }
        }
        if !saw_factor {
            return Err(Error::invalid("empty term in polynomial"));
        }
        out.add_term(mono, coeff);
        if i >= toks.len() {
            break;
        }
    }
    Ok(out)
}
