//! Sparse multivariate Laurent polynomials over `Q(z)` with weight
//! bookkeeping, linear variable substitution and exact Jacobian evaluation.
//!
//! Exponents may be negative on any variable; terms never store a zero
//! coefficient and monomials never store a zero exponent.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::CycNum;

pub type Weight = (i64, i64);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<String, i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str, exp: i64) -> Self {
        let mut m = Monomial::default();
        if exp != 0 {
            m.exps.insert(name.to_string(), exp);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, name: &str) -> i64 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (&str, i64)> {
        self.exps.iter().map(|(v, &e)| (v.as_str(), e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (v, &e) in &other.exps {
            let slot = exps.entry(v.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exps.remove(v);
            }
        }
        Monomial { exps }
    }

    pub fn inv(&self) -> Self {
        Monomial {
            exps: self.exps.iter().map(|(v, &e)| (v.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(v, &e)| (v.clone(), e * k)).collect(),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.values().any(|&e| e < 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, CycNum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightError {
    UnknownVariable(String),
    Inhomogeneous {
        term_a: Monomial,
        weight_a: Weight,
        term_b: Monomial,
        weight_b: Weight,
    },
    ZeroPolynomial,
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::UnknownVariable(v) => write!(f, "no weight assigned to variable {v}"),
            WeightError::Inhomogeneous {
                term_a,
                weight_a,
                term_b,
                weight_b,
            } => write!(
                f,
                "inhomogeneous: {term_a} has weight ({},{}) but {term_b} has ({},{})",
                weight_a.0, weight_a.1, weight_b.0, weight_b.1
            ),
            WeightError::ZeroPolynomial => write!(f, "zero polynomial has no defined weight"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    PoleAtPoint(String),
    MissingValue(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::PoleAtPoint(v) => write!(f, "pole: variable {v} vanishes at the point"),
            EvalError::MissingValue(v) => write!(f, "no value supplied for variable {v}"),
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn constant(c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::from_term(Monomial::var(name, 1), CycNum::one())
    }

    pub fn from_term(m: Monomial, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, CycNum)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// True when the polynomial is a single term; returns it.
    pub fn as_monomial(&self) -> Option<(&Monomial, &CycNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Substitutes variables by polynomials. Negative exponents are only
    /// allowed on variables whose image is a single invertible term.
    pub fn substitute(&self, images: &BTreeMap<String, LaurentPoly>) -> Self {
        let mut cache: BTreeMap<(String, i64), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = LaurentPoly::constant(c.clone());
            for (v, e) in m.exps() {
                let factor = match images.get(v) {
                    None => LaurentPoly::from_term(Monomial::var(v, e), CycNum::one()),
                    Some(img) => cache
                        .entry((v.to_string(), e))
                        .or_insert_with(|| image_power(img, e))
                        .clone(),
                };
                acc = acc.mul(&factor);
            }
            out = out.add(&acc);
        }
        out
    }

    /// The common weight of all terms under the assignment.
    pub fn weight_of(&self, wa: &WeightAssignment) -> Result<Weight, WeightError> {
        let mut seen: Option<(Monomial, Weight)> = None;
        for m in self.terms.keys() {
            let w = wa.monomial_weight(m)?;
            match &seen {
                None => seen = Some((m.clone(), w)),
                Some((m0, w0)) => {
                    if *w0 != w {
                        return Err(WeightError::Inhomogeneous {
                            term_a: m0.clone(),
                            weight_a: *w0,
                            term_b: m.clone(),
                            weight_b: w,
                        });
                    }
                }
            }
        }
        seen.map(|(_, w)| w).ok_or(WeightError::ZeroPolynomial)
    }

    pub fn is_homogeneous(&self, wa: &WeightAssignment) -> bool {
        self.is_zero() || self.weight_of(wa).is_ok()
    }

    pub fn partial_derivative(&self, var: &str) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let dm = m.mul(&Monomial::var(var, -1));
            out.add_term(dm, c.scale(&crate::rational::rat(e)));
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<String, CycNum>) -> Result<CycNum, EvalError> {
        let mut acc = CycNum::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.exps() {
                let val = point
                    .get(v)
                    .ok_or_else(|| EvalError::MissingValue(v.to_string()))?;
                if e < 0 && val.is_zero() {
                    return Err(EvalError::PoleAtPoint(v.to_string()));
                }
                term *= &val.pow(e).map_err(|_| EvalError::PoleAtPoint(v.to_string()))?;
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Variables appearing in any term, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.exps().map(|(v, _)| v.to_string()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

fn image_power(img: &LaurentPoly, e: i64) -> LaurentPoly {
    if e >= 0 {
        img.pow(e as u32)
    } else {
        let (m, c) = img
            .as_monomial()
            .expect("negative exponent requires a monomial image");
        let cinv = c.inv().expect("invertible coefficient");
        LaurentPoly::from_term(m.inv(), cinv).pow((-e) as u32)
    }
}

/// Replaces the listed variables by their images under a square matrix
/// acting on the coordinate column vector: `vars[i] -> sum_j mat[i][j] * vars[j]`.
pub fn apply_linear_substitution(
    f: &LaurentPoly,
    mat: &[Vec<CycNum>],
    vars: &[&str],
) -> LaurentPoly {
    assert_eq!(mat.len(), vars.len());
    let mut images = BTreeMap::new();
    for (i, v) in vars.iter().enumerate() {
        assert_eq!(mat[i].len(), vars.len());
        let mut img = LaurentPoly::zero();
        for (j, w) in vars.iter().enumerate() {
            img.add_term(Monomial::var(w, 1), mat[i][j].clone());
        }
        images.insert(v.to_string(), img);
    }
    f.substitute(&images)
}

/// Rank of the Jacobian of `fs` evaluated exactly at `point`.
pub fn jacobian_rank_at_point(
    fs: &[LaurentPoly],
    point: &BTreeMap<String, CycNum>,
) -> Result<usize, EvalError> {
    let mut vars: Vec<String> = Vec::new();
    for f in fs {
        vars.extend(f.variables());
    }
    vars.sort();
    vars.dedup();
    let mut rows = Vec::with_capacity(fs.len());
    for f in fs {
        let mut row = Vec::with_capacity(vars.len());
        for v in &vars {
            row.push(f.partial_derivative(v).evaluate(point)?);
        }
        rows.push(row);
    }
    Ok(crate::cycmat::CycMatrix::from_rows(rows).rank())
}

/// Per-variable weight vectors in `Z^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: BTreeMap<String, Weight>,
}

impl WeightAssignment {
    pub fn new(entries: impl IntoIterator<Item = (String, Weight)>) -> Self {
        WeightAssignment {
            weights: entries.into_iter().collect(),
        }
    }

    pub fn weight(&self, var: &str) -> Option<Weight> {
        self.weights.get(var).copied()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Result<Weight, WeightError> {
        let mut w = (0i64, 0i64);
        for (v, e) in m.exps() {
            let (a, b) = self
                .weight(v)
                .ok_or_else(|| WeightError::UnknownVariable(v.to_string()))?;
            w.0 += a * e;
            w.1 += b * e;
        }
        Ok(w)
    }

    /// The torus grading on the ambient variables: each pair of coordinates
    /// of one plane carries one unit weight, the torus characters are inert.
    pub fn torus_on_xy() -> Self {
        Self::new([
            ("x1".to_string(), (1, 0)),
            ("y1".to_string(), (1, 0)),
            ("x2".to_string(), (0, 1)),
            ("y2".to_string(), (0, 1)),
            ("t1".to_string(), (0, 0)),
            ("t2".to_string(), (0, 0)),
        ])
    }

    /// The class-group grading: inert on coordinates, unit weights on the
    /// two torus characters.
    pub fn picard_on_xy() -> Self {
        Self::new([
            ("x1".to_string(), (0, 0)),
            ("y1".to_string(), (0, 0)),
            ("x2".to_string(), (0, 0)),
            ("y2".to_string(), (0, 0)),
            ("t1".to_string(), (1, 0)),
            ("t2".to_string(), (0, 1)),
        ])
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded lexicographic display order, highest degree first.
        let mut terms: Vec<(&Monomial, &CycNum)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| a.0.cmp(b.0))
        });
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
