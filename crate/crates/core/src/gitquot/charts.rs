//! Invariant charts: ambient invariants of a localisation as Hilbert-basis
//! lifts, exact expressibility of invariants in the four chart coordinates,
//! and rational-function Jacobians for smoothness certificates.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::DegreeTable;
use crate::cycmat::{CycMatrix, SolveOutcome};
use crate::cyclotomic::CycNum;
use crate::poly::{LaurentPoly, Monomial};

/// One chart of the stable locus: localising monomial, four coordinates as
/// Laurent monomials in the ring generators, and free-text notes recording
/// any normalisation applied to the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSeed {
    pub index: usize,
    pub support: Monomial,
    pub coords: Vec<Monomial>,
    pub notes: Vec<String>,
}

impl ChartSeed {
    pub fn support_names(&self) -> Vec<String> {
        self.support.exps().map(|(v, _)| v.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartError {
    SupportNotUnimodular,
    CoordinateNotDegreeZero { coord: Monomial, pic: (i64, i64) },
    NoWeightMatch,
    AnsatzExhausted { cap: i64 },
    SystemInconsistent,
    Pole,
}

impl fmt::Display for ChartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartError::SupportNotUnimodular => {
                write!(f, "support weights do not form a unimodular pair")
            }
            ChartError::CoordinateNotDegreeZero { coord, pic } => {
                write!(f, "chart coordinate {coord} has class degree ({},{})", pic.0, pic.1)
            }
            ChartError::NoWeightMatch => write!(f, "no exponent tuple matches the torus weight"),
            ChartError::AnsatzExhausted { cap } => {
                write!(f, "no expression found with total degree <= {cap}")
            }
            ChartError::SystemInconsistent => {
                write!(f, "linear system certifies the ansatz inconsistent")
            }
            ChartError::Pole => write!(f, "denominator vanishes at the evaluation point"),
        }
    }
}

/// Hilbert-basis generators of the degree-zero monomials of the
/// localisation: exponents nonnegative outside the support, class degree
/// zero. When the two support weights form a unimodular pair the semigroup
/// is free on one lift per non-support generator.
pub fn chart_ambient_invariants(
    chart: &ChartSeed,
    degrees: &DegreeTable,
) -> Result<Vec<Monomial>, ChartError> {
    let support = chart.support_names();
    if support.len() == 2 {
        let s0 = &support[0];
        let s1 = &support[1];
        let p0 = degrees.pic(s0).expect("known support");
        let p1 = degrees.pic(s1).expect("known support");
        let det = p0.0 * p1.1 - p0.1 * p1.0;
        if det.abs() == 1 {
            let mut out = Vec::new();
            for g in degrees.names() {
                if g == s0 || g == s1 {
                    continue;
                }
                let pg = degrees.pic(g).expect("known generator");
                // Solve pg + a*p0 + b*p1 = 0 by Cramer.
                let a = (-pg.0 * p1.1 + pg.1 * p1.0) / det;
                let b = (-p0.0 * pg.1 + p0.1 * pg.0) / det;
                debug_assert_eq!(pg.0 + a * p0.0 + b * p1.0, 0);
                debug_assert_eq!(pg.1 + a * p0.1 + b * p1.1, 0);
                let m = Monomial::var(g, 1)
                    .mul(&Monomial::var(s0, a))
                    .mul(&Monomial::var(s1, b));
                out.push(m);
            }
            return Ok(out);
        }
        return Err(ChartError::SupportNotUnimodular);
    }
    // Degenerate supports (for instance the trivial localisation): bounded
    // search for irreducible degree-zero monomials up to a total degree cap.
    let cap = 6i64;
    let mut found: Vec<Monomial> = Vec::new();
    let names = degrees.names().to_vec();
    let mut stack: Vec<(usize, Monomial, (i64, i64), i64)> =
        alloc::vec![(0, Monomial::one(), (0, 0), 0)];
    while let Some((idx, mono, pic, deg)) = stack.pop() {
        if pic == (0, 0) && !mono.is_one() {
            found.push(mono.clone());
        }
        if idx == names.len() || deg == cap {
            continue;
        }
        stack.push((idx + 1, mono.clone(), pic, deg));
        let g = &names[idx];
        if support.contains(g) {
            continue;
        }
        let pg = degrees.pic(g).expect("known generator");
        stack.push((
            idx,
            mono.mul(&Monomial::var(g, 1)),
            (pic.0 + pg.0, pic.1 + pg.1),
            deg + 1,
        ));
    }
    found.sort();
    found.dedup();
    // Keep only monomials that are not products of two smaller ones.
    let irreducible: Vec<Monomial> = found
        .iter()
        .filter(|m| {
            !found.iter().any(|a| {
                if a == *m {
                    return false;
                }
                let quotient = m.mul(&a.inv());
                !quotient.is_one() && found.contains(&quotient)
            })
        })
        .cloned()
        .collect();
    Ok(irreducible)
}

/// A Laurent monomial in the ring generators, split into numerator and
/// denominator polynomials in the ambient coordinates.
#[derive(Clone, Debug)]
pub struct RationalMonomial {
    pub symbol: Monomial,
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

/// Substitutes generator definitions into a symbol monomial.
pub fn chart_coordinate_functions(
    m: &Monomial,
    gens: &BTreeMap<String, LaurentPoly>,
) -> RationalMonomial {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for (v, e) in m.exps() {
        let def = gens.get(v).expect("defined generator");
        if e > 0 {
            num = num.mul(&def.pow(e as u32));
        } else {
            den = den.mul(&def.pow((-e) as u32));
        }
    }
    RationalMonomial {
        symbol: m.clone(),
        numerator: num,
        denominator: den,
    }
}

/// An exact polynomial expression of a target invariant in the chart
/// coordinates.
#[derive(Clone, Debug)]
pub struct Expression {
    /// Exponent tuple on the four coordinates, with its coefficient.
    pub terms: Vec<(Vec<i64>, CycNum)>,
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (alpha, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in alpha.iter().enumerate() {
                if e != 0 {
                    write!(f, "*u{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Expresses `target` as an exact polynomial in the chart coordinates by
/// enumerating exponent tuples of matching torus weight up to a total-degree
/// cap and solving the resulting linear system in the ambient ring.
pub fn express_in_chart(
    target: &Monomial,
    chart: &ChartSeed,
    degrees: &DegreeTable,
    gens: &BTreeMap<String, LaurentPoly>,
    cap: i64,
) -> Result<Expression, ChartError> {
    let coord_weights: Vec<(i64, i64)> = chart
        .coords
        .iter()
        .map(|c| degrees.torus_of_monomial(c).expect("graded coordinate"))
        .collect();
    let tw = degrees.torus_of_monomial(target).expect("graded target");
    debug_assert_eq!(
        degrees.pic_of_monomial(target),
        Some((0, 0)),
        "targets are degree-zero invariants"
    );

    // Candidate exponent tuples with the right torus weight.
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let k = chart.coords.len();
    let mut alpha = alloc::vec![0i64; k];
    loop {
        let w = alpha
            .iter()
            .zip(&coord_weights)
            .fold((0i64, 0i64), |acc, (&a, cw)| {
                (acc.0 + a * cw.0, acc.1 + a * cw.1)
            });
        if w == tw {
            candidates.push(alpha.clone());
        }
        // Next tuple with sum <= cap.
        let mut pos = 0;
        loop {
            if pos == k {
                if candidates.is_empty() {
                    return Err(ChartError::NoWeightMatch);
                }
                return solve_expression(target, chart, gens, candidates);
            }
            alpha[pos] += 1;
            if alpha.iter().sum::<i64>() <= cap {
                break;
            }
            alpha[pos] = 0;
            pos += 1;
        }
    }
}

fn solve_expression(
    target: &Monomial,
    chart: &ChartSeed,
    gens: &BTreeMap<String, LaurentPoly>,
    candidates: Vec<Vec<i64>>,
) -> Result<Expression, ChartError> {
    // Symbol-level common denominator: the most negative exponent of each
    // generator over the target and all candidate monomials.
    let mut min_exp: BTreeMap<String, i64> = BTreeMap::new();
    let mut track = |m: &Monomial| {
        for (v, e) in m.exps() {
            let cur = min_exp.entry(v.to_string()).or_insert(0);
            *cur = (*cur).min(e);
        }
    };
    track(target);
    let candidate_monos: Vec<Monomial> = candidates
        .iter()
        .map(|alpha| {
            let mut m = Monomial::one();
            for (i, &e) in alpha.iter().enumerate() {
                m = m.mul(&chart.coords[i].pow(e));
            }
            m
        })
        .collect();
    for m in &candidate_monos {
        track(m);
    }
    let mut clear = Monomial::one();
    for (v, e) in &min_exp {
        if *e < 0 {
            clear = clear.mul(&Monomial::var(v, -e));
        }
    }
    // Substitute generator definitions after clearing denominators.
    let expand = |m: &Monomial| -> LaurentPoly {
        let cleared = m.mul(&clear);
        debug_assert!(cleared.exps().all(|(_, e)| e >= 0));
        let mut out = LaurentPoly::one();
        for (v, e) in cleared.exps() {
            out = out.mul(&gens.get(v).expect("defined generator").pow(e as u32));
        }
        out
    };
    let rhs_poly = expand(target);
    let col_polys: Vec<LaurentPoly> = candidate_monos.iter().map(|m| expand(m)).collect();

    // Assemble the linear system over the ambient monomials.
    let mut monomials: Vec<Monomial> = rhs_poly.terms().map(|(m, _)| m.clone()).collect();
    for p in &col_polys {
        monomials.extend(p.terms().map(|(m, _)| m.clone()));
    }
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<CycNum>> = monomials
        .iter()
        .map(|m| col_polys.iter().map(|p| p.coeff(m)).collect())
        .collect();
    let rhs: Vec<CycNum> = monomials.iter().map(|m| rhs_poly.coeff(m)).collect();
    match CycMatrix::from_rows(rows).solve(&rhs) {
        SolveOutcome::Solution { x, .. } => {
            let terms = candidates
                .into_iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|(alpha, c)| (alpha, c))
                .collect();
            Ok(Expression { terms })
        }
        SolveOutcome::Inconsistent { .. } => Err(ChartError::SystemInconsistent),
    }
}
