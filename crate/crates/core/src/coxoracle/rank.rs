//! Exact-rank certificates for the bigraded pieces: rows are the ambient
//! expansions of the enumerated monomials, columns the coordinate monomials
//! of the matching bidegree. The default path reduces modulo two or more
//! embedding primes (a rigorous lower bound on the true rank); exact
//! elimination over the cyclotomic field is the audit path.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::enumerate::GradedMonomial;
use super::gens::GeneratorTable;
use crate::cycmat::CycMatrix;
use crate::cyclotomic::CycNum;
use crate::modp::{mul_mod, BadReduction, EmbeddingPrime, IncrementalRank};
use crate::poly::{LaurentPoly, Monomial, Weight};

/// Dense bihomogeneous polynomial in the four ambient coordinates: entry
/// `(i, j)` is the coefficient of `x1^i y1^(d1-i) x2^j y2^(d2-j)`.
#[derive(Clone, Debug)]
pub struct DenseBi {
    pub d1: usize,
    pub d2: usize,
    pub c: Vec<u64>,
}

impl DenseBi {
    pub fn one() -> Self {
        DenseBi {
            d1: 0,
            d2: 0,
            c: vec![1],
        }
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.c[i * (self.d2 + 1) + j]
    }

    pub fn mul(&self, other: &DenseBi, p: u64) -> DenseBi {
        let d1 = self.d1 + other.d1;
        let d2 = self.d2 + other.d2;
        let mut c = vec![0u64; (d1 + 1) * (d2 + 1)];
        for i1 in 0..=self.d1 {
            for j1 in 0..=self.d2 {
                let a = self.at(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..=other.d1 {
                    for j2 in 0..=other.d2 {
                        let b = other.at(i2, j2);
                        if b == 0 {
                            continue;
                        }
                        let idx = (i1 + i2) * (d2 + 1) + (j1 + j2);
                        c[idx] = (c[idx] + mul_mod(a, b, p)) % p;
                    }
                }
            }
        }
        DenseBi { d1, d2, c }
    }

    pub fn pow(&self, e: i64, p: u64) -> DenseBi {
        let mut acc = DenseBi::one();
        for _ in 0..e {
            acc = acc.mul(self, p);
        }
        acc
    }
}

/// Reduces each generator's coordinate part modulo the embedding prime.
pub fn compile_mod_tables(
    table: &GeneratorTable,
    prime: EmbeddingPrime,
) -> Result<BTreeMap<String, DenseBi>, BadReduction> {
    let mut out = BTreeMap::new();
    for name in table.section_names() {
        let f = table.poly(&name);
        let (d1, d2) = table.degrees.torus(&name).expect("seeded degree");
        let (d1, d2) = (d1 as usize, d2 as usize);
        let mut c = vec![0u64; (d1 + 1) * (d2 + 1)];
        for (m, coeff) in f.terms() {
            let i = m.exp("x1") as usize;
            let j = m.exp("x2") as usize;
            debug_assert_eq!(m.exp("y1") as usize, d1 - i);
            debug_assert_eq!(m.exp("y2") as usize, d2 - j);
            let v = prime.embed(coeff)?;
            let idx = i * (d2 + 1) + j;
            c[idx] = (c[idx] + v) % prime.p;
        }
        out.insert(name, DenseBi { d1, d2, c });
    }
    Ok(out)
}

/// Rank of the expansion matrix modulo one prime, stopping early once
/// `target` pivots are found.
pub fn graded_rank_mod_p(
    monomials: &[GradedMonomial],
    tables: &BTreeMap<String, DenseBi>,
    prime: EmbeddingPrime,
    w: Weight,
    target: Option<u64>,
) -> u64 {
    let width = ((w.0 + 1) * (w.1 + 1)) as usize;
    let mut elim = IncrementalRank::new(prime.p, width);
    for m in monomials {
        let mut acc = DenseBi::one();
        for (name, e) in &m.exps {
            acc = acc.mul(&tables[name].pow(*e, prime.p), prime.p);
        }
        debug_assert_eq!((acc.d1 as i64, acc.d2 as i64), w);
        elim.add_row(acc.c.clone());
        if let Some(t) = target {
            if elim.rank() as u64 >= t {
                return elim.rank() as u64;
            }
        }
    }
    elim.rank() as u64
}

/// Exact rank over the cyclotomic field (audit path).
pub fn exact_graded_rank(
    table: &GeneratorTable,
    monomials: &[GradedMonomial],
    w: Weight,
) -> u64 {
    let mut columns: Vec<Monomial> = Vec::new();
    let mut rows_raw: Vec<LaurentPoly> = Vec::new();
    for m in monomials {
        let mut acc = LaurentPoly::one();
        for (name, e) in &m.exps {
            let xpart = strip_torus(table.poly(name));
            acc = acc.mul(&xpart.pow(*e as u32));
        }
        columns.extend(acc.terms().map(|(mono, _)| mono.clone()));
        rows_raw.push(acc);
    }
    columns.sort();
    columns.dedup();
    debug_assert!(columns.len() <= ((w.0 + 1) * (w.1 + 1)) as usize);
    let rows: Vec<Vec<CycNum>> = rows_raw
        .iter()
        .map(|poly| columns.iter().map(|c| poly.coeff(c)).collect())
        .collect();
    if rows.is_empty() || columns.is_empty() {
        return 0;
    }
    CycMatrix::from_rows(rows).rank() as u64
}

fn strip_torus(f: &LaurentPoly) -> LaurentPoly {
    let images: BTreeMap<String, LaurentPoly> = [
        ("t1".into(), LaurentPoly::one()),
        ("t2".into(), LaurentPoly::one()),
    ]
    .into_iter()
    .collect();
    f.substitute(&images)
}

/// The per-prime compiled generator tables a verdict run carries around.
pub type CompiledTables = Vec<(EmbeddingPrime, BTreeMap<String, DenseBi>)>;

/// A modular rank certificate: per-prime ranks, their maximum (a rigorous
/// lower bound on the true rank over the field), and whether the primes
/// agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub per_prime: Vec<(u64, u64)>,
    pub lower_bound: u64,
    pub agreed: bool,
    pub row_count: usize,
}

/// Certifies the rank of one bigraded piece with every supplied prime,
/// stopping each elimination early at `target` when given.
pub fn rank_certificate(
    monomials: &[GradedMonomial],
    compiled: &[(EmbeddingPrime, BTreeMap<String, DenseBi>)],
    w: Weight,
    target: Option<u64>,
) -> RankCertificate {
    let mut per_prime = Vec::new();
    for (prime, tables) in compiled {
        let r = graded_rank_mod_p(monomials, tables, *prime, w, target);
        per_prime.push((prime.p, r));
    }
    let lower_bound = per_prime.iter().map(|(_, r)| *r).max().unwrap_or(0);
    let agreed = per_prime.iter().all(|(_, r)| *r == lower_bound);
    RankCertificate {
        per_prime,
        lower_bound,
        agreed,
        row_count: monomials.len(),
    }
}
