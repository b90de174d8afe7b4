//! The named ring generators with their polynomials and bidegrees, plus the
//! degree-matrix and semi-invariance verifications.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cyclotomic::CycNum;
use crate::fingroup::{GroupMat, MatGroup};
use crate::gitquot::DegreeTable;
use crate::poly::{apply_linear_substitution, LaurentPoly, Weight, WeightAssignment};

/// The generator polynomials, keyed by name, with the seeded degree table.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub order: Vec<String>,
    pub polys: BTreeMap<String, LaurentPoly>,
    pub degrees: DegreeTable,
}

impl GeneratorTable {
    pub fn new(
        order: Vec<String>,
        polys: BTreeMap<String, LaurentPoly>,
        degrees: DegreeTable,
    ) -> Self {
        GeneratorTable {
            order,
            polys,
            degrees,
        }
    }

    pub fn poly(&self, name: &str) -> &LaurentPoly {
        &self.polys[name]
    }

    /// Names other than the two exceptional-divisor characters.
    pub fn section_names(&self) -> Vec<String> {
        self.order
            .iter()
            .filter(|n| *n != "s" && *n != "t")
            .cloned()
            .collect()
    }
}

/// Outcome of recomputing one generator's bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub name: String,
    pub pic: Result<Weight, String>,
    pub torus: Result<Weight, String>,
    pub matches: bool,
}

/// Recomputes every generator's class-group and torus weight from its
/// polynomial and compares against the seeded degree matrix.
pub fn verify_degree_matrix(table: &GeneratorTable) -> Vec<DegreeReport> {
    let pic_wa = WeightAssignment::picard_on_xy();
    let torus_wa = WeightAssignment::torus_on_xy();
    let mut out = Vec::new();
    for name in &table.order {
        let f = table.poly(name);
        let pic = f.weight_of(&pic_wa).map_err(|e| e.to_string());
        let torus = f.weight_of(&torus_wa).map_err(|e| e.to_string());
        let matches = pic.as_ref().ok().copied() == table.degrees.pic(name)
            && torus.as_ref().ok().copied() == table.degrees.torus(name);
        out.push(DegreeReport {
            name: name.clone(),
            pic,
            torus,
            matches,
        });
    }
    out
}

/// Character class of a generator: its class-group degree modulo the
/// lattice spanned by the two exceptional characters, i.e. `p - q mod 3`.
pub fn generator_character_classes(table: &GeneratorTable) -> BTreeMap<String, i64> {
    table
        .order
        .iter()
        .map(|n| {
            let (p, q) = table.degrees.pic(n).expect("seeded degree");
            (n.clone(), (p - q).rem_euclid(3))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SemiInvarianceReport {
    /// Per (generator-name, group-generator-index): the root-of-unity scalar.
    pub scalars: BTreeMap<(String, usize), CycNum>,
    pub failures: Vec<String>,
}

impl SemiInvarianceReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn substitute_group(f: &LaurentPoly, g: &GroupMat) -> LaurentPoly {
    let mat: Vec<Vec<CycNum>> = g.rows();
    apply_linear_substitution(f, &mat, &["x1", "y1", "x2", "y2"])
}

/// Each generator must be fixed by every element of the commutator
/// subgroup and scale by a root of unity under each group generator, with
/// the scalar constant on each character class.
pub fn verify_semiinvariance(
    table: &GeneratorTable,
    group: &MatGroup,
    commutator: &[usize],
) -> SemiInvarianceReport {
    use alloc::format;
    let mut scalars = BTreeMap::new();
    let mut failures = Vec::new();
    for name in &table.order {
        let f = table.poly(name);
        for &ci in commutator {
            let image = substitute_group(f, &group.elements[ci]);
            if &image != f {
                failures.push(format!(
                    "{name} moves under commutator element {ci}"
                ));
            }
        }
        for (gi, g) in group.generators.iter().enumerate() {
            let image = substitute_group(f, g);
            match proportionality(f, &image) {
                Some(lambda) if lambda.is_root_of_unity() => {
                    scalars.insert((name.clone(), gi), lambda);
                }
                Some(_) => failures.push(format!(
                    "{name} scales by a non-root under generator {gi}"
                )),
                None => failures.push(format!(
                    "{name} is not semi-invariant under generator {gi}"
                )),
            }
        }
    }
    // Scalar must be a class function of the character class.
    let classes = generator_character_classes(table);
    for gi in 0..table_generator_count(table, &scalars) {
        let mut per_class: BTreeMap<i64, CycNum> = BTreeMap::new();
        for name in &table.order {
            let Some(lambda) = scalars.get(&(name.clone(), gi)) else {
                continue;
            };
            let class = classes[name];
            match per_class.get(&class) {
                None => {
                    per_class.insert(class, lambda.clone());
                }
                Some(prev) if prev == lambda => {}
                Some(prev) => failures.push(format!(
                    "class {class} scalar differs at {name}: {lambda} vs {prev}"
                )),
            }
        }
    }
    SemiInvarianceReport { scalars, failures }
}

fn table_generator_count(
    _table: &GeneratorTable,
    scalars: &BTreeMap<(String, usize), CycNum>,
) -> usize {
    scalars.keys().map(|(_, gi)| gi + 1).max().unwrap_or(0)
}

/// `image = lambda * f`, when such a scalar exists.
fn proportionality(f: &LaurentPoly, image: &LaurentPoly) -> Option<CycNum> {
    let (m0, c0) = f.terms().next()?;
    let lambda = image.coeff(m0).checked_div(c0).ok()?;
    if image == &f.scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textfmt::parse_poly;

    #[test]
    fn proportionality_detection() {
        let f = parse_poly("x1^2-y1^2").unwrap();
        let g = f.scale(&CycNum::i());
        assert_eq!(proportionality(&f, &g), Some(CycNum::i()));
        let h = parse_poly("x1^2+y1^2").unwrap();
        assert_eq!(proportionality(&f, &h), None);
    }
}
