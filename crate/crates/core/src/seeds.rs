//! Typed views of the plain-text seed-data files. Pure string parsing; the
//! command-line layer owns the actual file IO.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::fingroup::GroupMat;
use crate::gitquot::{ChartSeed, ComponentData, ComponentKind, DegreeTable};
use crate::poly::{LaurentPoly, Monomial, Weight};
use crate::textfmt::{parse_cycnum, parse_ivec, parse_poly, ParseError};

fn strip(line: &str) -> &str {
    match line.split_once('#') {
        Some((head, _)) => head.trim(),
        None => line.trim(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(strip).filter(|l| !l.is_empty())
}

fn perr(input: &str, reason: &str) -> ParseError {
    ParseError {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

/// Square matrices under `[generator]` headers, entries comma-separated.
pub fn parse_group_generators(text: &str) -> Result<Vec<GroupMat>, ParseError> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<crate::cyclotomic::CycNum>> = Vec::new();
    let mut flush = |rows: &mut Vec<Vec<crate::cyclotomic::CycNum>>, out: &mut Vec<GroupMat>| {
        if !rows.is_empty() {
            out.push(GroupMat::from_rows(core::mem::take(rows)));
        }
    };
    for line in content_lines(text) {
        if line.starts_with('[') {
            flush(&mut rows, &mut out);
            continue;
        }
        let row: Result<Vec<_>, _> = line.split(',').map(parse_cycnum).collect();
        rows.push(row?);
    }
    flush(&mut rows, &mut out);
    Ok(out)
}

/// Lines `name = polynomial`; returns definitions plus the declaration order.
pub fn parse_generator_polys(
    text: &str,
) -> Result<(Vec<String>, BTreeMap<String, LaurentPoly>), ParseError> {
    let mut order = Vec::new();
    let mut map = BTreeMap::new();
    for line in content_lines(text) {
        let (name, rhs) = line
            .split_once('=')
            .ok_or_else(|| perr(line, "expected `name = polynomial`"))?;
        let name = name.trim().to_string();
        let poly = parse_poly(rhs)?;
        order.push(name.clone());
        map.insert(name, poly);
    }
    Ok((order, map))
}

/// Lines `name pic1 pic2 tw1 tw2`.
pub fn parse_degree_table(text: &str) -> Result<DegreeTable, ParseError> {
    let mut rows = Vec::new();
    for line in content_lines(text) {
        let mut toks = line.split_whitespace();
        let name = toks
            .next()
            .ok_or_else(|| perr(line, "missing name"))?
            .to_string();
        let nums: Result<Vec<i64>, _> = toks.map(|t| t.parse::<i64>()).collect();
        let nums = nums.map_err(|_| perr(line, "bad integer"))?;
        if nums.len() != 4 {
            return Err(perr(line, "expected four integers"));
        }
        rows.push((name, (nums[0], nums[1]), (nums[2], nums[3])));
    }
    Ok(DegreeTable::new(rows))
}

/// `[component NAME]` sections with `kind:`, `zeros:`, `relation:` and
/// optional `lattice:` lines.
pub fn parse_components(text: &str) -> Result<Vec<ComponentData>, ParseError> {
    let mut out: Vec<ComponentData> = Vec::new();
    for line in content_lines(text) {
        if let Some(head) = line.strip_prefix("[component") {
            let name = head.trim_end_matches(']').trim().to_string();
            out.push(ComponentData {
                name,
                kind: ComponentKind::Plane,
                zeros: BTreeSet::new(),
                relations: Vec::new(),
                lattice_seed: Vec::new(),
            });
            continue;
        }
        let cur = out
            .last_mut()
            .ok_or_else(|| perr(line, "content before a [component] header"))?;
        if let Some(rest) = line.strip_prefix("kind:") {
            cur.kind = match rest.trim() {
                "plane" => ComponentKind::Plane,
                "toric" => ComponentKind::Toric,
                "hypersurface" => ComponentKind::Hypersurface,
                other => return Err(perr(other, "unknown component kind")),
            };
        } else if let Some(rest) = line.strip_prefix("zeros:") {
            cur.zeros = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("relation:") {
            cur.relations.push(parse_poly(rest)?);
        } else if let Some(rest) = line.strip_prefix("lattice:") {
            let mut toks = rest.split_whitespace();
            let name = toks
                .next()
                .ok_or_else(|| perr(line, "missing coordinate name"))?
                .to_string();
            let v: Result<Vec<i64>, _> = toks.map(|t| t.parse()).collect();
            cur.lattice_seed
                .push((name, v.map_err(|_| perr(line, "bad integer"))?));
        } else {
            return Err(perr(line, "unknown component line"));
        }
    }
    Ok(out)
}

/// `[chart N]` sections with `support:`, `coord:` and `note:` lines.
pub fn parse_charts(text: &str) -> Result<Vec<ChartSeed>, ParseError> {
    let mut out: Vec<ChartSeed> = Vec::new();
    for line in content_lines(text) {
        if let Some(head) = line.strip_prefix("[chart") {
            let index = head
                .trim_end_matches(']')
                .trim()
                .parse::<usize>()
                .map_err(|_| perr(line, "bad chart index"))?;
            out.push(ChartSeed {
                index,
                support: Monomial::one(),
                coords: Vec::new(),
                notes: Vec::new(),
            });
            continue;
        }
        let cur = out
            .last_mut()
            .ok_or_else(|| perr(line, "content before a [chart] header"))?;
        if let Some(rest) = line.strip_prefix("support:") {
            let p = parse_poly(rest)?;
            let (m, _) = p
                .as_monomial()
                .ok_or_else(|| perr(rest, "support must be a monomial"))?;
            cur.support = m.clone();
        } else if let Some(rest) = line.strip_prefix("coord:") {
            let p = parse_poly(rest)?;
            let (m, _) = p
                .as_monomial()
                .ok_or_else(|| perr(rest, "coordinate must be a monomial"))?;
            cur.coords.push(m.clone());
        } else if let Some(rest) = line.strip_prefix("note:") {
            cur.notes.push(rest.trim().to_string());
        } else {
            return Err(perr(line, "unknown chart line"));
        }
    }
    Ok(out)
}

/// One monomial per line.
pub fn parse_monomial_list(text: &str) -> Result<Vec<Monomial>, ParseError> {
    let mut out = Vec::new();
    for line in content_lines(text) {
        let p = parse_poly(line)?;
        let (m, _) = p
            .as_monomial()
            .ok_or_else(|| perr(line, "expected a monomial"))?;
        out.push(m.clone());
    }
    Ok(out)
}

/// A row of the fixed-point table: label, vertex, four compass vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompassRow {
    pub label: String,
    pub vertex: Weight,
    pub compass: Vec<Weight>,
}

pub fn parse_compass_table(text: &str) -> Result<Vec<CompassRow>, ParseError> {
    let mut out = Vec::new();
    for line in content_lines(text) {
        let mut toks = line.split_whitespace();
        let label = toks
            .next()
            .ok_or_else(|| perr(line, "missing label"))?
            .to_string();
        let nums: Result<Vec<i64>, _> = toks.map(|t| t.parse()).collect();
        let nums = nums.map_err(|_| perr(line, "bad integer"))?;
        if nums.len() != 10 {
            return Err(perr(line, "expected vertex plus four vectors"));
        }
        out.push(CompassRow {
            label,
            vertex: (nums[0], nums[1]),
            compass: (0..4).map(|k| (nums[2 + 2 * k], nums[3 + 2 * k])).collect(),
        });
    }
    Ok(out)
}

/// A row of the bundle-weight table: label, weight on the first generator
/// bundle, weight on the sum bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuRow {
    pub label: String,
    pub mu_l1: Weight,
    pub mu_l1l2: Weight,
}

impl MuRow {
    pub fn mu_l2(&self) -> Weight {
        (self.mu_l1l2.0 - self.mu_l1.0, self.mu_l1l2.1 - self.mu_l1.1)
    }
}

pub fn parse_mu_table(text: &str) -> Result<Vec<MuRow>, ParseError> {
    let mut out = Vec::new();
    for line in content_lines(text) {
        let mut toks = line.split_whitespace();
        let label = toks
            .next()
            .ok_or_else(|| perr(line, "missing label"))?
            .to_string();
        let nums: Result<Vec<i64>, _> = toks.map(|t| t.parse()).collect();
        let nums = nums.map_err(|_| perr(line, "bad integer"))?;
        if nums.len() != 4 {
            return Err(perr(line, "expected two vectors"));
        }
        out.push(MuRow {
            label,
            mu_l1: (nums[0], nums[1]),
            mu_l1l2: (nums[2], nums[3]),
        });
    }
    Ok(out)
}

/// `S:` and `Sprime:` lines of comma-separated weight pairs.
pub fn parse_bundle_sets(text: &str) -> Result<(Vec<Weight>, Vec<Weight>), ParseError> {
    let mut s = Vec::new();
    let mut sp = Vec::new();
    for line in content_lines(text) {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| perr(line, "expected `S:` or `Sprime:`"))?;
        let target = match key.trim() {
            "S" => &mut s,
            "Sprime" => &mut sp,
            other => return Err(perr(other, "unknown bundle set")),
        };
        for chunk in rest.split(',') {
            let v = parse_ivec(chunk)?;
            if v.len() != 2 {
                return Err(perr(chunk, "expected a pair"));
            }
            target.push((v[0], v[1]));
        }
    }
    Ok((s, sp))
}

/// `[NAME]` sections of weight pairs, one per line.
pub fn parse_weight_sets(text: &str) -> Result<BTreeMap<String, BTreeSet<Weight>>, ParseError> {
    let mut out: BTreeMap<String, BTreeSet<Weight>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in content_lines(text) {
        if let Some(head) = line.strip_prefix('[') {
            let name = head.trim_end_matches(']').trim().to_string();
            out.entry(name.clone()).or_default();
            current = Some(name);
            continue;
        }
        let name = current
            .clone()
            .ok_or_else(|| perr(line, "content before a section header"))?;
        let v = parse_ivec(line)?;
        if v.len() != 2 {
            return Err(perr(line, "expected a pair"));
        }
        out.get_mut(&name).unwrap().insert((v[0], v[1]));
    }
    Ok(out)
}

/// CSV `a,b,dim` with a header line.
pub fn parse_weight_table_csv(text: &str) -> Result<BTreeMap<Weight, u64>, ParseError> {
    let mut out = BTreeMap::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (k == 0 && line.starts_with('a')) {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(perr(line, "expected a,b,dim"));
        }
        let a: i64 = parts[0].trim().parse().map_err(|_| perr(line, "bad a"))?;
        let b: i64 = parts[1].trim().parse().map_err(|_| perr(line, "bad b"))?;
        let d: u64 = parts[2].trim().parse().map_err(|_| perr(line, "bad dim"))?;
        out.insert((a, b), d);
    }
    Ok(out)
}

/// Regularity rules `rule: constraints => bundle, bundle`. Constraints are
/// comparisons between `m`, `n`, `m-n`, `n-m` and integer bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityRule {
    /// Each constraint is (coef_m, coef_n, lower_bound): satisfied when
    /// `coef_m * m + coef_n * n >= lower_bound`.
    pub constraints: Vec<(i64, i64, i64)>,
    pub family: Vec<Weight>,
}

impl RegularityRule {
    pub fn contains(&self, m: i64, n: i64) -> bool {
        self.constraints
            .iter()
            .all(|&(cm, cn, lb)| cm * m + cn * n >= lb)
    }
}

pub fn parse_regularity_rules(text: &str) -> Result<Vec<RegularityRule>, ParseError> {
    let mut out = Vec::new();
    for line in content_lines(text) {
        let Some(rest) = line.strip_prefix("rule:") else {
            return Err(perr(line, "expected `rule:`"));
        };
        let (region, family_str) = rest
            .split_once("=>")
            .ok_or_else(|| perr(line, "expected `=>`"))?;
        let mut constraints = Vec::new();
        for c in region.split(',') {
            constraints.push(parse_constraint(c.trim())?);
        }
        let mut family = Vec::new();
        for b in family_str.split(',') {
            let v = parse_ivec(b)?;
            if v.len() != 2 {
                return Err(perr(b, "expected a pair"));
            }
            family.push((v[0], v[1]));
        }
        out.push(RegularityRule {
            constraints,
            family,
        });
    }
    Ok(out)
}

fn parse_constraint(c: &str) -> Result<(i64, i64, i64), ParseError> {
    let (lhs, rhs, flip) = if let Some((l, r)) = c.split_once(">=") {
        (l.trim(), r.trim(), false)
    } else if let Some((l, r)) = c.split_once("<=") {
        (l.trim(), r.trim(), true)
    } else {
        return Err(perr(c, "expected >= or <="));
    };
    let bound: i64 = rhs.parse().map_err(|_| perr(c, "bad bound"))?;
    let (cm, cn) = match lhs {
        "m" => (1, 0),
        "n" => (0, 1),
        "m-n" => (1, -1),
        "n-m" => (-1, 1),
        other => return Err(perr(other, "unknown constraint expression")),
    };
    Ok(if flip {
        (-cm, -cn, -bound)
    } else {
        (cm, cn, bound)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_round_trip_semantics() {
        let rules =
            parse_regularity_rules("rule: m-n>=2, n<=1 => 1 0\nrule: n>=2, m-n>=0, m-n<=1 => 1 1")
                .unwrap();
        assert!(rules[0].contains(3, 1));
        assert!(!rules[0].contains(3, 2));
        assert!(rules[1].contains(3, 2));
        assert!(!rules[1].contains(4, 2));
        assert_eq!(rules[0].family, alloc::vec![(1, 0)]);
    }

    #[test]
    fn bundle_sets() {
        let (s, sp) = parse_bundle_sets("S: 0 0, 1 0\nSprime: 0 1").unwrap();
        assert_eq!(s, alloc::vec![(0, 0), (1, 0)]);
        assert_eq!(sp, alloc::vec![(0, 1)]);
    }
}
