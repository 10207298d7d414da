//! Finite-field census of standard-form triples, with the brute-force
//! midpoint oracle as ground truth.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dual::{is_bisector_dual, BisectorFieldClass, FieldPolynomials};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{form_discriminant, P1Point};
use crate::plane::{bisects_direct, Line, Quadrilateral};
use crate::standard::{equivalence_witness, StandardFormField};

/// Default soft limit on p for brute-force enumeration.
pub const DEFAULT_BOUND: u64 = 13;
/// Absolute limit on p for any census.
pub const HARD_CAP: u64 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    WellCenteredOnly,
    Full,
}

impl std::str::FromStr for CensusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "well-centered-only" | "wc" => Ok(CensusMode::WellCenteredOnly),
            "full" => Ok(CensusMode::Full),
            _ => Err(Error::Parse(format!("unknown census mode {s:?}"))),
        }
    }
}

/// All p² + p canonical lines over GF(p).
pub fn all_lines(field: Field) -> Vec<Line> {
    let els = field.elements();
    let mut out = Vec::with_capacity(els.len() * (els.len() + 1));
    for t in &els {
        for v in &els {
            out.push(Line::new(t.clone(), field.one(), v.clone()).expect("u = 1"));
        }
    }
    for v in &els {
        out.push(Line::new(field.one(), field.zero(), v.clone()).expect("t = 1"));
    }
    out
}

/// Every line passing the definition-level bisector test, in [`all_lines`] order.
pub fn brute_force_bisectors(q: &Quadrilateral, bound: u64) -> Result<Vec<Line>> {
    let field = q.field();
    let p = match field {
        Field::Prime(p) => p,
        _ => return Err(Error::UnsupportedInMode(field.mode_name())),
    };
    if p > bound.min(HARD_CAP) {
        return Err(Error::FieldTooLarge {
            p,
            bound: bound.min(HARD_CAP),
        });
    }
    Ok(all_lines(field)
        .into_iter()
        .filter(|l| bisects_direct(q, l))
        .collect())
}

/// Number of slopes whose full pencil of p parallel lines lies in the set.
pub fn count_pencils(lines: &[Line], p: u64) -> usize {
    let mut by_slope: HashMap<P1Point, usize> = HashMap::new();
    for l in lines {
        *by_slope.entry(l.slope()).or_default() += 1;
    }
    by_slope.values().filter(|&&n| n as u64 == p).count()
}

/// `−108μ(h²μ − k²)²` is a nonzero non-square, which forces the center cubic
/// to have a root. A sufficient test only.
pub fn dickson_check(h: &FieldElement, k: &FieldElement, mu: &FieldElement) -> bool {
    let f = mu.field();
    let inner = &(&(h * h) * mu) - &(k * k);
    let disc = &(&f.int(-108) * mu) * &(&inner * &inner);
    !disc.is_zero() && !disc.is_square()
}

/// One scanned triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRow {
    pub h: String,
    pub k: String,
    pub mu: String,
    pub class: String,
    pub well_centered: bool,
    pub square_mu: bool,
    pub realizable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassHistogram {
    pub linear: u64,
    pub quadratic: u64,
    pub cubic: u64,
}

impl ClassHistogram {
    fn add(&mut self, c: BisectorFieldClass) {
        match c {
            BisectorFieldClass::Linear => self.linear += 1,
            BisectorFieldClass::Quadratic => self.quadratic += 1,
            BisectorFieldClass::Cubic => self.cubic += 1,
        }
    }
}

/// Agreement between the brute-force oracle and the dual-curve test.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub quadrilaterals: u64,
    pub lines_checked: u64,
    pub mismatches: u64,
    pub pencil_mismatches: u64,
}

/// A sampled equivalence witness and whether it transports bisector sets exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub from: [String; 3],
    pub to: [String; 3],
    pub map: [String; 6],
    pub transported: bool,
}

/// An equivalence class of well-centered cubic fields, keyed by the square class of μ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicClass {
    pub square_mu: bool,
    pub members: u64,
    pub representative: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub p: u64,
    pub mode: CensusMode,
    pub triples_scanned: u64,
    /// Classes of all scanned triples.
    pub class_histogram: ClassHistogram,
    /// Classes of triples realized by some quadrilateral over GF(p).
    pub realizable_histogram: ClassHistogram,
    pub unrealizable_triples: u64,
    pub well_centered_cubics: u64,
    pub cubic_classes: Vec<CubicClass>,
    pub well_centered_cubic_class_count: usize,
    pub two_classes: bool,
    pub undecided_pairs: u64,
    pub dickson_true: u64,
    pub dickson_violations: u64,
    /// Cubic triples meeting "3 square and μ not, or 3 not and μ square", with h²μ ≠ k².
    pub three_mu_condition_triples: u64,
    /// Those among them that are not well centered.
    pub three_mu_condition_failures: u64,
    pub oracle: Option<OracleStats>,
    pub witness_checks: Vec<WitnessCheck>,
    #[serde(skip)]
    pub rows: Vec<TripleRow>,
}

impl CensusReport {
    /// Every internal consistency check the census performs.
    pub fn invariants_hold(&self) -> bool {
        self.two_classes
            && self.dickson_violations == 0
            && self.witness_checks.iter().all(|w| w.transported)
            && self
                .oracle
                .as_ref()
                .is_none_or(|o| o.mismatches == 0 && o.pencil_mismatches == 0)
    }

    /// CSV with one row per triple: p, h, k, μ, class, well_centered, square_mu, realizable.
    pub fn csv(&self) -> String {
        let mut s = String::from("p,h,k,mu,class,well_centered,square_mu,realizable\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.p, r.h, r.k, r.mu, r.class, r.well_centered, r.square_mu, r.realizable
            ));
        }
        s
    }
}

struct Scanned {
    field: StandardFormField,
    realization: Option<Quadrilateral>,
    well_centered: bool,
    dickson: bool,
    dickson_violation: bool,
    three_mu_condition: bool,
    oracle: Option<OracleStats>,
}

fn triple_strings(f: &StandardFormField) -> [String; 3] {
    [f.h().to_string(), f.k().to_string(), f.mu().to_string()]
}

fn oracle_on(q: &Quadrilateral, p: u64, bound: u64) -> Result<OracleStats> {
    let fp = FieldPolynomials::from_quadrilateral(q)?;
    let brute = brute_force_bisectors(q, bound)?;
    let brute_set: HashSet<&Line> = brute.iter().collect();
    let lines = all_lines(q.field());
    let mismatches = lines
        .iter()
        .filter(|l| brute_set.contains(l) != is_bisector_dual(&fp, l))
        .count() as u64;
    let pencils = count_pencils(&brute, p);
    Ok(OracleStats {
        quadrilaterals: 1,
        lines_checked: lines.len() as u64,
        mismatches,
        pencil_mismatches: u64::from(pencils != 3 - fp.f_degree()),
    })
}

fn scan(f: StandardFormField, mode: CensusMode, p: u64, bound: u64) -> Result<Scanned> {
    let field = f.field();
    let realization = f.materialize();
    let well_centered = f.well_centered();
    let dickson = dickson_check(f.h(), f.k(), f.mu());
    let cubic = f.center_cubic();
    let dickson_violation = dickson && (cubic.is_zero() || cubic.p1_roots()?.is_empty());
    let three_sq = field.int(3).is_square();
    let mu_sq = f.mu().is_square();
    let degenerate = form_discriminant(&cubic).is_none_or(|d| d.is_zero());
    let three_mu_condition =
        f.class() == BisectorFieldClass::Cubic && !degenerate && (three_sq != mu_sq);
    let oracle = match (mode, &realization) {
        (CensusMode::Full, Some(q)) => Some(oracle_on(q, p, bound)?),
        _ => None,
    };
    Ok(Scanned {
        field: f,
        realization,
        well_centered,
        dickson,
        dickson_violation,
        three_mu_condition,
        oracle,
    })
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn validate_witness(a: &Scanned, b: &Scanned, bound: u64) -> Result<WitnessCheck> {
    let m = equivalence_witness(&a.field, &b.field)?;
    let qa = a.realization.as_ref().ok_or(Error::WrongClass)?;
    let qb = b.realization.as_ref().ok_or(Error::WrongClass)?;
    let moved: HashSet<Line> = brute_force_bisectors(qa, bound)?
        .iter()
        .map(|l| m.apply_line(l))
        .collect();
    let target: HashSet<Line> = brute_force_bisectors(qb, bound)?.into_iter().collect();
    let [[ma, mb], [mc, md]] = m.matrix();
    let [me, mf] = m.translation_part();
    Ok(WitnessCheck {
        from: triple_strings(&a.field),
        to: triple_strings(&b.field),
        map: [ma, mb, mc, md, me, mf].map(|x| x.to_string()),
        transported: moved == target,
    })
}

/// Scans every (h, k, μ) ∈ GF(p)² × GF(p)*, classifies each triple, groups
/// realizable well-centered cubics by the square class of μ, and validates
/// sampled equivalence witnesses by transporting brute-force bisector sets.
pub fn run_census(
    p: u64,
    mode: CensusMode,
    bound: u64,
    witness_samples: usize,
    seed: u64,
) -> Result<CensusReport> {
    let field = Field::prime(p)?;
    let limit = bound.min(HARD_CAP);
    if p > limit {
        return Err(Error::FieldTooLarge { p, bound: limit });
    }
    let els = field.elements();
    let mut triples = Vec::with_capacity((p * p * (p - 1)) as usize);
    for h in &els {
        for k in &els {
            for mu in els.iter().filter(|m| !m.is_zero()) {
                triples.push((h.clone(), k.clone(), mu.clone()));
            }
        }
    }
    let scanned: Vec<Scanned> = triples
        .into_par_iter()
        .map(|(h, k, mu)| StandardFormField::new(h, k, mu).and_then(|f| scan(f, mode, p, bound)))
        .collect::<Result<_>>()?;

    let mut class_histogram = ClassHistogram::default();
    let mut realizable_histogram = ClassHistogram::default();
    let mut oracle = (mode == CensusMode::Full).then(OracleStats::default);
    let mut rows = Vec::with_capacity(scanned.len());
    let mut groups: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut cubic_counts = [0u64; 2];
    let mut report_counts = (0u64, 0u64, 0u64, 0u64, 0u64);
    for (i, s) in scanned.iter().enumerate() {
        let class = s.field.class();
        let square_mu = s.field.mu().is_square();
        class_histogram.add(class);
        if s.realization.is_some() {
            realizable_histogram.add(class);
            if class == BisectorFieldClass::Cubic {
                cubic_counts[square_mu as usize] += 1;
                if s.well_centered {
                    groups[square_mu as usize].push(i);
                }
            }
        } else {
            report_counts.0 += 1;
        }
        report_counts.1 += u64::from(s.dickson);
        report_counts.2 += u64::from(s.dickson_violation);
        if s.three_mu_condition {
            report_counts.3 += 1;
            report_counts.4 += u64::from(!s.well_centered);
        }
        if let (Some(acc), Some(o)) = (oracle.as_mut(), &s.oracle) {
            acc.quadrilaterals += o.quadrilaterals;
            acc.lines_checked += o.lines_checked;
            acc.mismatches += o.mismatches;
            acc.pencil_mismatches += o.pencil_mismatches;
        }
        let [h, k, mu] = triple_strings(&s.field);
        rows.push(TripleRow {
            h,
            k,
            mu,
            class: class.name().to_string(),
            well_centered: s.well_centered,
            square_mu,
            realizable: s.realization.is_some(),
        });
    }

    let cubic_classes: Vec<CubicClass> = [true, false]
        .into_iter()
        .filter(|&sq| !groups[sq as usize].is_empty())
        .map(|sq| CubicClass {
            square_mu: sq,
            members: groups[sq as usize].len() as u64,
            representative: triple_strings(&scanned[groups[sq as usize][0]].field),
        })
        .collect();
    let undecided_pairs: u64 = (0..2)
        .map(|c| choose2(cubic_counts[c]) - choose2(groups[c].len() as u64))
        .sum();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let nonempty: Vec<&Vec<usize>> = groups.iter().filter(|g| !g.is_empty()).collect();
    let mut witness_checks = Vec::new();
    for i in 0..witness_samples {
        if nonempty.is_empty() {
            break;
        }
        let g = nonempty[i % nonempty.len()];
        let a = *g.choose(&mut rng).expect("nonempty");
        let b = *g.choose(&mut rng).expect("nonempty");
        witness_checks.push(validate_witness(&scanned[a], &scanned[b], bound)?);
    }

    let count = cubic_classes.len();
    Ok(CensusReport {
        p,
        mode,
        triples_scanned: scanned.len() as u64,
        class_histogram,
        realizable_histogram,
        unrealizable_triples: report_counts.0,
        well_centered_cubics: groups.iter().map(|g| g.len() as u64).sum(),
        cubic_classes,
        well_centered_cubic_class_count: count,
        two_classes: count == 2,
        undecided_pairs,
        dickson_true: report_counts.1,
        dickson_violations: report_counts.2,
        three_mu_condition_triples: report_counts.3,
        three_mu_condition_failures: report_counts.4,
        oracle,
        witness_checks,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_count() {
        for p in [3u64, 5, 7] {
            assert_eq!(all_lines(Field::Prime(p)).len() as u64, p * p + p);
        }
    }

    #[test]
    fn dickson_examples() {
        let f = Field::prime(7).unwrap();
        // h²μ = k²
        assert!(!dickson_check(&f.int(1), &f.int(2), &f.int(4)));
        // −108·4 ≡ 2 is a square mod 7, so the test never fires for μ = 4.
        for h in f.elements() {
            for k in f.elements() {
                assert!(!dickson_check(&h, &k, &f.int(4)));
            }
        }
        let f5 = Field::prime(5).unwrap();
        assert!(
            dickson_check(&f5.int(1), &f5.int(1), &f5.int(1))
                || dickson_check(&f5.int(0), &f5.int(1), &f5.int(1))
        );
    }

    #[test]
    fn census_at_five() {
        let r = run_census(5, CensusMode::WellCenteredOnly, DEFAULT_BOUND, 4, 1).unwrap();
        assert_eq!(r.triples_scanned, 100);
        assert_eq!(r.well_centered_cubic_class_count, 2);
        assert!(r.witness_checks.iter().all(|w| w.transported));
        assert_eq!(r.dickson_violations, 0);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            run_census(17, CensusMode::Full, 13, 0, 0),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            run_census(2, CensusMode::Full, 13, 0, 0),
            Err(Error::InvalidPrime(2))
        ));
    }
}
