//! Families of `Q_p`-irreducible polynomials and their Okutsu classes.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arith::{PBase, Rat, Val};
use crate::chains::{irreducible_chain, MlvChain, DEFAULT_SV_BOUND};
use crate::error::{Error, Result};
use crate::okutsu::{equivalent_chains, resultant_distance, CriteriaContext};
use crate::poly::Poly;
use crate::sample::int_coeffs;

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub primes: Vec<u64>,
    pub max_degree: usize,
    /// Coefficients range over `[-height, height]`.
    pub height: i64,
    /// Extra polynomials, kept when irreducible at the prime.
    pub seeds: Vec<Poly>,
    /// Seeds built from the prime `p`.
    pub prime_seeds: bool,
}

impl CorpusSpec {
    /// Degree at most 4, coefficients in `[-9, 9]`, `p ∈ {2, 3, 5}`, plus the
    /// worked examples and Eisenstein samples.
    pub fn standard() -> CorpusSpec {
        CorpusSpec { primes: vec![2, 3, 5], max_degree: 4, height: 9, seeds: standard_seeds(), prime_seeds: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() || self.max_degree == 0 || self.height <= 0 {
            return Err(Error::InvalidOperand("corpus bounds must be positive".into()));
        }
        for &p in &self.primes {
            PBase::new(p)?;
        }
        if self.seeds.iter().any(|s| !s.is_monic() || s.deg() == 0) {
            return Err(Error::InvalidOperand("seeds must be monic of positive degree".into()));
        }
        Ok(())
    }
}

/// `x^2-2`, `x^2-6`, `x^2+x+1` and `(x^2+x+1)^2 ± 2`.
pub fn standard_seeds() -> Vec<Poly> {
    let q = Poly::from_ints(&[1, 1, 1]);
    let two = Poly::constant(Rat::from_int(2));
    vec![Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[-6, 0, 1]), q.clone(), &q.pow(2) - &two, &q.pow(2) + &two]
}

/// Two Eisenstein polynomials at `p` of each of the degrees 3 and 4.
pub fn eisenstein_seeds(p: u64) -> Vec<Poly> {
    let p = p as i64;
    vec![
        Poly::from_ints(&[p * (p + 1), p, 0, 1]),
        Poly::from_ints(&[-p, 0, 0, 1]),
        Poly::from_ints(&[p * (p + 1), p * p, 0, p, 1]),
        Poly::from_ints(&[p, p, 0, 0, 1]),
    ]
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub poly: Poly,
    pub chain: MlvChain,
}

/// The irreducible members of a family at one prime, in enumeration order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub prime: PBase,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps the irreducible members of `family`, dropping repeats.
    pub fn from_family(prime: PBase, family: &[Poly]) -> Result<Corpus> {
        let mut seen = std::collections::HashSet::new();
        let unique: Vec<&Poly> = family.iter().filter(|f| seen.insert((*f).clone())).collect();
        let bound = Val::int(DEFAULT_SV_BOUND);
        let chains: Vec<Option<MlvChain>> =
            unique.par_iter().map(|f| irreducible_chain(f, prime, &bound)).collect::<Result<_>>()?;
        let entries = unique
            .into_iter()
            .zip(chains)
            .filter_map(|(f, c)| c.map(|chain| CorpusEntry { poly: f.clone(), chain }))
            .collect();
        Ok(Corpus { prime, entries })
    }
}

/// Monic polynomials of degree `1..=max_degree` with coefficients in
/// `[-h, h]`, by degree and then by coefficients.
pub fn box_family(max_degree: usize, h: i64) -> Vec<Poly> {
    let width = (2 * h + 1) as usize;
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for mut idx in 0..width.pow(d as u32) {
            let mut c = vec![0i64; d + 1];
            for cj in c.iter_mut().take(d) {
                *cj = (idx % width) as i64 - h;
                idx /= width;
            }
            c[d] = 1;
            out.push(Poly::from_ints(&c));
        }
    }
    out
}

pub fn build_corpus(spec: &CorpusSpec) -> Result<Vec<Corpus>> {
    spec.validate()?;
    let family = box_family(spec.max_degree, spec.height);
    spec.primes
        .iter()
        .map(|&p| {
            let base = PBase::new(p)?;
            let mut all = family.clone();
            all.extend(spec.seeds.iter().cloned());
            if spec.prime_seeds {
                all.extend(eisenstein_seeds(p));
            }
            Corpus::from_family(base, &all)
        })
        .collect()
}

/// Okutsu classes of a corpus by pairwise comparison, in order of first member.
pub fn okutsu_classes(corpus: &Corpus) -> Result<Vec<Vec<usize>>> {
    let mut class_of: Vec<Option<usize>> = vec![None; corpus.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..corpus.len() {
        if class_of[i].is_some() {
            continue;
        }
        let c = classes.len();
        let mut members = vec![i];
        class_of[i] = Some(c);
        for j in i + 1..corpus.len() {
            if class_of[j].is_none() && equivalent_chains(&corpus.entries[i].chain, &corpus.entries[j].chain)? {
                class_of[j] = Some(c);
                members.push(j);
            }
        }
        classes.push(members);
    }
    Ok(classes)
}

/// Matrix of `u(F, G)` over a corpus.
pub fn distance_matrix(corpus: &Corpus) -> Result<Vec<Vec<Val>>> {
    corpus
        .entries
        .par_iter()
        .map(|a| corpus.entries.iter().map(|b| resultant_distance(&a.poly, &b.poly, corpus.prime)).collect())
        .collect()
}

/// Outcome of [`audit_equivalence`].
#[derive(Clone, Debug, Default)]
pub struct EquivalenceAudit {
    /// Ordered pairs `(F, G)` of equal degree covered.
    pub pairs: u64,
    /// Pairs on which both criteria were evaluated.
    pub evaluations: u64,
    /// Pairs on which `u > wt(ρ_F)` and `ρ_F(F - G) > ρ_F(F)` disagree.
    pub disagreements: Vec<(usize, usize)>,
    /// Failures of reflexivity, symmetry or transitivity.
    pub violations: Vec<String>,
    pub classes: Vec<Vec<usize>>,
}

impl EquivalenceAudit {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.violations.is_empty()
    }
}

/// Checks on every ordered pair of equal degree that `u(F, G) > wt(ρ_F)`
/// and `ρ_F(F - G) > ρ_F(F)` agree, and that the relation they define is
/// an equivalence.
///
/// Partners are taken in residue classes mod `p^j`. For monic integral `F`,
/// `v_F` and `ρ_F` are at least `j` on `p^j Z[x]`, so a value below `j` at
/// one member of a class is the value at every member. A class is settled
/// by one genuine corpus pair once both values compared by the criteria are
/// below `j`, or once `j > δ_0(F)`, where both criteria only depend on the
/// class. Other classes are split mod `p^{j+1}`. Non-integral inputs are
/// compared pair by pair.
pub fn audit_equivalence(corpus: &Corpus) -> Result<EquivalenceAudit> {
    let n_entries = corpus.len();
    let p = corpus.prime.p();
    let mut by_degree: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, e) in corpus.entries.iter().enumerate() {
        by_degree.entry(e.poly.deg()).or_default().push(i);
    }
    let ints: Vec<Option<Vec<i64>>> = corpus.entries.iter().map(|e| int_coeffs(&e.poly)).collect();
    let mut audit = EquivalenceAudit::default();
    let mut related: Vec<Vec<u32>> = vec![Vec::new(); n_entries];
    let mut degrees: Vec<usize> = by_degree.keys().copied().collect();
    degrees.sort_unstable();
    for d in degrees {
        let group = &by_degree[&d];
        audit.pairs += (group.len() * group.len()) as u64;
        if d == 1 {
            // degree-one leaves share the root's single tangent direction
            for &i in group {
                related[i] = group.iter().map(|&j| j as u32).collect();
            }
            continue;
        }
        let integral = group.iter().all(|&j| ints[j].is_some());
        let top_classes = if integral { split_classes(group, &ints, p as i64) } else { vec![] };
        let rows: Vec<(Vec<u32>, u64, Vec<(usize, usize)>)> = group
            .par_iter()
            .map(|&i| {
                let coarse = if integral && class_argument_applies(&corpus.entries[i].chain) {
                    Some(top_classes.as_slice())
                } else {
                    None
                };
                audit_row(corpus, group, &ints, coarse, i, p)
            })
            .collect::<Result<_>>()?;
        for (&i, (row, evals, bad)) in group.iter().zip(rows) {
            related[i] = row;
            audit.evaluations += evals;
            audit.disagreements.extend(bad);
        }
    }
    // the rows must be the blocks of a partition containing their owner
    let mut class_of: Vec<Option<usize>> = vec![None; n_entries];
    for i in 0..n_entries {
        let row = &related[i];
        if row.binary_search(&(i as u32)).is_err() {
            audit.violations.push(format!("{} is not related to itself", corpus.entries[i].poly));
        }
        match class_of[i] {
            None => {
                let c = audit.classes.len();
                for &j in row {
                    let j = j as usize;
                    if let Some(other) = class_of[j] {
                        audit.violations.push(format!(
                            "{} relates to {} of an earlier class {other}",
                            corpus.entries[i].poly, corpus.entries[j].poly
                        ));
                    } else {
                        class_of[j] = Some(c);
                    }
                }
                audit.classes.push(row.iter().map(|&j| j as usize).collect());
            }
            Some(c) => {
                let ok = row.len() == audit.classes[c].len() && row.iter().all(|&j| class_of[j as usize] == Some(c));
                if !ok {
                    audit.violations.push(format!("the partners of {} differ from its class", corpus.entries[i].poly));
                }
            }
        }
    }
    Ok(audit)
}

// Members grouped by lower coefficients mod `m`, in order of first member.
fn split_classes(members: &[usize], ints: &[Option<Vec<i64>>], m: i64) -> Vec<Vec<usize>> {
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &j in members {
        let c = ints[j].as_ref().expect("integral member");
        let key: Vec<i64> = c[..c.len() - 1].iter().map(|x| x.rem_euclid(m)).collect();
        let slot = *index.entry(key).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[slot].push(j);
    }
    out
}

// `F` monic integral with integral center and nonnegative `γ_0`, so that
// `v_F` and `ρ_F` are nonnegative on `Z[x]`.
fn class_argument_applies(cf: &MlvChain) -> bool {
    let lvl0 = cf.top().level(0);
    cf.poly().coeffs().iter().all(|c| c.is_integer())
        && lvl0.phi().coeff(0).is_integer()
        && lvl0.gamma() >= &Val::zero()
}

// Partners of entry `i` within its degree group, the number of criterion
// evaluations, and the disagreeing pairs.
fn audit_row(
    corpus: &Corpus,
    group: &[usize],
    ints: &[Option<Vec<i64>>],
    coarse: Option<&[Vec<usize>]>,
    i: usize,
    p: u64,
) -> Result<(Vec<u32>, u64, Vec<(usize, usize)>)> {
    let ctx = CriteriaContext::new(&corpus.entries[i].chain)?;
    let n = Rat::from_int(corpus.entries[i].poly.deg() as i64);
    let mut row = Vec::new();
    let mut bad = Vec::new();
    let mut evals = 0u64;
    let mut settle = |members: &[usize], row: &mut Vec<u32>, c: &crate::okutsu::Criteria| {
        if c.closer != c.equivalent {
            bad.push((i, members[0]));
        }
        if c.closer {
            row.extend(members.iter().map(|&j| j as u32));
        }
    };
    match coarse {
        None => {
            for &j in group {
                let c = ctx.evaluate(&corpus.entries[j].poly)?;
                evals += 1;
                settle(&[j], &mut row, &c);
            }
        }
        Some(classes) => {
            let delta = ctx.okutsu_bound().clone();
            let mut stack: Vec<(Vec<usize>, u32)> = classes.iter().map(|c| (c.clone(), 1)).collect();
            let p = p as i64;
            while let Some((members, j)) = stack.pop() {
                let c = ctx.evaluate(&corpus.entries[members[0]].poly)?;
                evals += 1;
                let jv = Val::int(j as i64);
                let vf = c.distance.scale(&n)?;
                let beyond = Val::int(j as i64) > delta;
                let settled = beyond || (vf < jv && c.rho_difference < jv) || members.len() == 1;
                if settled {
                    settle(&members, &mut row, &c);
                } else {
                    let m = p
                        .checked_pow(j + 1)
                        .ok_or_else(|| Error::Inconsistent("residue classes beyond machine integers".into()))?;
                    for sub in split_classes(&members, ints, m) {
                        stack.push((sub, j + 1));
                    }
                }
            }
        }
    }
    row.sort_unstable();
    Ok((row, evals, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_corpus(p: u64, deg: usize, h: i64) -> Corpus {
        let spec = CorpusSpec { primes: vec![p], max_degree: deg, height: h, seeds: vec![], prime_seeds: false };
        build_corpus(&spec).unwrap().remove(0)
    }

    #[test]
    fn classes_match_pairwise() {
        for p in [2, 3] {
            let corpus = small_corpus(p, 3, 3);
            let audit = audit_equivalence(&corpus).unwrap();
            assert!(audit.passed(), "{:?}", audit.violations);
            let mut fast = audit.classes.clone();
            let mut slow = okutsu_classes(&corpus).unwrap();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn standard_seeds_are_kept() {
        let c = Corpus::from_family(PBase::new(2).unwrap(), &standard_seeds()).unwrap();
        // x^2 - 2, x^2 - 6, x^2 + x + 1 and both quartics are irreducible over Q_2
        assert_eq!(c.len(), 5);
        for p in [2, 3, 5] {
            let c = Corpus::from_family(PBase::new(p).unwrap(), &eisenstein_seeds(p)).unwrap();
            assert_eq!(c.len(), 4);
        }
    }

    #[test]
    fn distance_matrix_is_symmetric() {
        let corpus = small_corpus(2, 2, 3);
        let m = distance_matrix(&corpus).unwrap();
        for i in 0..m.len() {
            assert_eq!(m[i][i], Val::PosInf);
            for j in 0..m.len() {
                assert_eq!(m[i][j], m[j][i]);
            }
        }
    }
}
