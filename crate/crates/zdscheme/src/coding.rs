//! Subgroup codes: duality, weight distributions, MacWilliams relations,
//! Delsarte inequalities and perfect codes.

use crate::ball_scheme::{self, BlockIndex};
use crate::dual_fourier::{self, Carrier, GroupFunction};
use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::metric_scheme;
use crate::par;
use crate::phase::CycloSum;
use crate::rational::{self, Rational};
use crate::report::Check;
use crate::wavelet_lp;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// A subgroup of `X` (or of `X̂`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Code {
    /// Members in ascending order.
    pub members: Vec<usize>,
    /// Generators the code was built from.
    pub generators: Vec<usize>,
}

impl Code {
    /// Subgroup generated by `generators`.
    pub fn generated(g: &ChainedGroup, generators: &[usize]) -> Code {
        let mut members = g.subgroup_closure(generators);
        members.sort_unstable();
        Code {
            members,
            generators: generators.to_vec(),
        }
    }

    /// A subgroup given by its members.
    pub fn from_members(g: &ChainedGroup, set: &[usize]) -> Result<Code> {
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        if !g.is_subgroup(&members) {
            return Err(Error::NotSubgroup);
        }
        Ok(Code {
            members,
            generators: set.to_vec(),
        })
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true; a subgroup contains `0`.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Minimum distance over distinct pairs, `None` for the trivial code.
    pub fn min_distance(&self, g: &ChainedGroup) -> Option<usize> {
        self.members.iter().filter(|&&y| y != 0).map(|&y| g.radius(y)).min()
    }
}

/// `Y^⊥ = {φ : φ(y) = 1 for all y ∈ Y}` as a code in `X̂`.
pub fn dual_code(c: &Carrier, y: &Code) -> Code {
    let members = c.dual.annihilator(&c.group, &y.members);
    Code {
        generators: members.clone(),
        members,
    }
}

/// Which class partition a distribution is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classes {
    /// Spheres `S(r)`.
    Spheres,
    /// Ball blocks `Φ_i(r)`, dense-indexed as in [`BlockIndex`].
    Blocks,
}

fn class_labels(g: &ChainedGroup, classes: Classes) -> (Vec<u32>, usize) {
    match classes {
        Classes::Spheres => (metric_scheme::sphere_labels(g), g.depth() + 1),
        Classes::Blocks => {
            let bi = BlockIndex::new(g);
            (bi.element_labels(g), bi.len())
        }
    }
}

/// `m_i = μ(Y ∩ class_i)` for any subset `Y`.
pub fn weight_distribution(g: &ChainedGroup, set: &[usize], classes: Classes) -> Vec<Rational> {
    let (labels, n) = class_labels(g, classes);
    let mut counts = vec![0usize; n];
    for &y in set {
        counts[labels[y] as usize] += 1;
    }
    counts.into_iter().map(|k| g.mu_count(k)).collect()
}

/// Direction of the MacWilliams transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `m ↦ m̂`.
    ToDual,
    /// `m̂ ↦ m`.
    FromDual,
}

/// Sphere MacWilliams relations
/// `m̂_i = μ(Y)^{−1} Σ_k q_i(k) m_k` and `m_i = μ(Y) Σ_k p_i(k) m̂_k`,
/// where `μ(Y) = Σ m` and `μ(Y)^{−1} = Σ m̂`.
pub fn macwilliams(c: &Carrier, m: &[Rational], direction: Direction) -> Result<Vec<Rational>> {
    let d = c.depth();
    if m.len() != d + 1 {
        return Err(Error::Length {
            expected: d + 1,
            got: m.len(),
        });
    }
    let total: Rational = m.iter().sum();
    if !total.is_positive() {
        return Err(Error::InconsistentDistribution("total measure is not positive".into()));
    }
    let (table, scale) = match direction {
        Direction::ToDual => (metric_scheme::q_closed(c), rational::int(1) / &total),
        Direction::FromDual => (metric_scheme::p_closed(c), rational::int(1) / &total),
    };
    let out: Vec<Rational> = (0..=d)
        .map(|i| (0..=d).map(|k| &table[i][k] * &m[k]).sum::<Rational>() * &scale)
        .collect();
    if let Some((i, v)) = out.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::InconsistentDistribution(format!("entry {i} is {}", rational::fmt(v))));
    }
    Ok(out)
}

/// Block MacWilliams relation `m̂_b = μ(Y)^{−1} Σ_a q_b(a) m_a` with complex
/// `q`; the result must be rational.
pub fn macwilliams_blocks(c: &Carrier, m: &[Rational]) -> Result<Vec<Rational>> {
    let q = ball_scheme::q_closed(c);
    let total: Rational = m.iter().sum();
    if !total.is_positive() {
        return Err(Error::InconsistentDistribution("total measure is not positive".into()));
    }
    let n = c.group.exponent();
    q.iter()
        .enumerate()
        .map(|(b, row)| {
            let mut acc = CycloSum::zero(n);
            for (qa, ma) in row.iter().zip(m) {
                acc.add_term(&(&qa.mag * ma), qa.phase);
            }
            let v = acc
                .as_rational()
                .ok_or_else(|| Error::InconsistentDistribution(format!("dual block {b} is not rational")))?;
            let v = v / &total;
            if v.is_negative() {
                return Err(Error::InconsistentDistribution(format!("dual block {b} is negative")));
            }
            Ok(v)
        })
        .collect()
}

/// Inner distribution `n_k = μ⊗μ{(y, y′) ∈ S² : ρ(y − y′) = k} / μ(S)`.
pub fn inner_distribution(g: &ChainedGroup, set: &[usize]) -> Result<Vec<Rational>> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut counts = vec![0u64; g.depth() + 1];
    for &a in set {
        for &b in set {
            counts[g.distance(a, b)] += 1;
        }
    }
    let mu_s = g.mu_count(set.len());
    Ok(counts
        .into_iter()
        .map(|k| rational::uint(k) * g.mu_point() * g.mu_point() / &mu_s)
        .collect())
}

/// Delsarte values `Σ_k q_i(k) n_k`, which are nonnegative for every subset.
pub fn delsarte_check(c: &Carrier, set: &[usize]) -> Result<Vec<Rational>> {
    let n = inner_distribution(&c.group, set)?;
    let q = metric_scheme::q_closed(c);
    Ok(q.iter()
        .map(|row| row.iter().zip(&n).map(|(a, b)| a * b).sum())
        .collect())
}

/// True when the Delsarte values vanish on every dual radius in `t`.
pub fn is_t_design(c: &Carrier, set: &[usize], t: &[usize]) -> Result<bool> {
    let v = delsarte_check(c, set)?;
    Ok(t.iter().all(|&i| v.get(i).is_some_and(Zero::is_zero)))
}

/// Poisson summation `Σ_{y∈Y} f(y) μ = μ(Y) Σ_{φ∈Y^⊥} f̃(φ) μ̂`; returns the
/// absolute deviation.
pub fn poisson_deviation(c: &Carrier, y: &Code, f: &[Rational]) -> Result<f64> {
    let g = &c.group;
    let lhs: Rational = y.members.iter().map(|&x| &f[x]).sum::<Rational>() * g.mu_point();
    let ft = dual_fourier::fourier_forward(g, &c.dual, &GroupFunction::Rational(f.to_vec()))?;
    let yp = dual_code(c, y);
    let s: num_complex::Complex64 = yp.members.iter().map(|&e| ft[e]).sum();
    let rhs = s * rational::to_f64(c.dual.mu_hat_point()) * rational::to_f64(&g.mu_count(y.len()));
    Ok((rhs - rational::to_f64(&lhs)).norm())
}

/// One lexicographically smallest point per coset of `B(r)`, `r < d`.
pub fn perfect_code(g: &ChainedGroup, r: usize) -> Result<Vec<usize>> {
    if r >= g.depth() {
        return Err(Error::BoundaryRadius {
            radius: r,
            direction: "outer",
        });
    }
    Ok(wavelet_lp::quotient_reps(g, r))
}

/// Representatives of `B(r+1)/B(r)`, `r < d`: an equidistant code at
/// distance `r + 1`.
pub fn simplex_code(g: &ChainedGroup, r: usize) -> Result<Vec<usize>> {
    if r >= g.depth() {
        return Err(Error::BoundaryRadius {
            radius: r,
            direction: "outer",
        });
    }
    Ok(g.coset_reps(r + 1)?.to_vec())
}

/// Properties of a candidate perfect code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    /// Radius of the packing balls.
    pub radius: usize,
    /// Number of codewords.
    pub size: usize,
    /// Every point lies within distance `r` of exactly one codeword.
    pub tiles: bool,
    /// `|C|·μ(B(r)) = μ(X)`.
    pub packing_equality: bool,
    /// Minimum distance over distinct codewords.
    pub min_distance: Option<usize>,
    /// Minimum distance equals `τ_+(r) = r + 1`.
    pub min_distance_is_tau_plus: bool,
    /// Set of distances between distinct codewords.
    pub distances: BTreeSet<usize>,
    /// All distinct pairs are at one distance.
    pub equidistant: bool,
}

/// Checks tiling, sphere packing equality and the distance profile.
pub fn verify_perfect(g: &ChainedGroup, code: &[usize], r: usize) -> Result<PerfectReport> {
    let tp = g.tau_plus(r)?;
    let mut cover = vec![0u32; g.order()];
    for &c in code {
        for &b in g.ball(r) {
            cover[g.add(c, b)] += 1;
        }
    }
    let mut distances = BTreeSet::new();
    for (i, &a) in code.iter().enumerate() {
        for &b in &code[i + 1..] {
            distances.insert(g.distance(a, b));
        }
    }
    let min_distance = distances.iter().next().copied();
    Ok(PerfectReport {
        radius: r,
        size: code.len(),
        tiles: cover.iter().all(|&k| k == 1),
        packing_equality: rational::uint(code.len() as u64) * g.mu_ball(r) == g.mu_total(),
        min_distance,
        min_distance_is_tau_plus: min_distance == Some(tp),
        equidistant: distances.len() <= 1,
        distances,
    })
}

/// Random nonempty subsets with a seeded generator.
pub fn random_subsets(size: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.random_range(1..=size.min(12));
            let mut s: Vec<usize> = (0..k).map(|_| rng.random_range(0..size)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect()
}

fn subgroup_checks(c: &Carrier, y: &[usize]) -> Result<Vec<String>> {
    let g = &c.group;
    let h = c.hat();
    let code = Code::from_members(g, y)?;
    let yp = dual_code(c, &code);
    let mut f = Vec::new();
    if code.len() * yp.len() != g.order() {
        f.push(format!("|Y||Y^perp| for {y:?}"));
    }
    let m = weight_distribution(g, &code.members, Classes::Spheres);
    let mh = weight_distribution(h, &yp.members, Classes::Spheres);
    let t = macwilliams(c, &m, Direction::ToDual)?;
    if t != mh {
        f.push(format!("MacWilliams for {y:?}"));
    }
    if macwilliams(c, &mh, Direction::FromDual)? != m {
        f.push(format!("inverse MacWilliams for {y:?}"));
    }
    let mb = weight_distribution(g, &code.members, Classes::Blocks);
    let mhb = weight_distribution(h, &yp.members, Classes::Blocks);
    if macwilliams_blocks(c, &mb)? != mhb {
        f.push(format!("block MacWilliams for {y:?}"));
    }
    let lhs = delsarte_check(c, &code.members)?;
    let mu_y = g.mu_count(code.len());
    if lhs.iter().zip(&mh).any(|(a, b)| *a != b * &mu_y) {
        f.push(format!("Delsarte values for {y:?}"));
    }
    Ok(f)
}

/// Coding checks: exhaustive MacWilliams over all subgroups when
/// `|X| ≤ 64`, Delsarte nonnegativity on random subsets, Poisson summation
/// and perfect codes at every radius.
pub fn verify(c: &Carrier, tol: f64, seed: u64, subsets: usize) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let mut checks = Vec::new();
    let groups: Vec<Vec<usize>> = if g.order() <= 64 {
        g.all_subgroups()
    } else {
        (0..=d).map(|r| g.ball(r).to_vec()).collect()
    };
    let results = par::map_slice(&groups, |y| subgroup_checks(c, y));
    let mut fails = Vec::new();
    for r in results {
        fails.extend(r?);
    }
    checks.push(Check::from_failures("coding.macwilliams", &fails, groups.len()));

    let mut neg = Vec::new();
    for s in random_subsets(g.order(), subsets, seed) {
        if delsarte_check(c, &s)?.iter().any(Signed::is_negative) {
            neg.push(format!("{s:?}"));
        }
    }
    checks.push(Check::from_failures("coding.delsarte", &neg, subsets));

    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut dev: f64 = 0.0;
    for y in groups.iter().take(16) {
        let f = wavelet_lp::random_rational_function(g.order(), &mut rng);
        dev = dev.max(poisson_deviation(c, &Code::from_members(g, y)?, &f)?);
    }
    checks.push(Check::numeric("coding.poisson", dev, tol, "subgroups"));

    let mut pf = Vec::new();
    for r in 0..d {
        let rep = verify_perfect(g, &perfect_code(g, r)?, r)?;
        if !(rep.tiles && rep.packing_equality && rep.min_distance_is_tau_plus) {
            pf.push(format!("r={r}: {rep:?}"));
        }
        if rep.equidistant != (r + 1 == d) {
            pf.push(format!("r={r}: equidistance {}", rep.equidistant));
        }
        let s = verify_perfect(g, &simplex_code(g, r)?, r)?;
        if !s.equidistant {
            pf.push(format!("simplex r={r}"));
        }
    }
    checks.push(Check::from_failures("coding.perfect", &pf, d));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn diagonal_code_in_z2_squared() {
        let c = Carrier::build(&GroupSpec::rt(2, 2)).unwrap();
        let g = &c.group;
        let x = g.index_of(&[1, 1]).unwrap();
        let y = Code::generated(g, &[x]);
        assert_eq!(dual_code(&c, &y).len(), 2);
        let m = weight_distribution(g, &y.members, Classes::Spheres);
        assert!(m[1].is_zero());
    }

    #[test]
    fn trivial_code_dual_is_everything() {
        let c = Carrier::build(&GroupSpec::padic(3, 2)).unwrap();
        let y = Code::generated(&c.group, &[]);
        let m = weight_distribution(&c.group, &y.members, Classes::Spheres);
        let mh = macwilliams(&c, &m, Direction::ToDual).unwrap();
        assert_eq!(mh, weight_distribution(c.hat(), &(0..9).collect::<Vec<_>>(), Classes::Spheres));
    }

    #[test]
    fn z9_subgroup_three_is_self_sized() {
        let c = Carrier::build(&GroupSpec::padic(3, 2)).unwrap();
        let y = Code::generated(&c.group, &[3]);
        assert_eq!(y.len(), 3);
        assert_eq!(dual_code(&c, &y).len(), 3);
    }

    #[test]
    fn perfect_code_z2_squared() {
        let g = ChainedGroup::build(&GroupSpec::rt(2, 2)).unwrap();
        let code = perfect_code(&g, 1).unwrap();
        let rep = verify_perfect(&g, &code, 1).unwrap();
        assert_eq!(code.len(), 2);
        assert!(rep.tiles && rep.equidistant && rep.packing_equality);
        assert_eq!(rep.min_distance, Some(2));
    }

    #[test]
    fn empty_subset_is_rejected() {
        let c = Carrier::build(&GroupSpec::padic(2, 2)).unwrap();
        assert_eq!(delsarte_check(&c, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 2)).unwrap();
        assert_eq!(Code::from_members(&g, &[0, 1]), Err(Error::NotSubgroup));
    }

    #[test]
    fn suite_passes_on_z4_x_z2() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[4, 2])).unwrap();
        for ch in verify(&c, 1e-9, 1, 50).unwrap() {
            assert!(ch.passed, "{ch:?}");
        }
    }
}
