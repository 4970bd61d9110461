//! Finite truncations of zero-dimensional Abelian groups.
//!
//! A [`ChainedGroup`] is a product of cyclic groups `∏ Z_{m_k}` together
//! with a strictly decreasing chain of subgroups
//! `X = G_0 ⊃ G_1 ⊃ … ⊃ G_d = {0}`. Elements are enumerated explicitly and
//! identified with their mixed-radix index (first factor most significant),
//! so index order is the lexicographic order of residue vectors.
//!
//! Radii follow the finite convention `ρ(x) = d − ν(x)` where
//! `ν(x) = max{j : x ∈ G_j}`, so the ball of radius `r` is `G_{d−r}`.
//! The Haar measure gives every point the mass `μ({x}) = 1/|G_{j0}|` for a
//! base level `j0`: `0` for probability, `d` for counting, or the window
//! base for windowed and self-dual groups.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::spec::{GroupKind, GroupSpec, Normalization};
use num_integer::Integer;
use num_traits::One;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: u64 = 4096;

/// A subgroup given by its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    /// Member indices, ascending; always contains `0`.
    pub members: Vec<usize>,
    /// Generators as residue vectors.
    pub generators: Vec<Vec<u64>>,
}

/// Neighbouring radii and the index `n(r) = |B(r)/B(τ_−(r))|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadiusNav {
    /// `τ_−(r)`, absent for `r = 0`.
    pub tau_minus: Option<usize>,
    /// `τ_+(r)`, absent for `r = r̄`.
    pub tau_plus: Option<usize>,
    /// `n(r)`, absent for `r = 0`.
    pub n: Option<u64>,
}

#[derive(Debug, Clone)]
struct CosetLevel {
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// A finite Abelian group with a subgroup chain, cosets and Haar measure.
#[derive(Debug, Clone)]
pub struct ChainedGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
    exponent: u64,
    levels: Vec<Vec<usize>>,
    nu: Vec<u16>,
    base_level: usize,
    cell: Rational,
    cosets: Vec<CosetLevel>,
    spec: Option<GroupSpec>,
}

fn checked_order(orders: &[u64], cap: u64) -> Result<usize> {
    let mut n: u64 = 1;
    for &m in orders {
        n = n.checked_mul(m).ok_or(Error::CapExceeded {
            order: u64::MAX,
            cap,
        })?;
    }
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    Ok(n as usize)
}

impl ChainedGroup {
    /// Builds the group described by `spec` with the default cap.
    pub fn build(spec: &GroupSpec) -> Result<ChainedGroup> {
        Self::build_with_cap(spec, DEFAULT_CAP)
    }

    /// Builds the group described by `spec`, refusing more than `cap` elements.
    pub fn build_with_cap(spec: &GroupSpec, cap: u64) -> Result<ChainedGroup> {
        let (orders, levels, base) = chain_of(spec, cap)?;
        let base = match (spec.is_windowed(), spec.normalization, base) {
            (true, _, b) => b,
            (false, Normalization::Probability, _) => 0,
            (false, Normalization::Counting, _) => levels.len() - 1,
        };
        let mut g = Self::from_levels(orders, levels, base)?;
        g.spec = Some(spec.clone());
        Ok(g)
    }

    /// Builds a group from explicit level member lists `G_0, …, G_d`.
    ///
    /// `levels[0]` must be the whole group and the last level `{0}`; every
    /// level must be a subgroup strictly contained in the previous one.
    pub fn from_levels(
        orders: Vec<u64>,
        mut levels: Vec<Vec<usize>>,
        base_level: usize,
    ) -> Result<ChainedGroup> {
        let size: usize = orders.iter().product::<u64>() as usize;
        let mut strides = vec![1usize; orders.len()];
        for k in (0..orders.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * orders[k + 1] as usize;
        }
        let exponent = orders.iter().fold(1u64, |a, &m| a.lcm(&m));
        for l in levels.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        if levels.len() < 2 {
            return Err(Error::Spec {
                path: "/".into(),
                message: "chain must have at least one proper level".into(),
            });
        }
        if levels[0].len() != size {
            return Err(Error::NotNested {
                level: 0,
                parent: 0,
            });
        }
        let d = levels.len() - 1;
        for j in 1..=d {
            let parent: std::collections::HashSet<usize> = levels[j - 1].iter().copied().collect();
            if !levels[j].iter().all(|x| parent.contains(x)) {
                return Err(Error::NotNested {
                    level: j,
                    parent: j - 1,
                });
            }
            if levels[j].len() == levels[j - 1].len() {
                return Err(Error::NotStrict {
                    upper: j - 1,
                    lower: j,
                });
            }
        }
        if levels[d] != vec![0] {
            return Err(Error::Spec {
                path: "/".into(),
                message: "last chain level must be trivial".into(),
            });
        }
        if base_level > d {
            return Err(Error::Spec {
                path: "/base_index".into(),
                message: format!("base index {base_level} exceeds chain length {d}"),
            });
        }
        let mut nu = vec![0u16; size];
        for (j, l) in levels.iter().enumerate() {
            for &x in l {
                nu[x] = j as u16;
            }
        }
        let cell = Rational::new(1.into(), (levels[base_level].len() as u64).into());
        let mut g = ChainedGroup {
            orders,
            strides,
            size,
            exponent,
            levels,
            nu,
            base_level,
            cell,
            cosets: Vec::new(),
            spec: None,
        };
        for l in 1..d {
            if g.levels[l].len() <= 2048 && !g.is_subgroup(&g.levels[l]) {
                return Err(Error::NotSubgroup);
            }
        }
        g.cosets = (0..=d).map(|r| g.coset_level(r)).collect();
        Ok(g)
    }

    fn coset_level(&self, r: usize) -> CosetLevel {
        let mut coset_of = vec![NONE; self.size];
        let mut reps = Vec::new();
        if r == 0 {
            coset_of[0] = 0;
            reps.push(0);
            return CosetLevel { reps, coset_of };
        }
        let inner = &self.levels[self.depth() - r + 1];
        for &x in self.ball(r) {
            if coset_of[x] == NONE {
                let i = reps.len() as u32;
                reps.push(x);
                for &y in inner {
                    coset_of[self.add(x, y)] = i;
                }
            }
        }
        CosetLevel { reps, coset_of }
    }

    /// Group spec used to build the group, if any.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    /// Display label.
    pub fn label(&self) -> String {
        self.spec
            .as_ref()
            .map(GroupSpec::label)
            .unwrap_or_else(|| format!("group{:?}", self.orders))
    }

    /// Orders `m_k` of the cyclic factors.
    pub fn factor_orders(&self) -> &[u64] {
        &self.orders
    }

    /// `|X|`.
    pub fn order(&self) -> usize {
        self.size
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Chain length `d`, also the largest radius `r̄`.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Level whose subgroup has unit measure.
    pub fn base_level(&self) -> usize {
        self.base_level
    }

    /// True unless the measure is the probability measure.
    pub fn is_windowed(&self) -> bool {
        self.spec.as_ref().is_some_and(GroupSpec::is_windowed)
    }

    /// Residue vector of an element index.
    pub fn residues(&self, x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| ((x / s) as u64) % m)
            .collect()
    }

    /// Index of a residue vector, reducing entries mod `m_k`.
    pub fn index_of(&self, residues: &[i64]) -> Result<usize> {
        if residues.len() != self.orders.len() {
            return Err(Error::ElementShape {
                got: residues.len(),
                expected: self.orders.len(),
            });
        }
        Ok(residues
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&r, &m), &s)| r.rem_euclid(m as i64) as usize * s)
            .sum())
    }

    /// `a + b`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let m = m as usize;
            out += (((a / s) % m + (b / s) % m) % m) * s;
        }
        out
    }

    /// `−a`.
    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let m = m as usize;
            out += ((m - (a / s) % m) % m) * s;
        }
        out
    }

    /// `a − b`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let m = m as usize;
            out += (((a / s) % m + m - (b / s) % m) % m) * s;
        }
        out
    }

    /// Phase numerator over [`exponent`](Self::exponent) of the character
    /// with exponent vector `e` (an element index) evaluated at `x`:
    /// `Σ_k e_k x_k / m_k mod 1`.
    pub fn pairing(&self, e: usize, x: usize) -> u64 {
        let n = self.exponent;
        let mut acc = 0u64;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let ek = ((e / s) as u64) % m;
            let xk = ((x / s) as u64) % m;
            acc = (acc + (ek * xk % m) * (n / m)) % n;
        }
        acc
    }

    /// Members of the chain level `G_j`.
    pub fn level(&self, j: usize) -> &[usize] {
        &self.levels[j]
    }

    /// `n_j = |G_{j−1}/G_j|` for `j = 1..=d`.
    pub fn index_n(&self, j: usize) -> u64 {
        (self.levels[j - 1].len() / self.levels[j].len()) as u64
    }

    /// `ω(j) = ∏_{i≤j} n_i = |X/G_j|`.
    pub fn omega(&self, j: usize) -> u64 {
        (self.size / self.levels[j].len()) as u64
    }

    /// `t(j) = 1/ω(j)`.
    pub fn t(&self, j: usize) -> Rational {
        Rational::new(1.into(), self.omega(j).into())
    }

    /// Valuation `ν(x) = max{j : x ∈ G_j}`; `None` stands for `ν(0) = ∞`.
    pub fn valuation(&self, x: usize) -> Option<usize> {
        (x != 0).then(|| self.nu[x] as usize)
    }

    /// Radius `ρ(x) = d − ν(x)`, with `ρ(0) = 0`.
    pub fn radius(&self, x: usize) -> usize {
        self.depth() - self.nu[x] as usize
    }

    /// Distance `ρ(x − y)`.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.radius(self.sub(x, y))
    }

    /// `ρ_0(x) = 1/|X/X_{ν(x)}|`, zero at the identity.
    pub fn rho0(&self, x: usize) -> Rational {
        match self.valuation(x) {
            None => Rational::from_integer(0.into()),
            Some(j) => self.t(j),
        }
    }

    fn check_radius(&self, r: usize) -> Result<()> {
        if r > self.depth() {
            Err(Error::RadiusOutOfRange {
                radius: r,
                max: self.depth(),
            })
        } else {
            Ok(())
        }
    }

    /// Members of the ball `B(r) = G_{d−r}`.
    pub fn ball(&self, r: usize) -> &[usize] {
        &self.levels[self.depth() - r]
    }

    /// Ball as a [`Subgroup`].
    pub fn ball_subgroup(&self, r: usize) -> Result<Subgroup> {
        self.check_radius(r)?;
        let members = self.ball(r).to_vec();
        let generators = if r == 0 {
            vec![]
        } else {
            self.coset_reps(r)?
                .iter()
                .skip(1)
                .map(|&z| self.residues(z))
                .chain(
                    self.coset_reps(r - 1)
                        .map(|v| v.iter().skip(1).map(|&z| self.residues(z)).collect::<Vec<_>>())
                        .unwrap_or_default(),
                )
                .collect()
        };
        Ok(Subgroup {
            members,
            generators,
        })
    }

    /// `|B(r)|`.
    pub fn ball_size(&self, r: usize) -> usize {
        self.ball(r).len()
    }

    /// Elements at distance exactly `r` from `0`.
    pub fn sphere(&self, r: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.radius(x) == r).collect()
    }

    /// `|S(r)|`.
    pub fn sphere_size(&self, r: usize) -> usize {
        if r == 0 {
            1
        } else {
            self.ball_size(r) - self.ball_size(r - 1)
        }
    }

    /// `τ_−(r) = r − 1`.
    pub fn tau_minus(&self, r: usize) -> Result<usize> {
        self.check_radius(r)?;
        r.checked_sub(1).ok_or(Error::BoundaryRadius {
            radius: r,
            direction: "lower",
        })
    }

    /// `τ_+(r) = r + 1`.
    pub fn tau_plus(&self, r: usize) -> Result<usize> {
        self.check_radius(r)?;
        if r == self.depth() {
            Err(Error::BoundaryRadius {
                radius: r,
                direction: "upper",
            })
        } else {
            Ok(r + 1)
        }
    }

    /// `n(r) = |B(r)/B(τ_−(r))|`.
    pub fn n(&self, r: usize) -> Result<u64> {
        let m = self.tau_minus(r)?;
        Ok((self.ball_size(r) / self.ball_size(m)) as u64)
    }

    /// All neighbour data of a radius.
    pub fn radius_nav(&self, r: usize) -> Result<RadiusNav> {
        self.check_radius(r)?;
        Ok(RadiusNav {
            tau_minus: self.tau_minus(r).ok(),
            tau_plus: self.tau_plus(r).ok(),
            n: self.n(r).ok(),
        })
    }

    /// Display label `2^{−(d−r)}` of a radius, `0` for `r = 0`.
    pub fn dyadic_label(&self, r: usize) -> Rational {
        if r == 0 {
            rational::int(0)
        } else {
            Rational::new(1.into(), (1u64 << (self.depth() - r)).into())
        }
    }

    /// Mass of a single point.
    pub fn mu_point(&self) -> &Rational {
        &self.cell
    }

    /// Measure of a set with `count` points.
    pub fn mu_count(&self, count: usize) -> Rational {
        &self.cell * rational::uint(count as u64)
    }

    /// `μ(X)`.
    pub fn mu_total(&self) -> Rational {
        self.mu_count(self.size)
    }

    /// `μ(B(r))`.
    pub fn mu_ball(&self, r: usize) -> Rational {
        self.mu_count(self.ball_size(r))
    }

    /// `μ(S(r))`.
    pub fn mu_sphere(&self, r: usize) -> Rational {
        self.mu_count(self.sphere_size(r))
    }

    /// Representatives `z_{0,r}, …, z_{n(r)−1,r}` of `B(r)/B(τ_−(r))`,
    /// lexicographically smallest in each coset, with `z_{0,r} = 0`.
    pub fn coset_reps(&self, r: usize) -> Result<&[usize]> {
        self.tau_minus(r)?;
        Ok(&self.cosets[r].reps)
    }

    /// Index `i` of the coset `x + B(τ_−(r))` in `B(r)`; `None` if `x ∉ B(r)`.
    pub fn coset_index(&self, r: usize, x: usize) -> Option<usize> {
        match self.cosets.get(r)?.coset_of[x] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    /// Ball-partition block `(r, i)` containing `x`: `x ∈ B(r−1) + z_{i,r}`.
    pub fn block_of(&self, x: usize) -> (usize, usize) {
        let r = self.radius(x);
        if r == 0 {
            (0, 0)
        } else {
            (r, self.cosets[r].coset_of[x] as usize)
        }
    }

    /// Position `λ(x) = Σ_j t(j) N(z_j) ∈ [0, 1)` of `x` on the unit interval,
    /// where `z_j` is the coset of `G_j` in `G_{j−1}` visited by `x` and `N`
    /// numbers the cosets in lexicographic order of their representatives.
    pub fn lambda(&self, x: usize) -> Rational {
        let d = self.depth();
        let mut acc = rational::int(0);
        let mut rest = x;
        for j in 1..=d {
            let r = d - j + 1;
            let i = self.cosets[r].coset_of[rest] as usize;
            acc += self.t(j) * rational::uint(i as u64);
            rest = self.sub(rest, self.cosets[r].reps[i]);
        }
        debug_assert_eq!(rest, 0);
        acc
    }

    /// Closure of a generator set under addition, ascending.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when the sorted set is closed under addition and negation.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.size];
        for &x in set {
            mark[x] = true;
        }
        mark[0]
            && set.iter().all(|&a| mark[self.neg(a)])
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| mark[self.add(a, b)]))
    }

    /// Exhaustive enumeration of all subgroups, each as an ascending list.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        let mut work = vec![vec![0usize]];
        found.insert(vec![0]);
        while let Some(h) = work.pop() {
            let mut mark = vec![false; self.size];
            for &x in &h {
                mark[x] = true;
            }
            for (g, &seen) in mark.iter().enumerate() {
                if seen {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.subgroup_closure(&gens);
                if found.insert(k.clone()) {
                    work.push(k);
                }
            }
        }
        found.into_iter().collect()
    }

    /// True when the probability or window measure of `G_{j0}` is one.
    pub fn base_has_unit_measure(&self) -> bool {
        self.mu_count(self.levels[self.base_level].len()).is_one()
    }
}

type Chain = (Vec<u64>, Vec<Vec<usize>>, usize);

fn string_chain(orders: Vec<u64>, cap: u64) -> Result<Chain> {
    let size = checked_order(&orders, cap)?;
    let d = orders.len();
    let mut strides = vec![1usize; d];
    for k in (0..d.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * orders[k + 1] as usize;
    }
    let levels = (0..=d)
        .map(|j| {
            let block = if j == 0 { size } else { strides[j - 1] };
            (0..block).collect()
        })
        .collect();
    Ok((orders, levels, 0))
}

fn chain_of(spec: &GroupSpec, cap: u64) -> Result<Chain> {
    match &spec.kind {
        GroupKind::Vilenkin { orders } => string_chain(orders.clone(), cap),
        GroupKind::Rt { q, n } => string_chain(vec![*q; *n as usize], cap),
        GroupKind::Padic { p, d } => {
            let m = p.checked_pow(*d).ok_or(Error::CapExceeded {
                order: u64::MAX,
                cap,
            })?;
            let size = checked_order(&[m], cap)?;
            let levels = (0..=*d)
                .map(|j| (0..size).step_by(p.pow(j) as usize).collect())
                .collect();
            Ok((vec![m], levels, 0))
        }
        GroupKind::Custom {
            factor_orders,
            chain_generators,
        } => {
            let size = checked_order(factor_orders, cap)?;
            let ambient = ChainedGroup {
                orders: factor_orders.clone(),
                strides: {
                    let mut s = vec![1usize; factor_orders.len()];
                    for k in (0..factor_orders.len().saturating_sub(1)).rev() {
                        s[k] = s[k + 1] * factor_orders[k + 1] as usize;
                    }
                    s
                },
                size,
                exponent: 1,
                levels: vec![],
                nu: vec![],
                base_level: 0,
                cell: Rational::one(),
                cosets: vec![],
                spec: None,
            };
            let mut levels = vec![(0..size).collect::<Vec<_>>()];
            for gens in chain_generators {
                let idx = gens
                    .iter()
                    .map(|g| ambient.index_of(g))
                    .collect::<Result<Vec<_>>>()?;
                levels.push(ambient.subgroup_closure(&idx));
            }
            if levels.last().map(|l| l.len()) != Some(1) {
                levels.push(vec![0]);
            }
            Ok((factor_orders.clone(), levels, 0))
        }
        GroupKind::Windowed { inner, base_index } => {
            let (orders, levels, _) = chain_of(inner, cap)?;
            if *base_index >= levels.len() {
                return Err(Error::Spec {
                    path: "/base_index".into(),
                    message: format!(
                        "base index {base_index} exceeds chain length {}",
                        levels.len() - 1
                    ),
                });
            }
            Ok((orders, levels, *base_index))
        }
        GroupKind::SelfDual { inner } => {
            let (orders, levels, _) = chain_of(inner, cap)?;
            let inner_size = levels[0].len();
            checked_order(&[inner_size as u64, inner_size as u64], cap)?;
            let g = ChainedGroup::from_levels(orders.clone(), levels.clone(), 0)?;
            let d = g.depth();
            let ann: Vec<Vec<usize>> = (0..=d)
                .map(|j| {
                    (0..inner_size)
                        .filter(|&e| g.level(j).iter().all(|&x| g.pairing(e, x) == 0))
                        .collect()
                })
                .collect();
            let mut out_levels = Vec::with_capacity(2 * d + 1);
            for k in 0..=d {
                let mut l = Vec::with_capacity(inner_size * ann[d - k].len());
                for x in 0..inner_size {
                    for &e in &ann[d - k] {
                        l.push(x * inner_size + e);
                    }
                }
                out_levels.push(l);
            }
            for j in 1..=d {
                out_levels.push(g.level(j).iter().map(|&x| x * inner_size).collect());
            }
            let mut all_orders = orders.clone();
            all_orders.extend(orders);
            Ok((all_orders, out_levels, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn z(orders: &[u64]) -> ChainedGroup {
        ChainedGroup::build(&GroupSpec::vilenkin(orders)).unwrap()
    }

    #[test]
    fn vilenkin_chain_sizes() {
        let g = z(&[2, 2]);
        assert_eq!(g.order(), 4);
        assert_eq!(
            (0..=2).map(|j| g.level(j).len()).collect::<Vec<_>>(),
            vec![4, 2, 1]
        );
        assert_eq!(g.mu_count(g.level(1).len()), ratio(1, 2));
    }

    #[test]
    fn padic_chain() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 2)).unwrap();
        assert_eq!(g.level(1), &[0, 2]);
        assert_eq!(g.index_n(1), 2);
        assert_eq!(g.index_n(2), 2);
        assert_eq!(g.valuation(2), Some(1));
        assert_eq!(g.radius(2), 1);
        assert_eq!(g.valuation(0), None);
        assert_eq!(g.radius(0), 0);
        assert_eq!(g.sphere(2), vec![1, 3]);
        assert_eq!(g.n(2).unwrap(), 2);
        assert_eq!(g.lambda(3), ratio(3, 4));
        assert_eq!(g.lambda(0), ratio(0, 1));
        assert_eq!(g.rho0(1), ratio(1, 1));
        assert_eq!(g.rho0(2), ratio(1, 2));
    }

    #[test]
    fn rt_radius_and_cosets() {
        let g = ChainedGroup::build(&GroupSpec::rt(2, 2)).unwrap();
        let x = g.index_of(&[1, 0]).unwrap();
        assert_eq!(g.radius(x), 2);
        let reps: Vec<Vec<u64>> = g
            .coset_reps(2)
            .unwrap()
            .iter()
            .map(|&z| g.residues(z))
            .collect();
        assert_eq!(reps, vec![vec![0, 0], vec![1, 0]]);
        assert!(g.coset_reps(0).is_err());
        let h = ChainedGroup::build(&GroupSpec::rt(3, 2)).unwrap();
        assert_eq!(h.sphere_size(1), 2);
    }

    #[test]
    fn boundary_radii() {
        let g = z(&[3, 2]);
        assert!(matches!(g.tau_minus(0), Err(Error::BoundaryRadius { .. })));
        assert!(matches!(g.tau_plus(2), Err(Error::BoundaryRadius { .. })));
        assert_eq!(g.tau_plus(1).unwrap(), 2);
        assert!(g.radius_nav(5).is_err());
    }

    #[test]
    fn custom_chain_validation() {
        let ok = GroupSpec::custom(&[4, 2], vec![vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]]);
        let g = ChainedGroup::build(&ok).unwrap();
        assert_eq!(g.depth(), 3);
        let flat = GroupSpec::custom(&[4], vec![vec![vec![1]]]);
        assert!(matches!(
            ChainedGroup::build(&flat),
            Err(Error::NotStrict { .. })
        ));
        let skew = GroupSpec::custom(&[2, 2], vec![vec![vec![1, 0]], vec![vec![0, 1]]]);
        assert!(matches!(
            ChainedGroup::build(&skew),
            Err(Error::NotNested { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            ChainedGroup::build_with_cap(&GroupSpec::rt(2, 10), 512),
            Err(Error::CapExceeded { order: 1024, .. })
        ));
    }

    #[test]
    fn selfdual_and_windowed_measures() {
        let g = ChainedGroup::build(&GroupSpec::selfdual(GroupSpec::padic(2, 2))).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.depth(), 4);
        assert_eq!(g.mu_count(g.level(2).len()), ratio(1, 1));
        let w = ChainedGroup::build(&GroupSpec::windowed(GroupSpec::rt(3, 2), 1)).unwrap();
        assert_eq!(w.mu_total(), ratio(3, 1));
        assert!(w.base_has_unit_measure());
        assert!(ChainedGroup::build(&GroupSpec::windowed(GroupSpec::rt(3, 2), 3)).is_err());
    }

    #[test]
    fn subgroup_enumeration_counts() {
        assert_eq!(z(&[2, 2]).all_subgroups().len(), 5);
        let g = ChainedGroup::build(&GroupSpec::padic(3, 2)).unwrap();
        assert_eq!(g.all_subgroups().len(), 3);
    }
}
