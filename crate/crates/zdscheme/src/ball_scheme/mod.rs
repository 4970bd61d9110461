//! The nonmetric translation scheme of ball cosets.
//!
//! Each sphere `S(r)`, `r ≥ 1`, splits into the cosets
//! `Φ_i(r) = z_{i,r} + B(r−1)`, `i = 1..n(r)−1`, where `z_{i,r}` are the
//! lexicographically smallest representatives of `B(r)/B(r−1)`. Together with
//! `{0}` these blocks partition `X`; the dual blocks `Φ̂_j(t)` partition `X̂`
//! in the same way. The two partitions are spectrally dual.

pub mod schur;

use crate::dual_fourier::Carrier;
use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::oracle::{self, IntersectionTensor, WitnessMode};
use crate::phase::{CycloSum, Phase, Phased};
use crate::rational::{self, Rational};
use crate::report::Check;
use num_traits::Zero;

/// Dense numbering of the blocks `(0,0)` and `(r, i)`, radius ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIndex {
    offsets: Vec<usize>,
    labels: Vec<(usize, usize)>,
}

impl BlockIndex {
    /// Numbering of the blocks of `g`.
    pub fn new(g: &ChainedGroup) -> BlockIndex {
        let d = g.depth();
        let mut offsets = vec![0, 1];
        let mut labels = vec![(0, 0)];
        for r in 1..=d {
            let n = g.n(r).expect("radius in range") as usize;
            labels.extend((1..n).map(|i| (r, i)));
            offsets.push(labels.len());
        }
        BlockIndex { offsets, labels }
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; `{0}` is a block.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Dense id of block `(r, i)`.
    pub fn id(&self, r: usize, i: usize) -> Option<usize> {
        if r == 0 {
            return (i == 0).then_some(0);
        }
        let lo = *self.offsets.get(r)?;
        let hi = *self.offsets.get(r + 1)?;
        (i >= 1 && lo + i - 1 < hi).then(|| lo + i - 1)
    }

    /// Label `(r, i)` of a dense id.
    pub fn label(&self, id: usize) -> (usize, usize) {
        self.labels[id]
    }

    /// All labels in id order.
    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Block id of every element.
    pub fn element_labels(&self, g: &ChainedGroup) -> Vec<u32> {
        (0..g.order())
            .map(|x| {
                let (r, i) = g.block_of(x);
                self.id(r, i).expect("block exists") as u32
            })
            .collect()
    }
}

/// Representative `z_{i,r}` of block `(r, i)`.
pub fn block_rep(g: &ChainedGroup, (r, i): (usize, usize)) -> usize {
    if r == 0 {
        0
    } else {
        g.coset_reps(r).expect("radius in range")[i]
    }
}

/// Measure of block `(r, i)`: `μ(B(r−1))`, or `μ({0})` for `r = 0`.
pub fn block_valency(g: &ChainedGroup, (r, _): (usize, usize)) -> Rational {
    if r == 0 {
        g.mu_ball(0)
    } else {
        g.mu_ball(r - 1)
    }
}

/// Elements of block `(r, i)`.
pub fn block_members(g: &ChainedGroup, (r, i): (usize, usize)) -> Vec<usize> {
    if r == 0 {
        return vec![0];
    }
    g.ball(r)
        .iter()
        .copied()
        .filter(|&x| g.radius(x) == r && g.coset_index(r, x) == Some(i))
        .collect()
}

/// Matrix `ω(r)_{ij} = conj θ_{j,d−r+1}(z_{i,r})` for `i, j = 0..n(r)`.
pub fn omega_matrix(c: &Carrier, r: usize) -> Result<Vec<Vec<Phase>>> {
    let g = &c.group;
    let d = g.depth();
    if r == 0 || r > d {
        return Err(Error::RadiusOutOfRange { radius: r, max: d });
    }
    let zs = g.coset_reps(r)?;
    let thetas = c.hat().coset_reps(d - r + 1)?;
    Ok(zs
        .iter()
        .map(|&z| thetas.iter().map(|&th| c.dual.phase(g, th, z).conj()).collect())
        .collect())
}

/// Unitarity `ω ω^* = n I` and the block-count match `n(r) = n̂(d−r+1)`.
pub fn omega_checks(c: &Carrier) -> Result<Vec<Check>> {
    let g = &c.group;
    let d = g.depth();
    let n_exp = g.exponent();
    let mut fails = Vec::new();
    let mut count_fails = Vec::new();
    for r in 1..=d {
        if g.n(r)? != c.hat().n(d - r + 1)? {
            count_fails.push(format!("r={r}"));
        }
        let w = omega_matrix(c, r)?;
        let n = w.len();
        for i in 0..n {
            for j in 0..n {
                let mut s = CycloSum::zero(n_exp);
                for (a, b) in w[i].iter().zip(&w[j]) {
                    s.add_term(&rational::int(1), *a + b.conj());
                }
                let want = CycloSum::from_rational(n_exp, rational::int(if i == j { n as i64 } else { 0 }));
                if !s.equals(&want) {
                    fails.push(format!("r={r}, ({i},{j})"));
                }
            }
        }
    }
    Ok(vec![
        Check::from_failures("ball.omega_unitary", &fails, d),
        Check::from_failures("ball.omega_size", &count_fails, d),
    ])
}

/// Closed-form first eigenvalues `P[a][b]` over primal blocks `a`, dual blocks `b`.
///
/// Row `(0,0)` is `μ({0})`. For `a = (r, i)` the value at `b = (t, j)` is
/// `μ(B(r−1))` when `t ≤ d − r`, `μ(B(r−1))·conj θ_{j,t}(z_{i,r})` when
/// `t = d − r + 1`, and `0` beyond.
pub fn p_closed(c: &Carrier) -> Vec<Vec<Phased>> {
    block_eigen_closed(&c.group, c.hat(), c, true)
}

/// Closed-form second eigenvalues `Q[b][a]`.
///
/// Row `(0,0)` is `μ̂({1})`. For `b = (t, j)` the value at `a = (r, i)` is
/// `μ̂(B̂(t−1))` when `r ≤ d − t`, `μ̂(B̂(t−1))·θ_{j,t}(z_{i,r})` when
/// `r = d − t + 1`, and `0` beyond.
pub fn q_closed(c: &Carrier) -> Vec<Vec<Phased>> {
    block_eigen_closed(c.hat(), &c.group, c, false)
}

fn block_eigen_closed(
    rows: &ChainedGroup,
    cols: &ChainedGroup,
    c: &Carrier,
    conj: bool,
) -> Vec<Vec<Phased>> {
    let d = rows.depth();
    let ri = BlockIndex::new(rows);
    let ci = BlockIndex::new(cols);
    ri.labels()
        .iter()
        .map(|&(r, i)| {
            ci.labels()
                .iter()
                .map(|&(t, j)| {
                    if r == 0 {
                        return Phased::real(rows.mu_ball(0));
                    }
                    let m = rows.mu_ball(r - 1);
                    if t + r <= d {
                        Phased::real(m)
                    } else if t + r == d + 1 {
                        let z = block_rep(rows, (r, i));
                        let th = block_rep(cols, (t, j));
                        let ph = Phase::new(c.group.pairing(z, th) as i64, c.group.exponent());
                        Phased::new(m, if conj { ph.conj() } else { ph })
                    } else {
                        Phased::real(Rational::zero())
                    }
                })
                .collect()
        })
        .collect()
}

/// `P` by character sums over every block, checking constancy on dual blocks.
pub fn p_oracle(c: &Carrier) -> Result<Vec<Vec<CycloSum>>> {
    let g = &c.group;
    let bi = BlockIndex::new(g);
    let hi = BlockIndex::new(c.hat());
    oracle::class_transform_table(
        g.exponent(),
        |e, x| g.pairing(e, x),
        &bi.element_labels(g),
        bi.len(),
        &hi.element_labels(c.hat()),
        hi.len(),
        true,
        g.mu_point(),
    )
}

/// `Q` by character sums over every dual block, checking constancy on blocks.
pub fn q_oracle(c: &Carrier) -> Result<Vec<Vec<CycloSum>>> {
    let g = &c.group;
    let bi = BlockIndex::new(g);
    let hi = BlockIndex::new(c.hat());
    oracle::class_transform_table(
        g.exponent(),
        |x, e| g.pairing(e, x),
        &hi.element_labels(c.hat()),
        hi.len(),
        &bi.element_labels(g),
        bi.len(),
        false,
        c.dual.mu_hat_point(),
    )
}

/// Closed-form intersection number for blocks `a`, `b`, `c`.
///
/// With `m` the largest radius: a unique maximum gives `0`; `r_a = r_b = m`
/// above `r_c` needs `z_b ≡ −z_a`; one of `a`, `b` at `m` together with `c`
/// needs equal cosets and gives the valency of the smaller block; three
/// blocks at `m` need `z_a + z_b ≡ z_c`. Nonzero values are block valencies.
pub fn intersection_closed(
    g: &ChainedGroup,
    a: (usize, usize),
    b: (usize, usize),
    c: (usize, usize),
) -> Rational {
    let (r1, i1) = a;
    let (r2, i2) = b;
    let (r3, i3) = c;
    let m = r1.max(r2).max(r3);
    if m == 0 {
        return g.mu_ball(0);
    }
    let at_max = [r1, r2, r3].iter().filter(|&&r| r == m).count();
    let coset = |x: usize| g.coset_index(m, x).expect("inside B(m)");
    let hit = |ok: bool, v: Rational| if ok { v } else { Rational::zero() };
    match at_max {
        1 => Rational::zero(),
        2 if r3 < m => {
            let z1 = block_rep(g, a);
            let z2 = block_rep(g, b);
            hit(coset(g.add(z1, z2)) == 0, g.mu_ball(m - 1))
        }
        2 if r1 < m => hit(i2 == i3, block_valency(g, a)),
        2 => hit(i1 == i3, block_valency(g, b)),
        _ => {
            let s = g.add(block_rep(g, a), block_rep(g, b));
            hit(coset(s) == i3, g.mu_ball(m - 1))
        }
    }
}

/// Closed-form intersection tensor over dense block ids.
pub fn intersection_tensor_closed(g: &ChainedGroup) -> IntersectionTensor {
    let bi = BlockIndex::new(g);
    let l = bi.len();
    let mut t = IntersectionTensor::zeros(l);
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                t.set(a, b, c, intersection_closed(g, bi.label(a), bi.label(b), bi.label(c)));
            }
        }
    }
    t
}

/// Intersection tensor by witness counting.
pub fn intersection_oracle(g: &ChainedGroup, mode: WitnessMode) -> Result<IntersectionTensor> {
    let bi = BlockIndex::new(g);
    oracle::witness_tensor(g, &bi.element_labels(g), bi.len(), mode)
}

/// True when every block is closed under negation, by enumeration.
pub fn is_symmetric(g: &ChainedGroup) -> bool {
    (0..g.order()).all(|x| g.block_of(x) == g.block_of(g.neg(x)))
}

/// Symmetry read off the closed eigenvalues: all of them real.
pub fn is_symmetric_spectral(c: &Carrier) -> bool {
    p_closed(c)
        .iter()
        .flatten()
        .all(|p| p.to_rational().is_some())
}

fn sum_is(acc: &CycloSum, want: &Rational) -> bool {
    acc.equals(&CycloSum::from_rational(acc.order(), want.clone()))
}

/// Orthogonality, duality and inversion identities of the closed tables.
pub fn identity_checks(c: &Carrier) -> Vec<Check> {
    let g = &c.group;
    let h = c.hat();
    let n = g.exponent();
    let bi = BlockIndex::new(g);
    let hi = BlockIndex::new(h);
    let p = p_closed(c);
    let q = q_closed(c);
    let v: Vec<Rational> = bi.labels().iter().map(|&a| block_valency(g, a)).collect();
    let vh: Vec<Rational> = hi.labels().iter().map(|&b| block_valency(h, b)).collect();
    let (la, lb) = (bi.len(), hi.len());
    let mut checks = Vec::new();
    checks.push(Check::exact(
        "ball.block_counts",
        la == lb,
        format!("{la} blocks, {lb} dual blocks"),
    ));
    if la != lb {
        return checks;
    }
    let l = la;
    let zero = Rational::zero();
    let dot = |x: &[Phased], y: &[Phased], conj: bool, w: &[Rational]| {
        let mut acc = CycloSum::zero(n);
        for k in 0..x.len() {
            let yk = if conj { y[k].conj() } else { y[k].clone() };
            let t = x[k].mul(&yk);
            acc.add_term(&(&t.mag * &w[k]), t.phase);
        }
        acc
    };
    let mut po = Vec::new();
    let mut qo = Vec::new();
    let mut pq = Vec::new();
    let mut mv = Vec::new();
    for a1 in 0..l {
        for a2 in 0..l {
            let want = if a1 == a2 { v[a1].clone() } else { zero.clone() };
            if !sum_is(&dot(&p[a1], &p[a2], true, &vh), &want) {
                po.push(format!("P rows {a1},{a2}"));
            }
            let want = if a1 == a2 { vh[a1].clone() } else { zero.clone() };
            if !sum_is(&dot(&q[a1], &q[a2], true, &v), &want) {
                qo.push(format!("Q rows {a1},{a2}"));
            }
            let delta = rational::int((a1 == a2) as i64);
            let col: Vec<Phased> = (0..l).map(|k| q[k][a2].clone()).collect();
            let ones = vec![rational::int(1); l];
            if !sum_is(&dot(&p[a1], &col, false, &ones), &delta) {
                pq.push(format!("PQ ({a1},{a2})"));
            }
            let col: Vec<Phased> = (0..l).map(|k| p[k][a2].clone()).collect();
            if !sum_is(&dot(&q[a1], &col, false, &ones), &delta) {
                pq.push(format!("QP ({a1},{a2})"));
            }
            let lhs = Phased::new(&p[a1][a2].mag * &vh[a2], p[a1][a2].phase);
            let rhs = q[a2][a1].conj();
            let rhs = Phased::new(&rhs.mag * &v[a1], rhs.phase);
            if lhs != rhs {
                mv.push(format!("({a1},{a2})"));
            }
        }
    }
    let cases = l * l;
    checks.push(Check::from_failures("ball.p_orthogonality", &po, cases));
    checks.push(Check::from_failures("ball.q_orthogonality", &qo, cases));
    checks.push(Check::from_failures("ball.pq_inverse", &pq, 2 * cases));
    checks.push(Check::from_failures("ball.duality", &mv, cases));
    checks
}

fn cyclo_table_failures(name: &str, closed: &[Vec<Phased>], oracle: &[Vec<CycloSum>]) -> Vec<String> {
    let mut out = Vec::new();
    for (a, (rc, ro)) in closed.iter().zip(oracle).enumerate() {
        for (b, (x, y)) in rc.iter().zip(ro).enumerate() {
            if !CycloSum::from_phased(y.order(), x).equals(y) {
                out.push(format!("{name}[{a}][{b}]"));
            }
        }
    }
    out
}

/// All block-scheme checks: closed forms against oracles plus identities.
pub fn verify(c: &Carrier, mode: WitnessMode) -> Result<Vec<Check>> {
    let g = &c.group;
    let l = BlockIndex::new(g).len();
    let mut checks = omega_checks(c)?;
    let p = p_oracle(c)?;
    checks.push(Check::from_failures(
        "ball.p_oracle",
        &cyclo_table_failures("P", &p_closed(c), &p),
        l * l,
    ));
    let q = q_oracle(c)?;
    checks.push(Check::from_failures(
        "ball.q_oracle",
        &cyclo_table_failures("Q", &q_closed(c), &q),
        l * l,
    ));
    let t = intersection_oracle(g, mode)?;
    let diff: Vec<String> = t
        .differences(&intersection_tensor_closed(g))
        .into_iter()
        .map(|(a, b, c)| format!("p_({a},{b})^{c}"))
        .collect();
    checks.push(Check::from_failures("ball.intersections", &diff, l * l * l));
    checks.extend(identity_checks(c));
    checks.push(Check::exact(
        "ball.symmetry_criterion",
        is_symmetric(g) == is_symmetric_spectral(c),
        format!("symmetric: {}", is_symmetric(g)),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn z9_block_intersections() {
        let g = ChainedGroup::build(&GroupSpec::padic(3, 2)).unwrap();
        let bi = BlockIndex::new(&g);
        assert_eq!(bi.len(), 5);
        let t = intersection_oracle(&g, WitnessMode::All).unwrap();
        assert!(t.differences(&intersection_tensor_closed(&g)).is_empty());
        assert_eq!(intersection_closed(&g, (1, 1), (2, 1), (2, 1)), g.mu_ball(0));
        assert_eq!(intersection_closed(&g, (2, 1), (2, 1), (2, 2)), g.mu_ball(1));
        assert_eq!(intersection_closed(&g, (2, 1), (2, 1), (2, 1)), Rational::zero());
    }

    #[test]
    fn z9_is_not_symmetric_but_z2_cubed_is() {
        let c = Carrier::build(&GroupSpec::padic(3, 2)).unwrap();
        assert!(!is_symmetric(&c.group));
        assert!(!is_symmetric_spectral(&c));
        let c = Carrier::build(&GroupSpec::vilenkin(&[2, 2, 2])).unwrap();
        assert!(is_symmetric(&c.group));
        assert!(is_symmetric_spectral(&c));
    }

    #[test]
    fn full_verification_on_mixed_group() {
        let c = Carrier::build(&GroupSpec::vilenkin(&[4, 2])).unwrap();
        for ch in verify(&c, WitnessMode::All).unwrap() {
            assert!(ch.passed, "{ch:?}");
        }
    }
}
