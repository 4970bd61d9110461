//! Brute-force witness counting for translation schemes.
//!
//! A translation scheme is given by a labelling of group elements by
//! classes; the relation `R_c` holds for `(x, y)` when `x − y` has label `c`.
//! For every witness pair `(x, y) ∈ R_{c3}` the oracle counts the points
//! `z` with `(x, z) ∈ R_{c1}` and `(z, y) ∈ R_{c2}`, and checks that the count
//! depends only on `c3`.

use crate::error::{Error, Result};
use crate::group_core::ChainedGroup;
use crate::par;
use crate::phase::{self, CycloSum};
use crate::rational::{self, Rational};

/// Which witness pairs the oracle visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    /// Every pair `(x, y)` of the group.
    All,
    /// One pair `(w, 0)` per class.
    Single,
}

/// Intersection numbers `p_{c1,c2}^{c3}` as a dense tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    classes: usize,
    values: Vec<Rational>,
}

impl IntersectionTensor {
    /// Tensor of zeros.
    pub fn zeros(classes: usize) -> IntersectionTensor {
        IntersectionTensor {
            classes,
            values: vec![rational::int(0); classes * classes * classes],
        }
    }

    /// Number of classes.
    pub fn classes(&self) -> usize {
        self.classes
    }

    fn at(&self, c1: usize, c2: usize, c3: usize) -> usize {
        (c1 * self.classes + c2) * self.classes + c3
    }

    /// `p_{c1,c2}^{c3}`.
    pub fn get(&self, c1: usize, c2: usize, c3: usize) -> &Rational {
        &self.values[self.at(c1, c2, c3)]
    }

    /// Sets `p_{c1,c2}^{c3}`.
    pub fn set(&mut self, c1: usize, c2: usize, c3: usize, v: Rational) {
        let i = self.at(c1, c2, c3);
        self.values[i] = v;
    }

    /// Nonzero entries in lexicographic order of `(c1, c2, c3)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, &Rational)> {
        let n = self.classes;
        let mut out = Vec::new();
        for c1 in 0..n {
            for c2 in 0..n {
                for c3 in 0..n {
                    let v = self.get(c1, c2, c3);
                    if *v != rational::int(0) {
                        out.push((c1, c2, c3, v));
                    }
                }
            }
        }
        out
    }

    /// Triples where the two tensors differ.
    pub fn differences(&self, o: &IntersectionTensor) -> Vec<(usize, usize, usize)> {
        let n = self.classes;
        let mut out = Vec::new();
        for c1 in 0..n {
            for c2 in 0..n {
                for c3 in 0..n {
                    if self.get(c1, c2, c3) != o.get(c1, c2, c3) {
                        out.push((c1, c2, c3));
                    }
                }
            }
        }
        out
    }
}

fn counts_for(g: &ChainedGroup, labels: &[u32], l: usize, x: usize, y: usize, buf: &mut [u32]) {
    buf.iter_mut().for_each(|v| *v = 0);
    for z in 0..g.order() {
        let c1 = labels[g.sub(x, z)] as usize;
        let c2 = labels[g.sub(z, y)] as usize;
        buf[c1 * l + c2] += 1;
    }
}

/// Witness counts for the class labelling `labels` (one label per element).
///
/// Returns [`Error::NotAScheme`] if two witness pairs of one class disagree.
pub fn witness_tensor(
    g: &ChainedGroup,
    labels: &[u32],
    classes: usize,
    mode: WitnessMode,
) -> Result<IntersectionTensor> {
    let size = g.order();
    let l = classes;
    let mut reference: Vec<Option<Vec<u32>>> = vec![None; l];
    let mut buf = vec![0u32; l * l];
    for w in 0..size {
        let c = labels[w] as usize;
        if reference[c].is_none() {
            counts_for(g, labels, l, w, 0, &mut buf);
            reference[c] = Some(buf.clone());
        }
    }
    if mode == WitnessMode::All {
        let diff: Vec<u32> = (0..size * size)
            .map(|k| labels[g.sub(k / size, k % size)])
            .collect();
        let bad = par::map_range(size, |x| {
            let mut buf = vec![0u32; l * l];
            let row_x = &diff[x * size..(x + 1) * size];
            for y in 0..size {
                buf.iter_mut().for_each(|v| *v = 0);
                for z in 0..size {
                    buf[row_x[z] as usize * l + diff[z * size + y] as usize] += 1;
                }
                let c3 = row_x[y] as usize;
                if reference[c3].as_deref() != Some(&buf[..]) {
                    return Some(c3);
                }
            }
            None
        });
        if let Some(class) = bad.into_iter().flatten().next() {
            return Err(Error::NotAScheme { class });
        }
    }
    let mut t = IntersectionTensor::zeros(l);
    let c = g.mu_point();
    for (c3, r) in reference.iter().enumerate() {
        if let Some(r) = r {
            for c1 in 0..l {
                for c2 in 0..l {
                    let n = r[c1 * l + c2];
                    if n != 0 {
                        t.set(c1, c2, c3, c * rational::uint(n as u64));
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Transforms of class indicators, evaluated at every point of the other side.
///
/// For each summation class `a` and evaluation point `e` this forms
/// `scale · Σ_{x ∈ a} ζ^{±pairing(e, x)}` as an integer phase histogram, checks
/// that it is constant on every evaluation class, and returns the table
/// `values[a][b]` over evaluation classes `b`.
#[allow(clippy::too_many_arguments)]
pub fn class_transform_table<P>(
    exponent: u64,
    pairing: P,
    sum_labels: &[u32],
    sum_classes: usize,
    eval_labels: &[u32],
    eval_classes: usize,
    conj: bool,
    scale: &Rational,
) -> Result<Vec<Vec<CycloSum>>>
where
    P: Fn(usize, usize) -> u64 + Sync,
{
    let n = exponent as usize;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); sum_classes];
    for (x, &a) in sum_labels.iter().enumerate() {
        members[a as usize].push(x);
    }
    let histogram = |e: usize, a: usize, h: &mut Vec<i128>| {
        h.iter_mut().for_each(|v| *v = 0);
        for &x in &members[a] {
            let k = pairing(e, x) as usize % n;
            let k = if conj { (n - k) % n } else { k };
            h[k] += 1;
        }
    };
    let mut reps: Vec<Option<usize>> = vec![None; eval_classes];
    for (e, &b) in eval_labels.iter().enumerate() {
        reps[b as usize].get_or_insert(e);
    }
    let mut reference: Vec<Vec<Vec<i128>>> = vec![Vec::new(); eval_classes];
    for (b, rep) in reps.iter().enumerate() {
        let rep = rep.ok_or_else(|| Error::InvalidLabel(format!("empty class {b}")))?;
        for a in 0..sum_classes {
            let mut h = vec![0i128; n];
            histogram(rep, a, &mut h);
            reference[b].push(h);
        }
    }
    let bad = par::map_range(eval_labels.len(), |e| {
        let b = eval_labels[e] as usize;
        let mut h = vec![0i128; n];
        for (a, want) in reference[b].iter().enumerate().take(sum_classes) {
            histogram(e, a, &mut h);
            let diff: Vec<i128> = h.iter().zip(want).map(|(u, v)| u - v).collect();
            if !phase::int_sum_is_zero(exponent, &diff) {
                return Some(format!("class {a} at point {e} of block {b}"));
            }
        }
        None
    });
    if let Some(msg) = bad.into_iter().flatten().next() {
        return Err(Error::NotConstantOnDualBlock(msg));
    }
    Ok((0..sum_classes)
        .map(|a| {
            (0..eval_classes)
                .map(|b| CycloSum::from_histogram(exponent, &reference[b][a], scale))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    #[test]
    fn non_scheme_labelling_is_rejected() {
        let g = ChainedGroup::build(&GroupSpec::padic(2, 3)).unwrap();
        let labels: Vec<u32> = (0..8).map(|x| if x == 1 { 1 } else if x == 0 { 0 } else { 2 }).collect();
        assert!(matches!(
            witness_tensor(&g, &labels, 3, WitnessMode::All),
            Err(Error::NotAScheme { .. })
        ));
    }
}
