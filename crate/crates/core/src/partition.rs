//! Linear functionals on the root lattice that cut the roots into the closed
//! sets `𝓘`, `Q(𝓐)` and `Φ±`.
//!
//! Simple roots are `α_{-1}, α_0, α_1, …, α_s` with `δ1 = α_0 + θ` and
//! `δ2 = α_{-1} + θ`, so `α + mδ1 + nδ2` has coefficients
//! `n` on `α_{-1}`, `m` on `α_0` and `c_i + (m+n)k_i` on `α_i`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dala::ExtendedRoot;
use crate::rootsys::RootSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("{0:?} is not a root of the double affine algebra")]
    NotARoot(ExtendedRoot),
    #[error("parabolic index {0} is outside 0..={1}")]
    BadIndex(usize, usize),
    #[error("weight offset has {got} simple-root coefficients, expected {expected}")]
    OffsetLength { got: usize, expected: usize },
}

/// Subset `𝓐 ⊆ 𝓑 = {0, 1, …, s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ParabolicSpec {
    indices: BTreeSet<usize>,
}

impl ParabolicSpec {
    pub fn new(rank: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, PartitionError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i > rank) {
            return Err(PartitionError::BadIndex(bad, rank));
        }
        Ok(Self { indices })
    }

    /// `𝓐 = 𝓑`.
    pub fn full(rank: usize) -> Self {
        Self { indices: (0..=rank).collect() }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.indices.is_subset(&other.indices)
    }
}

/// Which triangular decomposition an induced module uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClosedSetSpec {
    Imaginary,
    Parabolic(ParabolicSpec),
    LevelZero,
}

/// `μ = Σ_{i=0}^{s} n_i α_i + k δ2`, the usual way of writing `λ - (weight)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightOffset {
    pub alpha: Vec<i64>,
    pub delta2: i64,
}

impl WeightOffset {
    pub fn delta2(rank: usize, k: i64) -> Self {
        Self { alpha: vec![0; rank + 1], delta2: k }
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<(), PartitionError> {
        if self.alpha.len() != rs.rank() + 1 {
            return Err(PartitionError::OffsetLength { got: self.alpha.len(), expected: rs.rank() + 1 });
        }
        Ok(())
    }

    /// Lattice point in `(finite, m, n)` coordinates; `α_0 = δ1 - θ`.
    pub fn to_extended(&self, rs: &RootSystem) -> Result<ExtendedRoot, PartitionError> {
        self.validate(rs)?;
        let marks = rs.marks();
        let n0 = self.alpha[0];
        let finite = (0..rs.rank()).map(|i| self.alpha[i + 1] - n0 * marks[i]).collect();
        Ok(ExtendedRoot::new(finite, n0, self.delta2))
    }

    pub fn from_extended(rs: &RootSystem, r: &ExtendedRoot) -> Self {
        let marks = rs.marks();
        let mut alpha = vec![r.m];
        alpha.extend((0..rs.rank()).map(|i| r.finite[i] + r.m * marks[i]));
        Self { alpha, delta2: r.n }
    }
}

/// Coefficients of `r` over `α_{-1}, α_0, α_1, …, α_s`.
pub fn simple_coordinates(rs: &RootSystem, r: &ExtendedRoot) -> Vec<i64> {
    let marks = rs.marks();
    let mut out = vec![r.n, r.m];
    out.extend((0..rs.rank()).map(|i| r.finite[i] + (r.m + r.n) * marks[i]));
    out
}

/// Membership in `Δ_𝔗`.
pub fn is_root(rs: &RootSystem, r: &ExtendedRoot) -> bool {
    if r.is_imaginary() {
        r.m != 0 || r.n != 0
    } else {
        rs.find(&r.finite).is_some()
    }
}

/// `φ(α + mδ1 + nδ2) = ht(α) + m(1 + ht θ)`.
pub fn phi(rs: &RootSystem, r: &ExtendedRoot) -> i64 {
    r.height() + r.m * (1 + rs.height(rs.theta()))
}

/// `f_𝓐`; with `K = Σ_{i ∈ 𝓑*∖𝓐*} k_i` it reduces to
/// `[0 ∉ 𝓐]·m + Σ_{i ∉ 𝓐, i ≥ 1} c_i + m·K`.
pub fn f_a(rs: &RootSystem, spec: &ParabolicSpec, r: &ExtendedRoot) -> i64 {
    let marks = rs.marks();
    let mut value = if spec.contains(0) { 0 } else { r.m };
    for i in 0..rs.rank() {
        if !spec.contains(i + 1) {
            value += r.finite[i] + r.m * marks[i];
        }
    }
    value
}

fn require_root(rs: &RootSystem, r: &ExtendedRoot) -> Result<(), PartitionError> {
    if is_root(rs, r) {
        Ok(())
    } else {
        Err(PartitionError::NotARoot(r.clone()))
    }
}

/// `r ∈ 𝓘 = {φ > 0} ∪ Nδ2`.
pub fn in_i(rs: &RootSystem, r: &ExtendedRoot) -> Result<bool, PartitionError> {
    require_root(rs, r)?;
    Ok(in_i_unchecked(rs, r))
}

fn in_i_unchecked(rs: &RootSystem, r: &ExtendedRoot) -> bool {
    phi(rs, r) > 0 || (r.is_imaginary() && r.m == 0 && r.n > 0)
}

/// `r ∈ Q(𝓐) = {f_𝓐 ≥ 0}`.
pub fn in_q_a(rs: &RootSystem, spec: &ParabolicSpec, r: &ExtendedRoot) -> Result<bool, PartitionError> {
    require_root(rs, r)?;
    Ok(f_a(rs, spec, r) >= 0)
}

/// `r ∈ Φ+ = 𝓘 ∖ Nδ2`.
pub fn in_phi_plus(rs: &RootSystem, r: &ExtendedRoot) -> Result<bool, PartitionError> {
    require_root(rs, r)?;
    Ok(phi(rs, r) > 0)
}

/// Roots `α + mδ1 + nδ2` with `|m| ≤ bound_m`, `|n| ≤ bound_n`.
pub fn roots_in_box(rs: &RootSystem, bound_m: i64, bound_n: i64) -> Vec<ExtendedRoot> {
    let zero = vec![0i64; rs.rank()];
    let finite: Vec<&[i64]> = std::iter::once(zero.as_slice())
        .chain(rs.roots().iter().map(|r| r.coords.as_slice()))
        .collect();
    let mut out = Vec::new();
    for m in -bound_m..=bound_m {
        for n in -bound_n..=bound_n {
            for f in &finite {
                let r = ExtendedRoot::new(f.to_vec(), m, n);
                if is_root(rs, &r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// `Q(𝓐) ∩ (-Q(𝓐))` inside the box, i.e. the roots with `f_𝓐 = 0`.
pub fn symmetric_part_q_a(rs: &RootSystem, spec: &ParabolicSpec, bound: i64) -> BTreeSet<ExtendedRoot> {
    roots_in_box(rs, bound, bound)
        .into_iter()
        .filter(|r| f_a(rs, spec, r) >= 0 && f_a(rs, spec, &r.neg()) >= 0)
        .collect()
}

/// `(Σ_{i∈𝓐} Zα_i + Zδ2) ∩ Δ_𝔗` inside the box.
pub fn levi_roots(rs: &RootSystem, spec: &ParabolicSpec, bound: i64) -> BTreeSet<ExtendedRoot> {
    roots_in_box(rs, bound, bound)
        .into_iter()
        .filter(|r| {
            let c = simple_coordinates(rs, r);
            // drop the δ2-part: subtract n(α_{-1} + θ)
            let marks = rs.marks();
            let mut rest = vec![c[1]];
            rest.extend((0..rs.rank()).map(|i| c[i + 2] - r.n * marks[i]));
            rest.iter().enumerate().all(|(i, &v)| v == 0 || spec.contains(i))
        })
        .collect()
}

/// `λ ≥ λ - μ`: whether `μ` is a nonnegative integer combination of roots in `𝓘`.
///
/// Closed form: all `n_i ≥ 0`, and `k ≥ 0` when every `n_i` vanishes, because a
/// simple root `α_i ∈ 𝓘` may carry any `δ2`-shift.
pub fn dominates(rs: &RootSystem, mu: &WeightOffset) -> Result<bool, PartitionError> {
    mu.validate(rs)?;
    let all_nonneg = mu.alpha.iter().all(|&c| c >= 0);
    let total: i64 = mu.alpha.iter().sum();
    Ok(all_nonneg && (total > 0 || mu.delta2 >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn phi_examples() {
        let a2 = rs("A2");
        assert_eq!(phi(&a2, &ExtendedRoot::new(vec![0, 0], 0, 1)), 0);
        assert_eq!(phi(&a2, &ExtendedRoot::new(vec![0, 0], 1, 0)), 3);
        let a1 = rs("A1");
        let r = ExtendedRoot::new(vec![1], 2, -7);
        assert_eq!(phi(&a1, &r), 5);
        // linearity through simple coordinates: φ = Σ_{i≥0} c_i - ht(θ) c_{-1}
        let c = simple_coordinates(&a1, &r);
        assert_eq!(c[1] + c[2] - c[0], 5);
    }

    #[test]
    fn membership_examples() {
        let a1 = rs("A1");
        assert!(in_i(&a1, &ExtendedRoot::new(vec![0], 0, 2)).unwrap());
        assert!(!in_i(&a1, &ExtendedRoot::new(vec![0], 0, -2)).unwrap());
        assert!(in_i(&a1, &ExtendedRoot::new(vec![1], 0, -7)).unwrap());
        assert!(in_i(&a1, &ExtendedRoot::new(vec![2], 0, 0)).is_err());
        assert!(in_phi_plus(&a1, &ExtendedRoot::new(vec![1], 0, 4)).unwrap());
        assert!(!in_phi_plus(&a1, &ExtendedRoot::new(vec![0], 0, 3)).unwrap());
        assert!(!in_phi_plus(&a1, &ExtendedRoot::new(vec![-1], 0, 0)).unwrap());
    }

    #[test]
    fn f_a_examples() {
        let a1 = rs("A1");
        let one = ParabolicSpec::new(1, [1]).unwrap();
        let empty = ParabolicSpec::default();
        let full = ParabolicSpec::full(1);
        assert_eq!(f_a(&a1, &one, &ExtendedRoot::new(vec![-1], 0, 5)), 0);
        for k in -5..=5 {
            assert!(in_q_a(&a1, &one, &ExtendedRoot::new(vec![-1], 0, k)).unwrap());
        }
        assert!(!in_q_a(&a1, &empty, &ExtendedRoot::new(vec![-1], 0, 0)).unwrap());
        for r in roots_in_box(&a1, 3, 3) {
            assert_eq!(f_a(&a1, &full, &r), 0);
            assert_eq!(f_a(&a1, &empty, &r), phi(&a1, &r));
        }
        assert_eq!(f_a(&a1, &one, &ExtendedRoot::new(vec![0], 0, 1)), 0);
        assert!(ParabolicSpec::new(1, [2]).is_err());
    }

    /// Literal definition over simple coordinates, independent of the closed form.
    fn f_a_literal(rs: &RootSystem, spec: &ParabolicSpec, r: &ExtendedRoot) -> i64 {
        if spec.indices().count() == rs.rank() + 1 {
            return 0;
        }
        let c = simple_coordinates(rs, r);
        let marks = rs.marks();
        let k: i64 = (1..=rs.rank()).filter(|&i| !spec.contains(i)).map(|i| marks[i - 1]).sum();
        let mut v = -k * c[0];
        for i in 0..=rs.rank() {
            if !spec.contains(i) {
                v += c[i + 1];
            }
        }
        v
    }

    #[test]
    fn f_a_matches_literal_definition() {
        for label in ["A1", "A2", "D4"] {
            let rs = rs(label);
            let s = rs.rank();
            for mask in 0u32..(1 << (s + 1)) {
                let spec = ParabolicSpec::new(s, (0..=s).filter(|i| mask & (1 << i) != 0)).unwrap();
                for r in roots_in_box(&rs, 2, 2) {
                    assert_eq!(f_a(&rs, &spec, &r), f_a_literal(&rs, &spec, &r), "{label} {mask} {r:?}");
                }
            }
        }
    }

    #[test]
    fn symmetric_part_examples() {
        let a1 = rs("A1");
        let one = ParabolicSpec::new(1, [1]).unwrap();
        let sym = symmetric_part_q_a(&a1, &one, 3);
        let mut expected = BTreeSet::new();
        for n in -3..=3 {
            expected.insert(ExtendedRoot::new(vec![1], 0, n));
            expected.insert(ExtendedRoot::new(vec![-1], 0, n));
            if n != 0 {
                expected.insert(ExtendedRoot::new(vec![0], 0, n));
            }
        }
        assert_eq!(sym, expected);
        let empty = symmetric_part_q_a(&a1, &ParabolicSpec::default(), 3);
        assert!(empty.iter().all(|r| r.is_imaginary() && r.m == 0));
        assert_eq!(empty.len(), 6);
        assert_eq!(symmetric_part_q_a(&a1, &ParabolicSpec::full(1), 3).len(), roots_in_box(&a1, 3, 3).len());
    }

    #[test]
    fn offsets_round_trip() {
        let a2 = rs("A2");
        let mu = WeightOffset { alpha: vec![1, 0, 2], delta2: -3 };
        let r = mu.to_extended(&a2).unwrap();
        assert_eq!(r, ExtendedRoot::new(vec![-1, 1], 1, -3));
        assert_eq!(WeightOffset::from_extended(&a2, &r), mu);
        assert!(WeightOffset { alpha: vec![1], delta2: 0 }.to_extended(&a2).is_err());
    }

    /// Bounded search for `μ` as a sum of elements of 𝓘 from a window.
    fn dominates_oracle(rs: &RootSystem, mu: &ExtendedRoot, window: i64, max_terms: usize) -> bool {
        let gens: Vec<ExtendedRoot> =
            roots_in_box(rs, 1, window).into_iter().filter(|r| in_i_unchecked(rs, r)).collect();
        let mut frontier: HashSet<ExtendedRoot> = HashSet::from([ExtendedRoot::zero(rs.rank())]);
        let mut seen = frontier.clone();
        for _ in 0..max_terms {
            let mut next = HashSet::new();
            for p in &frontier {
                for g in &gens {
                    let s = p.add(g);
                    if s.n.abs() > 2 * window || s.m.abs() > 3 {
                        continue;
                    }
                    if seen.insert(s.clone()) {
                        next.insert(s);
                    }
                }
            }
            frontier = next;
        }
        seen.contains(mu)
    }

    #[test]
    fn dominance_matches_search_oracle() {
        let a1 = rs("A1");
        for n0 in -1..=2 {
            for n1 in -1..=2 {
                for k in -3..=3 {
                    let mu = WeightOffset { alpha: vec![n0, n1], delta2: k };
                    let ext = mu.to_extended(&a1).unwrap();
                    let expect = dominates_oracle(&a1, &ext, 4, 4);
                    assert_eq!(dominates(&a1, &mu).unwrap(), expect, "{mu:?}");
                }
            }
        }
        let far = WeightOffset { alpha: vec![0, 1], delta2: -100 };
        assert!(dominates(&a1, &far).unwrap());
        assert!(dominates(&a1, &WeightOffset::delta2(1, 1)).unwrap());
        assert!(!dominates(&a1, &WeightOffset::delta2(1, -1)).unwrap());
        assert!(dominates(&a1, &WeightOffset { alpha: vec![0], delta2: 0 }).is_err());
    }
}
