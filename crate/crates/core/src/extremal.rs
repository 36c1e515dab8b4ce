//! Exact kernels and the extremal-vector computations built on them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dala::{BasisSymbol, ExtendedRoot};
use crate::partition::{ClosedSetSpec, WeightOffset};
use crate::pbw::{InducedModule, ModuleError, ModuleVector, PbwMonomial, Role, Truncation};
use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("real raising {0} does not kill the extremal vector")]
    DebugMismatch(String),
}

/// Sparse exact matrix; stored entries are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Appends a row given as `column → value`.
    pub fn push_row(&mut self, row: impl IntoIterator<Item = (usize, Q)>) {
        let i = self.rows;
        self.rows += 1;
        for (j, v) in row {
            self.set(i, j, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i] += v * &x[j];
        }
        out
    }

    /// Integer rows, each scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let l = r.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                let row: BTreeMap<usize, BigInt> = r.into_iter().map(|(j, v)| (j, (v * Q::from_integer(l.clone())).to_integer())).collect();
                primitive(row)
            })
            .collect()
    }

    /// Reduced echelon form over the integers: pivot columns and their rows.
    fn echelon(&self) -> Vec<(usize, BTreeMap<usize, BigInt>)> {
        let mut pending = self.integer_rows();
        let mut pivots: Vec<(usize, BTreeMap<usize, BigInt>)> = Vec::new();
        while let Some(mut row) = pending.pop() {
            for (pc, prow) in &pivots {
                if let Some(a) = row.get(pc).cloned() {
                    row = combine(&row, &prow[pc], prow, &a);
                }
            }
            let Some((&pc, _)) = row.iter().next() else { continue };
            // clear the new pivot column from earlier pivot rows
            for (_, prow) in pivots.iter_mut() {
                if let Some(a) = prow.get(&pc).cloned() {
                    *prow = combine(prow, &row[&pc], &row, &a);
                }
            }
            pivots.push((pc, row));
        }
        pivots.sort_by_key(|(c, _)| *c);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let pivots = self.echelon();
        let pivot_cols: std::collections::HashSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut x = vec![Q::zero(); self.cols];
                x[free] = Q::one();
                for (pc, row) in &pivots {
                    if let Some(a) = row.get(&free) {
                        x[*pc] = -Q::new(a.clone(), row[pc].clone());
                    }
                }
                x
            })
            .collect()
    }
}

/// `p·row - a·prow`, divided by its content.
fn combine(row: &BTreeMap<usize, BigInt>, p: &BigInt, prow: &BTreeMap<usize, BigInt>, a: &BigInt) -> BTreeMap<usize, BigInt> {
    let mut out: BTreeMap<usize, BigInt> = row.iter().map(|(j, v)| (*j, v * p)).collect();
    for (j, v) in prow {
        let e = out.entry(*j).or_insert_with(BigInt::zero);
        *e -= v * a;
    }
    out.retain(|_, v| !v.is_zero());
    primitive(out)
}

fn primitive(mut row: BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    if row.values().next().is_some_and(|v| v.is_negative()) {
        for v in row.values_mut() {
            *v = -&*v;
        }
    }
    row
}

/// Kernel of the raising maps on one weight space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub k: usize,
    pub weight_dim: usize,
    pub extremal_dim: usize,
    pub basis: Vec<ModuleVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reducible { k: usize, witness: ModuleVector },
    ConsistentWithIrreducible { k_max: usize },
}

fn combination(basis: &[PbwMonomial], coeffs: &[Q]) -> ModuleVector {
    let mut v = ModuleVector::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        v.add_term(b.clone(), c.clone());
    }
    v
}

/// Matrix whose columns are `op(b)` for `b` in `basis`, rows indexed by the
/// monomials that occur.
fn operator_rows(
    columns: &[ModuleVector],
    index: &mut HashMap<PbwMonomial, usize>,
    m: &mut Vec<Vec<(usize, Q)>>,
) {
    for (col, v) in columns.iter().enumerate() {
        for (mono, c) in v.iter() {
            let next = index.len();
            let r = *index.entry(mono.clone()).or_insert(next);
            if r == m.len() {
                m.push(Vec::new());
            }
            m[r].push((col, c.clone()));
        }
    }
}

fn matrix_from_rows(rows: Vec<Vec<(usize, Q)>>, cols: usize) -> SparseMatrix {
    let mut mat = SparseMatrix::new(0, cols);
    for r in rows {
        mat.push_row(r);
    }
    mat
}

/// Vectors of `M̄(λ)_{λ-kδ2}` killed by every `h_i(0,n)`, `1 ≤ n ≤ k`.
pub fn extremal_space(module: &InducedModule, k: usize) -> Result<ExtremalReport, ExtremalError> {
    extremal_space_checked(module, k, None)
}

/// As [`extremal_space`]; with `debug` set, also applies every real raising
/// symbol in that window to the kernel and requires it to vanish.
pub fn extremal_space_checked(
    module: &InducedModule,
    k: usize,
    debug: Option<&Truncation>,
) -> Result<ExtremalReport, ExtremalError> {
    if *module.spec() != ClosedSetSpec::Imaginary {
        return Err(ModuleError::WrongVariant("imaginary").into());
    }
    let rank = module.algebra().rank();
    let basis = module.weight_space_basis(&WeightOffset::delta2(rank, k as i64))?;
    let mut rows = Vec::new();
    for i in 0..rank {
        for n in 1..=k as i64 {
            let images: Vec<ModuleVector> = basis
                .iter()
                .map(|b| module.act_symbol(BasisSymbol::Cartan { i, m: 0, n }, b))
                .collect::<Result<_, _>>()?;
            let mut index = HashMap::new();
            let mut block = Vec::new();
            operator_rows(&images, &mut index, &mut block);
            rows.extend(block);
        }
    }
    let kernel = matrix_from_rows(rows, basis.len()).kernel();
    let vectors: Vec<ModuleVector> = kernel.iter().map(|x| combination(&basis, x)).collect();
    if let Some(window) = debug {
        let raising = module.symbols_with_role(window, |r| *r == Role::Annihilating)?;
        for s in raising {
            if matches!(s, BasisSymbol::Cartan { m: 0, .. }) {
                continue;
            }
            for v in &vectors {
                if !module.act_symbol_vector(s, v)?.is_zero() {
                    return Err(ExtremalError::DebugMismatch(module.algebra().format_symbol(&s)));
                }
            }
        }
    }
    Ok(ExtremalReport { k, weight_dim: basis.len(), extremal_dim: vectors.len(), basis: vectors })
}

/// Bounded irreducibility certificate: looks for extremal vectors at `λ - kδ2`,
/// `1 ≤ k ≤ k_max`.
pub fn irreducibility_probe(module: &InducedModule, k_max: usize) -> Result<Verdict, ExtremalError> {
    for k in 1..=k_max {
        let report = extremal_space(module, k)?;
        if let Some(w) = report.basis.into_iter().next() {
            return Ok(Verdict::Reducible { k, witness: w });
        }
    }
    Ok(Verdict::ConsistentWithIrreducible { k_max })
}

/// Rank of a family of module vectors.
pub fn vector_rank(vectors: &[ModuleVector]) -> usize {
    let mut index: HashMap<PbwMonomial, usize> = HashMap::new();
    let mut mat = SparseMatrix::new(0, 0);
    let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
    for v in vectors {
        rows.push(
            v.iter()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect(),
        );
    }
    mat.cols = index.len();
    for r in rows {
        mat.push_row(r);
    }
    mat.rank()
}

/// Checks that `m·w` is linearly independent over all lowering monomials `m`
/// inside `depth`, the finite shadow of `U(𝔗₋)w` being free.
pub fn embedding_check(module: &InducedModule, w: &ModuleVector, depth: &Truncation) -> Result<bool, ExtremalError> {
    if w.is_zero() {
        return Ok(false);
    }
    let lowering = module.symbols_with_role(depth, |r| *r == Role::Lowering)?;
    let mut monomials: Vec<Vec<BasisSymbol>> = vec![Vec::new()];
    let mut layer: Vec<(usize, Vec<BasisSymbol>)> = vec![(0, Vec::new())];
    for _ in 0..depth.max_len {
        let mut next = Vec::new();
        for (start, word) in &layer {
            for (j, s) in lowering.iter().enumerate().skip(*start) {
                let mut wd = word.clone();
                wd.push(*s);
                next.push((j, wd));
            }
        }
        monomials.extend(next.iter().map(|(_, w)| w.clone()));
        layer = next;
    }
    let images: Vec<ModuleVector> =
        monomials.iter().map(|m| module.apply_word(m, w)).collect::<Result<_, _>>()?;
    Ok(vector_rank(&images) == images.len())
}

/// Raising monomials `R` with `R·(λ - μ) ⊂ λ`; level-zero modules ignore `δ2`.
pub fn raising_monomials(
    module: &InducedModule,
    mu: &ExtendedRoot,
    budget: &Truncation,
) -> Result<Vec<PbwMonomial>, ExtremalError> {
    let candidates = module.symbols_with_role(budget, |r| *r == Role::Annihilating)?;
    let ignore = *module.spec() == ClosedSetSpec::LevelZero;
    Ok(module.search_monomials(&candidates, mu, ignore, budget.max_len))
}

/// `{v ∈ V_{λ-μ} : (R·v)_{v_λ} = 0 for every raising R in budget}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalComponent {
    pub weight_dim: usize,
    pub dim: usize,
    pub basis: Vec<ModuleVector>,
    pub raising_checked: usize,
}

pub fn truncated_maximal_component(
    module: &InducedModule,
    mu: &WeightOffset,
    budget: &Truncation,
) -> Result<MaximalComponent, ExtremalError> {
    truncated_maximal_component_in(module, mu, module.truncation(), budget)
}

/// As [`truncated_maximal_component`] with the weight space enumerated inside
/// `space`, leaving the module's own window as headroom for straightening.
pub fn truncated_maximal_component_in(
    module: &InducedModule,
    mu: &WeightOffset,
    space: &Truncation,
    budget: &Truncation,
) -> Result<MaximalComponent, ExtremalError> {
    let basis = module.weight_space_basis_with(mu, space)?;
    let target = mu.to_extended(module.algebra().root_system()).map_err(ModuleError::from)?;
    let raisings = raising_monomials(module, &target, budget)?;
    let mut mat = SparseMatrix::new(0, basis.len());
    for r in &raisings {
        let row: Vec<(usize, Q)> = basis
            .iter()
            .enumerate()
            .map(|(j, b)| Ok((j, module.apply_word(r.factors(), &ModuleVector::monomial(b.clone()))?.highest_coeff())))
            .collect::<Result<_, ModuleError>>()?;
        mat.push_row(row);
    }
    let kernel = mat.kernel();
    Ok(MaximalComponent {
        weight_dim: basis.len(),
        dim: kernel.len(),
        basis: kernel.iter().map(|x| combination(&basis, x)).collect(),
        raising_checked: raisings.len(),
    })
}

/// Outcome of testing a vector for membership in the maximal submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NullCheck {
    /// Every raising monomial within budget sends the vector to zero `v_λ`-part.
    Null { raising_checked: usize },
    /// `R·v` has this nonzero `v_λ`-coefficient.
    NotNull { raising: PbwMonomial, value: Q },
}

impl NullCheck {
    pub fn is_null(&self) -> bool {
        matches!(self, NullCheck::Null { .. })
    }
}

/// Bounded certificate that `v` lies in the maximal proper submodule.
pub fn null_certificate(module: &InducedModule, v: &ModuleVector, budget: &Truncation) -> Result<NullCheck, ExtremalError> {
    let level_zero = *module.spec() == ClosedSetSpec::LevelZero;
    let mut groups: BTreeMap<ExtendedRoot, ModuleVector> = BTreeMap::new();
    for (m, c) in v.iter() {
        let mut w = module.monomial_weight(m);
        if level_zero {
            w.n = 0;
        }
        groups.entry(w).or_default().add_term(m.clone(), c.clone());
    }
    let mut checked = 0;
    for (w, part) in groups {
        let raisings = raising_monomials(module, &w.neg(), budget)?;
        for r in raisings {
            checked += 1;
            let value = module.apply_word(r.factors(), &part)?.highest_coeff();
            if !value.is_zero() {
                return Ok(NullCheck::NotNull { raising: r, value });
            }
        }
    }
    Ok(NullCheck::Null { raising_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dala::Algebra;
    use crate::pbw::WeightFunctional;
    use crate::rational::{frac, q};

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_examples() {
        assert!(dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).kernel().is_empty());
        assert_eq!(dense(&[&[0, 0, 0], &[0, 0, 0]]).kernel().len(), 3);
        let k = dense(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    fn imaginary(c2: Q) -> InducedModule {
        let mut w = WeightFunctional::zero(1);
        w.h[0] = frac(5, 3);
        w.c2 = c2;
        InducedModule::new(Algebra::from_label("A1").unwrap(), ClosedSetSpec::Imaginary, w, Truncation::uniform(6, 6, 2))
            .unwrap()
    }

    #[test]
    fn extremal_examples() {
        let m = imaginary(q(1));
        let r = extremal_space(&m, 1).unwrap();
        assert_eq!((r.weight_dim, r.extremal_dim), (1, 0));
        let r = extremal_space(&m, 0).unwrap();
        assert_eq!(r.extremal_dim, 1);
        let m0 = imaginary(q(0));
        let r = extremal_space_checked(&m0, 2, Some(&Truncation::uniform(1, 2, 1))).unwrap();
        assert_eq!((r.weight_dim, r.extremal_dim), (2, 2));
    }

    #[test]
    fn probe_examples() {
        assert_eq!(
            irreducibility_probe(&imaginary(frac(5, 3)), 5).unwrap(),
            Verdict::ConsistentWithIrreducible { k_max: 5 }
        );
        match irreducibility_probe(&imaginary(q(0)), 3).unwrap() {
            Verdict::Reducible { k, witness } => {
                assert_eq!(k, 1);
                let h = PbwMonomial(vec![BasisSymbol::Cartan { i: 0, m: 0, n: -1 }]);
                assert_eq!(witness.len(), 1);
                assert!(!witness.coeff(&h).is_zero());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(irreducibility_probe(&imaginary(q(0)), 0).unwrap(), Verdict::ConsistentWithIrreducible { k_max: 0 });
    }

    #[test]
    fn embedding_examples() {
        let m = imaginary(q(0));
        let depth = Truncation::new(2, (-1, 0), 1, 1);
        let w = ModuleVector::monomial(PbwMonomial(vec![BasisSymbol::Cartan { i: 0, m: 0, n: -1 }]));
        assert!(embedding_check(&m, &w, &depth).unwrap());
        assert!(embedding_check(&m, &ModuleVector::highest(), &depth).unwrap());
        assert!(!embedding_check(&m, &ModuleVector::zero(), &depth).unwrap());
    }

    #[test]
    fn maximal_component_examples() {
        let budget = Truncation::uniform(2, 2, 1);
        let m0 = imaginary(q(0));
        assert_eq!(truncated_maximal_component(&m0, &WeightOffset::delta2(1, 0), &budget).unwrap().dim, 0);
        assert_eq!(truncated_maximal_component(&m0, &WeightOffset::delta2(1, 1), &budget).unwrap().dim, 1);
        let m1 = imaginary(q(1));
        assert_eq!(truncated_maximal_component(&m1, &WeightOffset::delta2(1, 1), &budget).unwrap().dim, 0);
    }

    #[test]
    fn maximal_component_shrinks_with_budget() {
        let mut w = WeightFunctional::zero(1);
        w.h[0] = q(1);
        w.c2 = q(0);
        let m = InducedModule::new(Algebra::from_label("A1").unwrap(), ClosedSetSpec::Imaginary, w, Truncation::uniform(6, 6, 2))
            .unwrap();
        let mu = WeightOffset { alpha: vec![0, 2], delta2: 0 };
        let mut last = usize::MAX;
        let space = Truncation::uniform(3, 2, 2);
        for len in 0..=3 {
            let d = truncated_maximal_component_in(&m, &mu, &space, &Truncation::uniform(len, 1, 1)).unwrap().dim;
            assert!(d <= last);
            last = d;
        }
    }
}
