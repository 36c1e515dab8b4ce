//! Loop-`sl2` modules `B(a, λ)`: generated by `w` with `e(m)w = 0`,
//! `h(m)w = Σ λ_j a_j^m w` and `f(0)^{|λ|+1} w = 0`.
//!
//! Currents are taken modulo `P(t) = Π_j (t - a_j)^{λ_j}`, so the module is
//! built over `A = Q[t]/P`. It is the quotient of `Sym(f ⊗ A) w` by the
//! submodule generated by `f(0)^{|λ|+1} w`, computed one length at a time.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{pow_q, q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("points and weights differ in length ({points} vs {weights})")]
    Length { points: usize, weights: usize },
    #[error("point {0} is zero")]
    ZeroPoint(String),
    #[error("point {0} is repeated")]
    RepeatedPoint(String),
    #[error("weight {0} is not positive")]
    BadWeight(u64),
    #[error("quotient does not vanish by length {0}")]
    NotFinite(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylSpec {
    points: Vec<Q>,
    weights: Vec<u64>,
}

impl WeylSpec {
    pub fn new(points: Vec<Q>, weights: Vec<u64>) -> Result<Self, WeylError> {
        if points.len() != weights.len() {
            return Err(WeylError::Length { points: points.len(), weights: weights.len() });
        }
        let mut seen = BTreeSet::new();
        for a in &points {
            if a.is_zero() {
                return Err(WeylError::ZeroPoint(a.to_string()));
            }
            if !seen.insert(a.clone()) {
                return Err(WeylError::RepeatedPoint(a.to_string()));
            }
        }
        if let Some(&w) = weights.iter().find(|&&w| w == 0) {
            return Err(WeylError::BadWeight(w));
        }
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &[Q] {
        &self.points
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `|λ| = Σ λ_j`, also the degree of `P`.
    pub fn total(&self) -> usize {
        self.weights.iter().sum::<u64>() as usize
    }

    /// Coefficients of `P(t) = Π (t - a_j)^{λ_j}`, lowest degree first.
    pub fn annihilator(&self) -> Vec<Q> {
        let mut p = vec![Q::one()];
        for (a, &w) in self.points.iter().zip(&self.weights) {
            for _ in 0..w {
                let mut next = vec![Q::zero(); p.len() + 1];
                for (i, c) in p.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * a;
                }
                p = next;
            }
        }
        p
    }

    /// `λ(h(m)) = Σ λ_j a_j^m`.
    pub fn h_value(&self, m: i64) -> Q {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(a, &w)| q(w as i64) * pow_q(a, m))
            .fold(Q::zero(), |x, y| x + y)
    }
}

/// The truncated-polynomial ring `Q[t]/P` with basis `1, t, …, t^{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    modulus: Vec<Q>,
    table: Vec<Vec<Vec<Q>>>,
}

impl QuotientRing {
    /// `modulus` is monic, lowest degree first.
    pub fn new(modulus: Vec<Q>) -> Self {
        let d = modulus.len() - 1;
        let mut ring = Self { modulus, table: Vec::new() };
        ring.table = (0..d)
            .map(|i| (0..d).map(|j| ring.reduce_poly(&monomial(i + j))).collect())
            .collect();
        ring
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Remainder of a polynomial modulo `P`.
    pub fn reduce_poly(&self, poly: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut r = poly.to_vec();
        for top in (d..r.len()).rev() {
            let c = std::mem::take(&mut r[top]);
            if c.is_zero() {
                continue;
            }
            for (k, p) in self.modulus.iter().enumerate().take(d) {
                r[top - d + k] -= &c * p;
            }
        }
        r.resize(d, Q::zero());
        r
    }

    /// `t^i · t^j` in the basis.
    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    /// `t^m` for any integer `m`; needs `P(0) ≠ 0` when `m < 0`.
    pub fn power(&self, m: i64) -> Vec<Q> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let base = if m >= 0 {
            self.reduce_poly(&monomial(1))
        } else {
            // t^{-1} = -(P(t) - P(0)) / (t P(0))
            let p0 = &self.modulus[0];
            self.modulus[1..].iter().map(|c| -c / p0).collect()
        };
        let mut out = self.reduce_poly(&monomial(0));
        for _ in 0..m.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }
}

fn monomial(i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); i + 1];
    v[i] = Q::one();
    v
}

/// Sorted multiset of `A`-basis indices: `f(t^{i_1}) ⋯ f(t^{i_k}) w`.
type Mono = Vec<usize>;
type SVec = BTreeMap<Mono, Q>;

fn add_to(v: &mut SVec, key: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(key.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&key);
    }
}

/// Fully reduced row echelon form over sparse vectors.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<(Mono, SVec)>,
}

impl Echelon {
    fn reduce(&self, v: &SVec) -> SVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                for (k, x) in row {
                    add_to(&mut v, k.clone(), -(&c * x));
                }
            }
        }
        v
    }

    fn insert(&mut self, v: &SVec) -> bool {
        let mut r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        for x in r.values_mut() {
            *x /= &c;
        }
        for (_, row) in &mut self.rows {
            if let Some(e) = row.get(&p).cloned() {
                for (k, x) in &r {
                    add_to(row, k.clone(), -(&e * x));
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    fn is_pivot(&self, m: &Mono) -> bool {
        self.rows.iter().any(|(p, _)| p == m)
    }
}

/// The action of `sl2 ⊗ A` on `Sym(f ⊗ A) w`.
struct Verma<'a> {
    ring: &'a QuotientRing,
    h_values: Vec<Q>,
}

impl Verma<'_> {
    fn f(&self, i: usize, v: &SVec) -> SVec {
        v.iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                let pos = m.partition_point(|&x| x < i);
                m.insert(pos, i);
                (m, c.clone())
            })
            .collect()
    }

    /// `h(x)` on `f(t^{j_1}) ⋯ f(t^{j_k}) w` for `x = Σ x_l t^l`.
    fn h_elem(&self, x: &[Q], m: &[usize]) -> SVec {
        let mut out = SVec::new();
        let scalar: Q = x.iter().zip(&self.h_values).map(|(a, b)| a * b).fold(Q::zero(), |s, t| s + t);
        add_to(&mut out, m.to_vec(), scalar);
        for r in 0..m.len() {
            let prod = self.ring.mul(x, &self.ring.reduce_poly(&monomial(m[r])));
            let mut rest = m.to_vec();
            rest.remove(r);
            for (l, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut k = rest.clone();
                let pos = k.partition_point(|&y| y < l);
                k.insert(pos, l);
                add_to(&mut out, k, q(-2) * c);
            }
        }
        out
    }

    fn h(&self, i: usize, v: &SVec) -> SVec {
        let x = monomial_in(self.ring.dim(), i);
        let mut out = SVec::new();
        for (m, c) in v {
            for (k, y) in self.h_elem(&x, m) {
                add_to(&mut out, k, c * y);
            }
        }
        out
    }

    /// `e(t^i) f_{j_1} ⋯ f_{j_k} w = Σ_r f_{j_1} ⋯ f_{j_{r-1}} h(t^{i+j_r}) f_{j_{r+1}} ⋯ f_{j_k} w`.
    fn e(&self, i: usize, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (m, c) in v {
            for r in 0..m.len() {
                let x = self.ring.product(i, m[r]).to_vec();
                let (left, right) = (&m[..r], &m[r + 1..]);
                for (k, y) in self.h_elem(&x, right) {
                    let mut full = left.to_vec();
                    full.extend(k);
                    full.sort_unstable();
                    add_to(&mut out, full, c * y);
                }
            }
        }
        out
    }
}

fn monomial_in(d: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i] = Q::one();
    v
}

fn multisets(d: usize, k: usize) -> Vec<Mono> {
    fn go(d: usize, k: usize, start: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(d, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Which generator a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E,
    F,
    H,
}

pub type Matrix = Vec<Vec<Q>>;

/// Deliberate damage used by the negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Perturbs one entry of `f(1)`.
    StructureConstant,
    /// Gives `h` on `w` a component off the generator line.
    HEigenvalue,
}

/// Explicit matrices of `e(t^i), f(t^i), h(t^i)` on a monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    spec: WeylSpec,
    ring: QuotientRing,
    basis: Vec<Mono>,
    length_dims: Vec<usize>,
    ops: BTreeMap<(Generator, usize), Matrix>,
}

pub fn build_weyl_module(spec: &WeylSpec) -> Result<FiniteModule, WeylError> {
    let ring = QuotientRing::new(spec.annihilator());
    let d = ring.dim();
    let big_l = spec.total();
    let h_values: Vec<Q> = (0..d).map(|i| spec.h_value(i as i64)).collect();
    let verma = Verma { ring: &ring, h_values };

    // submodule generated by u = f(0)^{L+1} w, as U(f) U(h) U(e) u
    let mut sub: Vec<Echelon> = vec![Echelon::default(); big_l + 3];
    if d > 0 {
        let u: SVec = [(vec![0; big_l + 1], Q::one())].into();
        let mut e_span: Vec<Echelon> = vec![Echelon::default(); big_l + 2];
        let mut work = vec![u.clone()];
        e_span[big_l + 1].insert(&u);
        while let Some(v) = work.pop() {
            for i in 0..d {
                let w = verma.e(i, &v);
                if let Some(k) = w.keys().next().map(Vec::len) {
                    if e_span[k].insert(&w) {
                        work.push(w);
                    }
                }
            }
        }
        for (k, ech) in e_span.iter().enumerate() {
            let mut work: Vec<SVec> = ech.rows.iter().map(|(_, r)| r.clone()).collect();
            for v in &work {
                sub[k].insert(v);
            }
            while let Some(v) = work.pop() {
                for i in 0..d {
                    let w = verma.h(i, &v);
                    if sub[k].insert(&w) {
                        work.push(w);
                    }
                }
            }
        }
        for k in 1..sub.len() {
            let lower: Vec<SVec> = sub[k - 1].rows.iter().map(|(_, r)| r.clone()).collect();
            for v in &lower {
                for i in 0..d {
                    sub[k].insert(&verma.f(i, v));
                }
            }
        }
    }

    let mut basis = Vec::new();
    let mut length_dims = Vec::new();
    for k in 0.. {
        let fresh: Vec<Mono> = multisets(d, k).into_iter().filter(|m| !sub[k].is_pivot(m)).collect();
        if fresh.is_empty() {
            break;
        }
        if k > big_l {
            return Err(WeylError::NotFinite(k));
        }
        length_dims.push(fresh.len());
        basis.extend(fresh);
    }

    let index: BTreeMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let project = |v: &SVec| -> Vec<Q> {
        let mut out = vec![Q::zero(); basis.len()];
        if let Some(k) = v.keys().next().map(Vec::len) {
            for (m, c) in sub[k].reduce(v) {
                out[index[&m]] = c;
            }
        }
        out
    };
    let mut ops = BTreeMap::new();
    for g in [Generator::E, Generator::F, Generator::H] {
        for i in 0..d {
            let mut mat = vec![vec![Q::zero(); basis.len()]; basis.len()];
            for (col, m) in basis.iter().enumerate() {
                let v: SVec = [(m.clone(), Q::one())].into();
                let img = match g {
                    Generator::E => verma.e(i, &v),
                    Generator::F => verma.f(i, &v),
                    Generator::H => verma.h(i, &v),
                };
                for (row, c) in project(&img).into_iter().enumerate() {
                    mat[row][col] = c;
                }
            }
            ops.insert((g, i), mat);
        }
    }
    Ok(FiniteModule { spec: spec.clone(), ring, basis, length_dims, ops })
}

fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Q::zero(), |s, t| s + t)).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).fold(Q::zero(), |s, t| s + t)).collect())
        .collect()
}

fn mat_comb(a: &Matrix, b: &Matrix, cb: &Q) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * cb).collect()).collect()
}

fn rank(vectors: &[Vec<Q>]) -> usize {
    let mut rows: Vec<Vec<Q>> = vectors.to_vec();
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

impl FiniteModule {
    pub fn spec(&self) -> &WeylSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimensions of the pieces spanned by `k` lowering factors, i.e. of the
    /// `h(0)`-weight spaces `|λ| - 2k`.
    pub fn length_dims(&self) -> &[usize] {
        &self.length_dims
    }

    /// Basis monomials as lists of `t`-exponents of the `f` factors.
    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn op(&self, g: Generator, i: usize) -> Option<&Matrix> {
        self.ops.get(&(g, i))
    }

    /// Matrix of `x ⊗ p(t)` for `p = Σ p_i t^i` in the ring basis.
    pub fn op_elem(&self, g: Generator, p: &[Q]) -> Matrix {
        let n = self.dimension();
        let mut out = vec![vec![Q::zero(); n]; n];
        for (i, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out = mat_comb(&out, &self.ops[&(g, i)], c);
        }
        out
    }

    /// The generator `w` as a coordinate vector.
    pub fn generator(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dimension()];
        v[0] = Q::one();
        v
    }

    /// Applies a corruption; returns `false` when the module is too small to carry it.
    pub fn corrupt(&mut self, c: Corruption) -> bool {
        if self.dimension() < 2 {
            return false;
        }
        let key = match c {
            Corruption::StructureConstant if self.ring.dim() >= 2 => (Generator::F, 1),
            Corruption::StructureConstant => (Generator::F, 0),
            Corruption::HEigenvalue => (Generator::H, 0),
        };
        let m = self.ops.get_mut(&key).expect("operator exists when dimension ≥ 2");
        match c {
            Corruption::StructureConstant => m[1][0] += Q::one(),
            Corruption::HEigenvalue => m[1][0] += Q::one(),
        }
        true
    }
}

/// Outcome of [`verify_cyclic_relations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the defining relations on `w` (including `h(m)` for Laurent `m`)
/// and the loop-`sl2` brackets between all generator matrices.
pub fn verify_cyclic_relations(module: &FiniteModule) -> RelationReport {
    let d = module.ring.dim();
    let w = module.generator();
    let zero = vec![Q::zero(); module.dimension()];
    let mut checked = 0;
    let fail = |checked, msg: String| RelationReport { checked, failure: Some(msg) };

    for i in 0..d {
        checked += 2;
        if mat_vec(&module.ops[&(Generator::E, i)], &w) != zero {
            return fail(checked, format!("e(t^{i}) w ≠ 0"));
        }
        let hw = mat_vec(&module.ops[&(Generator::H, i)], &w);
        let expected: Vec<Q> = w.iter().map(|x| x * module.spec.h_value(i as i64)).collect();
        if hw != expected {
            return fail(checked, format!("h(t^{i}) w ≠ λ(h(t^{i})) w"));
        }
    }
    let reach = d as i64 + 2;
    for m in -reach..=reach {
        checked += 1;
        let hm = module.op_elem(Generator::H, &module.ring.power(m));
        let expected: Vec<Q> = w.iter().map(|x| x * module.spec.h_value(m)).collect();
        if mat_vec(&hm, &w) != expected {
            return fail(checked, format!("h(t^{m}) w ≠ Σ λ_j a_j^{m} w"));
        }
    }
    if d > 0 {
        checked += 1;
        let mut v = w.clone();
        for _ in 0..=module.spec.total() {
            v = mat_vec(&module.ops[&(Generator::F, 0)], &v);
        }
        if v != zero {
            return fail(checked, "f(0)^{|λ|+1} w ≠ 0".into());
        }
    }

    let n = module.dimension();
    let zero_mat = vec![vec![Q::zero(); n]; n];
    let comm = |a: &Matrix, b: &Matrix| mat_comb(&mat_mul(a, b), &mat_mul(b, a), &q(-1));
    use Generator::{E, F, H};
    for i in 0..d {
        for j in 0..d {
            let prod = module.ring.product(i, j).to_vec();
            let cases = [
                (E, F, module.op_elem(H, &prod), "[e,f] = h"),
                (H, E, module.op_elem(E, &prod).into_iter().map(|r| r.into_iter().map(|x| x * q(2)).collect()).collect(), "[h,e] = 2e"),
                (H, F, module.op_elem(F, &prod).into_iter().map(|r| r.into_iter().map(|x| x * q(-2)).collect()).collect(), "[h,f] = -2f"),
                (E, E, zero_mat.clone(), "[e,e] = 0"),
                (F, F, zero_mat.clone(), "[f,f] = 0"),
                (H, H, zero_mat.clone(), "[h,h] = 0"),
            ];
            for (a, b, expected, name) in cases {
                checked += 1;
                if comm(&module.ops[&(a, i)], &module.ops[&(b, j)]) != expected {
                    return fail(checked, format!("{name} fails at (t^{i}, t^{j})"));
                }
            }
        }
    }
    RelationReport { checked, failure: None }
}

/// Dimension of the span of all `h`-monomials applied to `w`.
pub fn highest_h_line_dim(module: &FiniteModule) -> usize {
    let d = module.ring.dim();
    let mut span = vec![module.generator()];
    let mut frontier = span.clone();
    while let Some(v) = frontier.pop() {
        for i in 0..d {
            let hv = mat_vec(&module.ops[&(Generator::H, i)], &v);
            let mut trial = span.clone();
            trial.push(hv.clone());
            if rank(&trial) > rank(&span) {
                span.push(hv.clone());
                frontier.push(hv);
            }
        }
    }
    rank(&span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn build(points: &[i64], weights: &[u64]) -> FiniteModule {
        let spec = WeylSpec::new(points.iter().map(|&a| q(a)).collect(), weights.to_vec()).unwrap();
        build_weyl_module(&spec).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(build(&[], &[]).dimension(), 1);
        assert_eq!(build(&[1], &[1]).dimension(), 2);
        assert_eq!(build(&[1, 2], &[1, 1]).dimension(), 4);
        assert_eq!(build(&[1], &[2]).dimension(), 4);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(WeylSpec::new(vec![q(1), q(1)], vec![1, 1]), Err(WeylError::RepeatedPoint(_))));
        assert!(matches!(WeylSpec::new(vec![q(0)], vec![1]), Err(WeylError::ZeroPoint(_))));
        assert!(matches!(WeylSpec::new(vec![q(1)], vec![0]), Err(WeylError::BadWeight(0))));
        assert!(matches!(WeylSpec::new(vec![q(1)], vec![]), Err(WeylError::Length { .. })));
    }

    #[test]
    fn ring_arithmetic() {
        let spec = WeylSpec::new(vec![q(2), frac(1, 3)], vec![2, 1]).unwrap();
        let ring = QuotientRing::new(spec.annihilator());
        let inv = ring.power(-1);
        assert_eq!(ring.mul(&inv, &ring.power(1)), ring.power(0));
        assert_eq!(ring.mul(&ring.power(3), &ring.power(-5)), ring.power(-2));
    }

    #[test]
    fn relations_and_controls() {
        for m in [build(&[], &[]), build(&[1], &[1]), build(&[3, -1], &[1, 1]), build(&[2], &[2])] {
            assert!(verify_cyclic_relations(&m).passed());
            assert_eq!(highest_h_line_dim(&m), 1);
        }
        let mut m = build(&[1, 2], &[1, 1]);
        assert!(m.corrupt(Corruption::StructureConstant));
        assert!(!verify_cyclic_relations(&m).passed());
        let mut m = build(&[1], &[1]);
        assert!(m.corrupt(Corruption::HEigenvalue));
        assert!(highest_h_line_dim(&m) > 1);
        assert!(!build(&[], &[]).clone().corrupt(Corruption::HEigenvalue));
    }
}
