//! Induced modules realized on truncated PBW monomials, with a memoized
//! straightening action.
//!
//! A monomial `s1 s2 … sk` (factors nonincreasing in the PBW order) stands for
//! `s1 s2 … sk · v_λ`. Acting by a symbol `s`:
//!
//! ```text
//! s · v_λ           = [s] if s lowers, 0 if s raises, λ(s) v_λ otherwise
//! s · (s1 … sk) v_λ = (s s1 … sk) v_λ                         if s lowers and s ≥ s1
//!                   = s1 · (s · (s2 … sk) v_λ) + [s, s1] · (s2 … sk) v_λ   otherwise
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dala::{format_terms, Algebra, AlgebraElement, BasisSymbol, ExtendedRoot};
use crate::partition::{f_a, in_i, phi, ClosedSetSpec, PartitionError, WeightOffset};
use crate::rational::{fmt_q, parse_q, pow_q, q, random_q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("truncation overflow: {symbol} {reason}")]
    Overflow { symbol: String, reason: String },
    #[error("weight violates the module's vanishing condition: {0}")]
    Vanishing(String),
    #[error("unsupported action: {0}")]
    Unsupported(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("operation needs a {0} module")]
    WrongVariant(&'static str),
    #[error("invalid weight: {0}")]
    BadWeight(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// `λ` on `h_1..h_s, c1, c2, d1, d2`, optionally with evaluation data
/// `λ(h_p(0,n)) = Σ_i λ_{p,i} a_{p,i}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightFunctional {
    pub h: Vec<Q>,
    pub c1: Q,
    pub c2: Q,
    pub d1: Q,
    pub d2: Q,
    /// 0-based node → `(a_{p,i}, λ_{p,i})`.
    pub eval: BTreeMap<usize, Vec<(Q, u64)>>,
}

impl WeightFunctional {
    pub fn zero(rank: usize) -> Self {
        Self { h: vec![Q::zero(); rank], ..Default::default() }
    }

    /// Weight with evaluation data; `λ(h_p)` is filled in as `Σ_i λ_{p,i}`.
    pub fn evaluation(rank: usize, eval: BTreeMap<usize, Vec<(Q, u64)>>) -> Result<Self, ModuleError> {
        let mut w = Self::zero(rank);
        w.eval = eval;
        for (&p, pts) in &w.eval {
            if p >= rank {
                return Err(ModuleError::BadWeight(format!("evaluation node {} out of range", p + 1)));
            }
            w.h[p] = q(pts.iter().map(|&(_, m)| m as i64).sum());
        }
        w.validate(rank)?;
        Ok(w)
    }

    pub fn has_evaluation(&self) -> bool {
        self.eval.values().any(|pts| pts.iter().any(|&(_, m)| m > 0))
    }

    pub fn validate(&self, rank: usize) -> Result<(), ModuleError> {
        if self.h.len() != rank {
            return Err(ModuleError::BadWeight(format!("expected {rank} values for h, got {}", self.h.len())));
        }
        if self.eval.is_empty() {
            return Ok(());
        }
        if !self.c1.is_zero() || !self.c2.is_zero() {
            return Err(ModuleError::BadWeight("evaluation weights need c1 = c2 = 0".into()));
        }
        for (&p, pts) in &self.eval {
            if p >= rank {
                return Err(ModuleError::BadWeight(format!("evaluation node {} out of range", p + 1)));
            }
            for (k, (a, _)) in pts.iter().enumerate() {
                if a.is_zero() {
                    return Err(ModuleError::BadWeight("evaluation points must be nonzero".into()));
                }
                if pts[..k].iter().any(|(b, _)| b == a) {
                    return Err(ModuleError::BadWeight(format!("repeated evaluation point {}", fmt_q(a))));
                }
            }
            let total = q(pts.iter().map(|&(_, m)| m as i64).sum());
            if self.h[p] != total {
                return Err(ModuleError::BadWeight(format!(
                    "h[{}] = {} but evaluation multiplicities sum to {}",
                    p + 1,
                    fmt_q(&self.h[p]),
                    fmt_q(&total)
                )));
            }
        }
        for p in 0..rank {
            if !self.eval.contains_key(&p) && !self.h[p].is_zero() {
                return Err(ModuleError::BadWeight(format!("node {} has a value but no evaluation points", p + 1)));
            }
        }
        Ok(())
    }

    /// `λ(h_i(0,n))`; without evaluation data only `n = 0` is nonzero.
    pub fn loop_value(&self, i: usize, n: i64) -> Q {
        if n == 0 {
            return self.h[i].clone();
        }
        match self.eval.get(&i) {
            Some(pts) => pts.iter().map(|(a, m)| q(*m as i64) * pow_q(a, n)).fold(Q::zero(), |x, y| x + y),
            None => Q::zero(),
        }
    }

    /// Random rationals with numerators and denominators up to `bound`.
    pub fn random<R: Rng>(rank: usize, rng: &mut R, bound: i64) -> Self {
        Self {
            h: (0..rank).map(|_| random_q(rng, bound)).collect(),
            c1: random_q(rng, bound),
            c2: random_q(rng, bound),
            d1: random_q(rng, bound),
            d2: random_q(rng, bound),
            eval: BTreeMap::new(),
        }
    }

    /// Parses `{h:[..], c1, c2, d1, d2, eval:{"p":[[a,m],...]}}`; numbers may be
    /// integers or `"p/q"` strings and nodes are 1-based.
    pub fn from_json(value: &Value, rank: usize) -> Result<Self, ModuleError> {
        let bad = |msg: String| ModuleError::BadWeight(msg);
        let obj = value.as_object().ok_or_else(|| bad("weight must be a JSON object".into()))?;
        for key in obj.keys() {
            if !["h", "c1", "c2", "d1", "d2", "eval"].contains(&key.as_str()) {
                return Err(bad(format!("unknown key `{key}`")));
            }
        }
        let scalar = |key: &str| -> Result<Q, ModuleError> {
            match obj.get(key) {
                None => Ok(Q::zero()),
                Some(v) => json_q(v).ok_or_else(|| bad(format!("`{key}` is not a rational"))),
            }
        };
        let mut eval = BTreeMap::new();
        if let Some(e) = obj.get("eval") {
            let e = e.as_object().ok_or_else(|| bad("`eval` must be an object".into()))?;
            for (node, pts) in e {
                let p: usize = node.parse().map_err(|_| bad(format!("bad eval node `{node}`")))?;
                if p == 0 || p > rank {
                    return Err(bad(format!("eval node {p} out of range 1..={rank}")));
                }
                let arr = pts.as_array().ok_or_else(|| bad(format!("eval.{node} must be a list")))?;
                let mut list = Vec::new();
                for pair in arr {
                    let pair = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("eval entries are [a, m]".into()))?;
                    let a = json_q(&pair[0]).ok_or_else(|| bad("eval point is not a rational".into()))?;
                    let m = pair[1].as_u64().ok_or_else(|| bad("eval multiplicity must be a nonnegative integer".into()))?;
                    list.push((a, m));
                }
                eval.insert(p - 1, list);
            }
        }
        let h = match obj.get("h") {
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| json_q(v).ok_or_else(|| bad("h entries must be rationals".into())))
                .collect::<Result<Vec<_>, _>>()?,
            Some(_) => return Err(bad("`h` must be a list".into())),
            None => {
                let mut h = vec![Q::zero(); rank];
                for (&p, pts) in &eval {
                    h[p] = q(pts.iter().map(|&(_, m): &(Q, u64)| m as i64).sum());
                }
                h
            }
        };
        let w = Self { h, c1: scalar("c1")?, c2: scalar("c2")?, d1: scalar("d1")?, d2: scalar("d2")?, eval };
        w.validate(rank)?;
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Q| Value::String(fmt_q(x));
        let eval: serde_json::Map<String, Value> = self
            .eval
            .iter()
            .map(|(p, pts)| ((p + 1).to_string(), pts.iter().map(|(a, m)| json!([s(a), m])).collect()))
            .collect();
        json!({
            "h": self.h.iter().map(s).collect::<Vec<_>>(),
            "c1": s(&self.c1), "c2": s(&self.c2), "d1": s(&self.d1), "d2": s(&self.d2),
            "eval": eval,
        })
    }
}

fn json_q(v: &Value) -> Option<Q> {
    match v {
        Value::Number(n) => n.as_i64().map(q),
        Value::String(s) => parse_q(s),
        _ => None,
    }
}

/// Finite bounds on PBW factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub max_len: usize,
    /// Inclusive window for `t1`-degrees.
    pub t1: (i64, i64),
    /// `|n| ≤ t2` for `t2`-degrees.
    pub t2: i64,
    pub height_cut: i64,
}

impl Truncation {
    pub fn new(max_len: usize, t1: (i64, i64), t2: i64, height_cut: i64) -> Self {
        Self { max_len, t1, t2, height_cut }
    }

    /// Same window in every direction.
    pub fn uniform(max_len: usize, window: i64, height_cut: i64) -> Self {
        Self::new(max_len, (-window, window), window, height_cut)
    }

    pub fn within(&self, other: &Self) -> bool {
        self.max_len <= other.max_len
            && self.t1.0 >= other.t1.0
            && self.t1.1 <= other.t1.1
            && self.t2 <= other.t2
            && self.height_cut <= other.height_cut
    }

    fn admits(&self, alg: &Algebra, s: &BasisSymbol) -> Result<(), String> {
        let Some((m, n)) = s.degrees() else { return Ok(()) };
        if m < self.t1.0 || m > self.t1.1 {
            return Err(format!("has t1-degree {m} outside {}..={}", self.t1.0, self.t1.1));
        }
        if n.abs() > self.t2 {
            return Err(format!("has t2-degree {n} outside ±{}", self.t2));
        }
        let ht = alg.weight_of(s).height();
        if ht.abs() > self.height_cut {
            return Err(format!("has height {ht} beyond the cut {}", self.height_cut));
        }
        Ok(())
    }
}

/// How a symbol acts on the highest weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    Lowering,
    Annihilating,
    Scalar(Q),
}

/// Ordered factors, nonincreasing in the PBW order; empty means `v_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(pub Vec<BasisSymbol>);

impl PbwMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn factors(&self) -> &[BasisSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sparse combination of PBW monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<PbwMonomial, Q>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, Q::one())
    }

    pub fn term(m: PbwMonomial, c: Q) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn highest() -> Self {
        Self::monomial(PbwMonomial::one())
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of `v_λ`.
    pub fn highest_coeff(&self) -> Q {
        self.coeff(&PbwMonomial::one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

type Key = (i64, i64, i64, usize, u8);

/// `M̄(λ)`, `M(λ, 𝓐)` or `M(λ)` over a fixed algebra, truncated.
#[derive(Debug)]
pub struct InducedModule {
    alg: Algebra,
    spec: ClosedSetSpec,
    lambda: WeightFunctional,
    tr: Truncation,
    cache: Mutex<HashMap<(BasisSymbol, PbwMonomial), ModuleVector>>,
}

impl InducedModule {
    pub fn new(alg: Algebra, spec: ClosedSetSpec, lambda: WeightFunctional, tr: Truncation) -> Result<Self, ModuleError> {
        let rank = alg.rank();
        lambda.validate(rank)?;
        match &spec {
            ClosedSetSpec::Imaginary => {}
            ClosedSetSpec::Parabolic(a) => {
                if a.indices().any(|i| i > rank) {
                    return Err(ModuleError::Vanishing("parabolic index out of range".into()));
                }
                if !lambda.c2.is_zero() {
                    return Err(ModuleError::Vanishing("λ(c2) must be 0".into()));
                }
                for i in a.indices() {
                    let value = if i == 0 {
                        let marks = alg.root_system().marks();
                        let theta: Q = (0..rank).map(|j| q(marks[j]) * &lambda.h[j]).fold(Q::zero(), |x, y| x + y);
                        &lambda.c1 - theta
                    } else {
                        lambda.h[i - 1].clone()
                    };
                    if !value.is_zero() {
                        return Err(ModuleError::Vanishing(format!(
                            "λ(α_{i}^∨) = {} but must be 0 for i in the parabolic set",
                            fmt_q(&value)
                        )));
                    }
                }
            }
            ClosedSetSpec::LevelZero => {
                if !lambda.c2.is_zero() {
                    return Err(ModuleError::Vanishing("λ(c2) must be 0 for the level-zero module".into()));
                }
            }
        }
        Ok(Self { alg, spec, lambda, tr, cache: Mutex::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn spec(&self) -> &ClosedSetSpec {
        &self.spec
    }

    pub fn lambda(&self) -> &WeightFunctional {
        &self.lambda
    }

    pub fn truncation(&self) -> &Truncation {
        &self.tr
    }

    /// PBW order key `(height, m, n, index, kind)`.
    pub fn key(&self, s: &BasisSymbol) -> Key {
        match *s {
            BasisSymbol::Root { root, m, n } => (self.alg.root_system().height(root), m, n, root.0, 0),
            BasisSymbol::Cartan { i, m, n } => (0, m, n, i, 1),
            BasisSymbol::C1 => (0, 0, 0, 0, 2),
            BasisSymbol::C2 => (0, 0, 0, 0, 3),
            BasisSymbol::D1 => (0, 0, 0, 0, 4),
            BasisSymbol::D2 => (0, 0, 0, 0, 5),
        }
    }

    pub fn role(&self, s: &BasisSymbol) -> Result<Role, ModuleError> {
        let lam = &self.lambda;
        match *s {
            BasisSymbol::C1 => return Ok(Role::Scalar(lam.c1.clone())),
            BasisSymbol::C2 => return Ok(Role::Scalar(lam.c2.clone())),
            BasisSymbol::D1 => return Ok(Role::Scalar(lam.d1.clone())),
            BasisSymbol::D2 => {
                if self.spec == ClosedSetSpec::LevelZero && lam.has_evaluation() {
                    return Err(ModuleError::Unsupported(
                        "d2 does not act on a level-zero module whose weight has nonzero loop values".into(),
                    ));
                }
                return Ok(Role::Scalar(lam.d2.clone()));
            }
            BasisSymbol::Cartan { i, m: 0, n: 0 } => return Ok(Role::Scalar(lam.h[i].clone())),
            BasisSymbol::Cartan { i, m: 0, n } if self.spec == ClosedSetSpec::LevelZero => {
                return Ok(Role::Scalar(lam.loop_value(i, n)))
            }
            _ => {}
        }
        let rs = self.alg.root_system();
        let w = self.alg.weight_of(s);
        let raising = match &self.spec {
            ClosedSetSpec::Imaginary => in_i(rs, &w)?,
            ClosedSetSpec::Parabolic(a) => f_a(rs, a, &w) >= 0,
            ClosedSetSpec::LevelZero => phi(rs, &w) > 0,
        };
        Ok(if raising { Role::Annihilating } else { Role::Lowering })
    }

    fn new_monomial(&self, s: BasisSymbol, rest: &[BasisSymbol]) -> Result<PbwMonomial, ModuleError> {
        self.tr.admits(&self.alg, &s).map_err(|reason| ModuleError::Overflow {
            symbol: self.alg.format_symbol(&s),
            reason,
        })?;
        if rest.len() + 1 > self.tr.max_len {
            return Err(ModuleError::Overflow {
                symbol: self.alg.format_symbol(&s),
                reason: format!("would make a monomial longer than {}", self.tr.max_len),
            });
        }
        let mut f = Vec::with_capacity(rest.len() + 1);
        f.push(s);
        f.extend_from_slice(rest);
        Ok(PbwMonomial(f))
    }

    /// `s · (monomial) v_λ` in normal form.
    pub fn act_symbol(&self, s: BasisSymbol, mono: &PbwMonomial) -> Result<ModuleVector, ModuleError> {
        let cache_key = (s, mono.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&cache_key) {
            return Ok(hit.clone());
        }
        let role = self.role(&s)?;
        let out = match mono.0.split_first() {
            None => match role {
                Role::Lowering => ModuleVector::monomial(self.new_monomial(s, &[])?),
                Role::Annihilating => ModuleVector::zero(),
                Role::Scalar(c) => ModuleVector::term(PbwMonomial::one(), c),
            },
            Some((s1, rest)) => {
                if role == Role::Lowering && self.key(&s) >= self.key(s1) {
                    ModuleVector::monomial(self.new_monomial(s, &mono.0)?)
                } else {
                    let rest = PbwMonomial(rest.to_vec());
                    let inner = self.act_symbol(s, &rest)?;
                    let mut out = self.act_symbol_vector(*s1, &inner)?;
                    let br = self.alg.bracket_symbols(s, *s1);
                    for (t, c) in br.iter() {
                        out.add_scaled(&self.act_symbol(*t, &rest)?, c);
                    }
                    out
                }
            }
        };
        self.cache.lock().expect("cache lock").insert(cache_key, out.clone());
        Ok(out)
    }

    pub fn act_symbol_vector(&self, s: BasisSymbol, v: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        let mut out = ModuleVector::zero();
        for (m, c) in v.iter() {
            out.add_scaled(&self.act_symbol(s, m)?, c);
        }
        Ok(out)
    }

    pub fn act(&self, a: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        let mut out = ModuleVector::zero();
        for (s, c) in a.iter() {
            out.add_scaled(&self.act_symbol_vector(*s, v)?, c);
        }
        Ok(out)
    }

    /// `w_1 w_2 … w_k · v` (rightmost factor acts first).
    pub fn apply_word(&self, word: &[BasisSymbol], v: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        let mut out = v.clone();
        for s in word.iter().rev() {
            out = self.act_symbol_vector(*s, &out)?;
        }
        Ok(out)
    }

    /// Weight of a monomial relative to `λ`.
    pub fn monomial_weight(&self, m: &PbwMonomial) -> ExtendedRoot {
        m.0.iter()
            .fold(ExtendedRoot::zero(self.alg.rank()), |acc, s| acc.add(&self.alg.weight_of(s)))
    }

    /// Every symbol with the given role inside a truncation window.
    pub fn symbols_with_role(&self, tr: &Truncation, want: fn(&Role) -> bool) -> Result<Vec<BasisSymbol>, ModuleError> {
        let rs = self.alg.root_system();
        let mut out = Vec::new();
        for m in tr.t1.0..=tr.t1.1 {
            for n in -tr.t2..=tr.t2 {
                let roots = rs
                    .root_ids()
                    .filter(|&r| rs.height(r).abs() <= tr.height_cut)
                    .map(|root| BasisSymbol::Root { root, m, n });
                let carts = (0..self.alg.rank()).map(|i| BasisSymbol::Cartan { i, m, n });
                for s in roots.chain(carts) {
                    if want(&self.role(&s)?) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_by_key(|s| std::cmp::Reverse(self.key(s)));
        Ok(out)
    }

    /// Coordinates used to prune monomial searches: finite part, `m`, `n`, `φ`
    /// and, for parabolic modules, `f_𝓐`.
    fn search_coords(&self, w: &ExtendedRoot) -> Vec<i64> {
        let rs = self.alg.root_system();
        let mut c = w.finite.clone();
        c.push(w.m);
        c.push(w.n);
        c.push(phi(rs, w));
        if let ClosedSetSpec::Parabolic(a) = &self.spec {
            c.push(f_a(rs, a, w));
        }
        c
    }

    /// Nonincreasing monomials in `candidates` (already sorted descending)
    /// of length at most `max_len` whose weight matches `target` on every
    /// coordinate where `target` is `Some`.
    pub fn search_monomials(
        &self,
        candidates: &[BasisSymbol],
        target: &ExtendedRoot,
        ignore_delta2: bool,
        max_len: usize,
    ) -> Vec<PbwMonomial> {
        let coords: Vec<Vec<i64>> = candidates.iter().map(|s| self.search_coords(&self.alg.weight_of(s))).collect();
        let mut goal: Vec<Option<i64>> = self.search_coords(target).into_iter().map(Some).collect();
        let n_idx = self.alg.rank() + 1;
        if ignore_delta2 {
            goal[n_idx] = None;
            // φ does not see δ2, f_𝓐 neither, so only n is freed
        }
        let dim = goal.len();
        let len = candidates.len();
        let mut suffix_min = vec![vec![i64::MAX; dim]; len + 1];
        let mut suffix_max = vec![vec![i64::MIN; dim]; len + 1];
        for j in (0..len).rev() {
            for d in 0..dim {
                suffix_min[j][d] = suffix_min[j + 1][d].min(coords[j][d]);
                suffix_max[j][d] = suffix_max[j + 1][d].max(coords[j][d]);
            }
        }
        struct Ctx<'a> {
            coords: &'a [Vec<i64>],
            goal: &'a [Option<i64>],
            smin: &'a [Vec<i64>],
            smax: &'a [Vec<i64>],
            max_len: usize,
            out: Vec<Vec<usize>>,
        }
        fn feasible(ctx: &Ctx, j: usize, acc: &[i64], slots: usize) -> bool {
            let slots = slots as i64;
            ctx.goal.iter().enumerate().all(|(d, g)| match g {
                None => true,
                Some(g) => {
                    let r = g - acc[d];
                    if ctx.smin[j][d] == i64::MAX {
                        return r == 0;
                    }
                    let lo = (slots * ctx.smin[j][d]).min(0);
                    let hi = (slots * ctx.smax[j][d]).max(0);
                    lo <= r && r <= hi
                }
            })
        }
        fn dfs(ctx: &mut Ctx, start: usize, acc: &mut Vec<i64>, chosen: &mut Vec<usize>) {
            if ctx.goal.iter().enumerate().all(|(d, g)| g.map_or(true, |g| g == acc[d])) {
                ctx.out.push(chosen.clone());
            }
            if chosen.len() == ctx.max_len {
                return;
            }
            let slots = ctx.max_len - chosen.len();
            for j in start..ctx.coords.len() {
                if !feasible(ctx, j, acc, slots) {
                    continue;
                }
                for d in 0..acc.len() {
                    acc[d] += ctx.coords[j][d];
                }
                chosen.push(j);
                if feasible(ctx, j, acc, slots - 1) {
                    dfs(ctx, j, acc, chosen);
                }
                chosen.pop();
                for d in 0..acc.len() {
                    acc[d] -= ctx.coords[j][d];
                }
            }
        }
        let mut ctx = Ctx { coords: &coords, goal: &goal, smin: &suffix_min, smax: &suffix_max, max_len, out: Vec::new() };
        dfs(&mut ctx, 0, &mut vec![0; dim], &mut Vec::new());
        let mut out: Vec<PbwMonomial> =
            ctx.out.into_iter().map(|ix| PbwMonomial(ix.into_iter().map(|j| candidates[j]).collect())).collect();
        out.sort_by(|a, b| self.monomial_order(a, b));
        out
    }

    fn monomial_order(&self, a: &PbwMonomial, b: &PbwMonomial) -> std::cmp::Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.0.iter().map(|s| self.key(s)).cmp(b.0.iter().map(|s| self.key(s))).reverse())
    }

    /// Monomials of weight `λ - μ` inside `tr`.
    pub fn weight_space_basis_with(&self, mu: &WeightOffset, tr: &Truncation) -> Result<Vec<PbwMonomial>, ModuleError> {
        let target = mu.to_extended(self.alg.root_system())?.neg();
        let candidates = self.symbols_with_role(tr, |r| *r == Role::Lowering)?;
        Ok(self.search_monomials(&candidates, &target, false, tr.max_len))
    }

    pub fn weight_space_basis(&self, mu: &WeightOffset) -> Result<Vec<PbwMonomial>, ModuleError> {
        self.weight_space_basis_with(mu, &self.tr)
    }

    /// Dimension of the `λ - μ` space restricted to a smaller truncation.
    pub fn truncated_dim(&self, mu: &WeightOffset, tr: &Truncation) -> Result<usize, ModuleError> {
        if !tr.within(&self.tr) {
            return Err(ModuleError::InsufficientTruncation("requested window exceeds the module's".into()));
        }
        Ok(self.weight_space_basis_with(mu, tr)?.len())
    }

    /// `k ↦ dim M̄(λ)_{λ-kδ2}` for `k = 0..=k_max`.
    pub fn delta2_dim_table(&self, k_max: usize) -> Result<Vec<usize>, ModuleError> {
        if self.spec != ClosedSetSpec::Imaginary {
            return Err(ModuleError::WrongVariant("imaginary"));
        }
        if self.tr.max_len < k_max || (self.tr.t2 as usize) < k_max {
            return Err(ModuleError::InsufficientTruncation(format!(
                "need max_len and t2 window at least {k_max}"
            )));
        }
        let rank = self.alg.rank();
        (0..=k_max)
            .map(|k| Ok(self.weight_space_basis(&WeightOffset::delta2(rank, k as i64))?.len()))
            .collect()
    }

    pub fn format_monomial(&self, m: &PbwMonomial) -> String {
        let mut parts: Vec<String> = m.0.iter().map(|s| self.alg.format_symbol(s)).collect();
        parts.push("v".into());
        parts.join("·")
    }

    pub fn format_vector(&self, v: &ModuleVector) -> String {
        format_terms(v.iter().map(|(m, c)| (self.format_monomial(m), c)))
    }

    /// Number of cached straightening results.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// One row of the surjection chain table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDims {
    pub mu: WeightOffset,
    pub imaginary: usize,
    pub level_zero: usize,
    pub parabolic_small: usize,
    pub parabolic_large: usize,
}

impl ChainDims {
    pub fn monotone(&self) -> bool {
        self.imaginary >= self.level_zero
            && self.level_zero >= self.parabolic_small
            && self.parabolic_small >= self.parabolic_large
    }
}

/// Dimensions of `M̄(λ)`, `M(λ)`, `M(λ,𝓐'')` and `M(λ,𝓐)` at the same truncation.
pub fn surjection_chain_dims(
    alg: &Algebra,
    lambda: &WeightFunctional,
    small: &crate::partition::ParabolicSpec,
    large: &crate::partition::ParabolicSpec,
    mus: &[WeightOffset],
    tr: Truncation,
) -> Result<Vec<ChainDims>, ModuleError> {
    if !small.is_subset(large) {
        return Err(ModuleError::BadWeight("the smaller parabolic set must be contained in the larger".into()));
    }
    let build = |spec| InducedModule::new(alg.clone(), spec, lambda.clone(), tr);
    let ivm = build(ClosedSetSpec::Imaginary)?;
    let lz = build(ClosedSetSpec::LevelZero)?;
    let ps = build(ClosedSetSpec::Parabolic(small.clone()))?;
    let pl = build(ClosedSetSpec::Parabolic(large.clone()))?;
    mus.iter()
        .map(|mu| {
            Ok(ChainDims {
                mu: mu.clone(),
                imaginary: ivm.weight_space_basis(mu)?.len(),
                level_zero: lz.weight_space_basis(mu)?.len(),
                parabolic_small: ps.weight_space_basis(mu)?.len(),
                parabolic_large: pl.weight_space_basis(mu)?.len(),
            })
        })
        .collect()
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::ParabolicSpec;
    use crate::rational::frac;

    fn a1() -> Algebra {
        Algebra::from_label("A1").unwrap()
    }

    fn generic(rank: usize) -> WeightFunctional {
        let mut w = WeightFunctional::zero(rank);
        w.h = (0..rank).map(|i| frac(3 + i as i64, 2)).collect();
        w.c1 = frac(2, 7);
        w.c2 = frac(5, 3);
        w
    }

    fn h(i: usize, m: i64, n: i64) -> BasisSymbol {
        BasisSymbol::Cartan { i, m, n }
    }

    /// Independent count of s-colored partitions of k.
    fn colored_partitions(s: usize, k: usize) -> usize {
        // coefficient of x^k in Π_j (1 - x^j)^{-s}
        let mut p = vec![0usize; k + 1];
        p[0] = 1;
        for _ in 0..s {
            for j in 1..=k {
                for t in j..=k {
                    p[t] += p[t - j];
                }
            }
        }
        p[k]
    }

    #[test]
    fn creation_checks_vanishing_conditions() {
        let tr = Truncation::uniform(3, 2, 2);
        assert!(InducedModule::new(a1(), ClosedSetSpec::Imaginary, generic(1), tr).is_ok());
        let mut w = WeightFunctional::zero(1);
        w.h[0] = q(1);
        let par = ClosedSetSpec::Parabolic(ParabolicSpec::new(1, [1]).unwrap());
        assert!(matches!(InducedModule::new(a1(), par, w, tr), Err(ModuleError::Vanishing(_))));
        let mut w = WeightFunctional::zero(1);
        w.c2 = q(1);
        assert!(matches!(InducedModule::new(a1(), ClosedSetSpec::LevelZero, w, tr), Err(ModuleError::Vanishing(_))));
    }

    #[test]
    fn basic_actions() {
        let g = a1();
        let m = InducedModule::new(g.clone(), ClosedSetSpec::Imaginary, generic(1), Truncation::uniform(4, 3, 2)).unwrap();
        let v = ModuleVector::highest();
        assert!(m.act_symbol_vector(h(0, 0, 1), &v).unwrap().is_zero());
        // e(0,0) f(0,-1) v = h(0,-1) v
        let f = g.root_symbol("-a1", 0, -1).unwrap();
        let e = g.root_symbol("a1", 0, 0).unwrap();
        let fv = m.act_symbol_vector(f, &v).unwrap();
        let efv = m.act_symbol_vector(e, &fv).unwrap();
        assert_eq!(efv, ModuleVector::monomial(PbwMonomial(vec![h(0, 0, -1)])));
        // h(0,1) h(0,-1) v = 2 λ(c2) v
        let hv = m.act_symbol_vector(h(0, 0, -1), &v).unwrap();
        let back = m.act_symbol_vector(h(0, 0, 1), &hv).unwrap();
        assert_eq!(back, ModuleVector::term(PbwMonomial::one(), frac(10, 3)));
    }

    #[test]
    fn level_zero_evaluation_values() {
        let g = a1();
        let w = WeightFunctional::evaluation(1, BTreeMap::from([(0, vec![(q(2), 3)])])).unwrap();
        let m = InducedModule::new(g, ClosedSetSpec::LevelZero, w, Truncation::uniform(3, 3, 2)).unwrap();
        let out = m.act_symbol_vector(h(0, 0, 3), &ModuleVector::highest()).unwrap();
        assert_eq!(out, ModuleVector::term(PbwMonomial::one(), q(24)));
        assert!(matches!(m.role(&BasisSymbol::D2), Err(ModuleError::Unsupported(_))));
    }

    #[test]
    fn imaginary_delta2_dimensions() {
        let m = InducedModule::new(a1(), ClosedSetSpec::Imaginary, generic(1), Truncation::uniform(8, 8, 2)).unwrap();
        let dims = m.delta2_dim_table(8).unwrap();
        let oracle: Vec<usize> = (0..=8).map(|k| colored_partitions(1, k)).collect();
        assert_eq!(dims, oracle);
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let basis = m.weight_space_basis(&WeightOffset::delta2(1, 2)).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(basis.contains(&PbwMonomial(vec![h(0, 0, -2)])));
        assert!(basis.contains(&PbwMonomial(vec![h(0, 0, -1), h(0, 0, -1)])));
        let a2 = Algebra::from_label("A2").unwrap();
        let m2 = InducedModule::new(a2, ClosedSetSpec::Imaginary, generic(2), Truncation::uniform(5, 5, 2)).unwrap();
        assert_eq!(m2.delta2_dim_table(5).unwrap(), (0..=5).map(|k| colored_partitions(2, k)).collect::<Vec<_>>());
        assert!(m.delta2_dim_table(9).is_err());
    }

    #[test]
    fn growth_at_minus_alpha() {
        let m = InducedModule::new(a1(), ClosedSetSpec::Imaginary, generic(1), Truncation::uniform(6, 4, 2)).unwrap();
        let mu = WeightOffset { alpha: vec![0, 1], delta2: 0 };
        let dims: Vec<usize> =
            (1..=4).map(|d| m.truncated_dim(&mu, &Truncation::new(5, (-4, 4), d, 2)).unwrap()).collect();
        assert_eq!(dims, vec![2, 4, 7, 12]);
        assert_eq!(m.truncated_dim(&WeightOffset::delta2(1, 0), &Truncation::uniform(5, 4, 2)).unwrap(), 1);
    }

    #[test]
    fn level_zero_has_no_pure_delta2_spaces() {
        let m = InducedModule::new(a1(), ClosedSetSpec::LevelZero, WeightFunctional::zero(1), Truncation::uniform(4, 3, 2))
            .unwrap();
        for k in 1..=3 {
            assert!(m.weight_space_basis(&WeightOffset::delta2(1, k)).unwrap().is_empty());
        }
    }

    #[test]
    fn overflow_is_an_error() {
        let g = a1();
        let m = InducedModule::new(g.clone(), ClosedSetSpec::Imaginary, generic(1), Truncation::uniform(1, 2, 2)).unwrap();
        let f = g.root_symbol("-a1", 0, 0).unwrap();
        let v = m.act_symbol_vector(f, &ModuleVector::highest()).unwrap();
        assert!(matches!(m.act_symbol_vector(f, &v), Err(ModuleError::Overflow { .. })));
        let far = g.root_symbol("-a1", 0, -5).unwrap();
        assert!(matches!(m.act_symbol_vector(far, &ModuleVector::highest()), Err(ModuleError::Overflow { .. })));
    }

    #[test]
    fn derivations_act_diagonally() {
        let g = a1();
        let mut lam = generic(1);
        lam.d1 = q(3);
        lam.d2 = frac(1, 2);
        let m = InducedModule::new(g, ClosedSetSpec::Imaginary, lam, Truncation::uniform(4, 3, 2)).unwrap();
        let basis = m.weight_space_basis(&WeightOffset { alpha: vec![1, 1], delta2: 1 }).unwrap();
        assert!(!basis.is_empty());
        for b in basis {
            let w = m.monomial_weight(&b);
            let v = ModuleVector::monomial(b.clone());
            assert_eq!(m.act_symbol_vector(BasisSymbol::D1, &v).unwrap(), v.scaled(&(q(3) + q(w.m))));
            assert_eq!(m.act_symbol_vector(BasisSymbol::D2, &v).unwrap(), v.scaled(&(frac(1, 2) + q(w.n))));
        }
    }

    #[test]
    fn chain_examples() {
        let g = a1();
        let lam = WeightFunctional::zero(1);
        let mus = [WeightOffset::delta2(1, 1), WeightOffset::delta2(1, 0), WeightOffset { alpha: vec![0, 1], delta2: 0 }];
        let rows = surjection_chain_dims(
            &g,
            &lam,
            &ParabolicSpec::default(),
            &ParabolicSpec::new(1, [1]).unwrap(),
            &mus,
            Truncation::uniform(3, 2, 2),
        )
        .unwrap();
        assert_eq!((rows[0].imaginary, rows[0].level_zero, rows[0].parabolic_small, rows[0].parabolic_large), (1, 0, 0, 0));
        assert_eq!((rows[1].imaginary, rows[1].level_zero, rows[1].parabolic_small, rows[1].parabolic_large), (1, 1, 1, 1));
        assert!(rows.iter().all(ChainDims::monotone));
    }

    #[test]
    fn weight_json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"h":[1,"1/2"],"c2":"0","eval":{}}"#).unwrap();
        let w = WeightFunctional::from_json(&v, 2).unwrap();
        assert_eq!(w.h[1], frac(1, 2));
        let v: Value = serde_json::from_str(r#"{"eval":{"1":[[2,1],["1/3",2]]}}"#).unwrap();
        let w = WeightFunctional::from_json(&v, 2).unwrap();
        assert_eq!(w.h, vec![q(3), q(0)]);
        assert_eq!(w.loop_value(0, 1), q(2) + frac(2, 3));
        assert_eq!(WeightFunctional::from_json(&w.to_json(), 2).unwrap(), w);
        let bad: Value = serde_json::from_str(r#"{"eval":{"1":[[2,1],[2,1]]}}"#).unwrap();
        assert!(WeightFunctional::from_json(&bad, 2).is_err());
        let bad: Value = serde_json::from_str(r#"{"h":[1],"bogus":1}"#).unwrap();
        assert!(WeightFunctional::from_json(&bad, 1).is_err());
    }
}
