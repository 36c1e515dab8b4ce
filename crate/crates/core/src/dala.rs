//! Elements and bracket of the double affine algebra
//! `𝔤 ⊗ C[t1^±, t2^±] ⊕ Cc1 ⊕ Cc2 ⊕ Cd1 ⊕ Cd2`.
//!
//! The central term is the two-variable cocycle
//!
//! ```text
//! [x(m1,n1), y(m2,n2)] = [x,y](m1+m2, n1+n2) + (x|y) δ_{m1+m2,0} δ_{n1+n2,0} (m1 c1 + n1 c2)
//! ```
//!
//! and `d1`, `d2` measure the `t1`- and `t2`-degree respectively.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::rational::{fmt_q, parse_q, q, Q};
use crate::rootsys::{ChevalleySymbol, RootId, RootSystem, RootSystemError};

/// A basis vector of the algebra.
///
/// The derived order (kind, then root or node, then `m`, then `n`) is the
/// canonical term order of [`AlgebraElement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    Root { root: RootId, m: i64, n: i64 },
    /// `h_i(m,n)` for a 0-based node `i`.
    Cartan { i: usize, m: i64, n: i64 },
    C1,
    C2,
    D1,
    D2,
}

impl BasisSymbol {
    /// `(m, n)` degrees; centers and derivations have none.
    pub fn degrees(&self) -> Option<(i64, i64)> {
        match *self {
            BasisSymbol::Root { m, n, .. } | BasisSymbol::Cartan { m, n, .. } => Some((m, n)),
            _ => None,
        }
    }

    fn loop_part(&self) -> Option<(ChevalleySymbol, i64, i64)> {
        match *self {
            BasisSymbol::Root { root, m, n } => Some((ChevalleySymbol::Root(root), m, n)),
            BasisSymbol::Cartan { i, m, n } => Some((ChevalleySymbol::Cartan(i), m, n)),
            _ => None,
        }
    }

    fn from_loop(x: ChevalleySymbol, m: i64, n: i64) -> Self {
        match x {
            ChevalleySymbol::Root(root) => BasisSymbol::Root { root, m, n },
            ChevalleySymbol::Cartan(i) => BasisSymbol::Cartan { i, m, n },
        }
    }
}

/// Point of the root lattice `Q ⊕ Zδ1 ⊕ Zδ2` in `(finite, m, n)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedRoot {
    pub finite: Vec<i64>,
    pub m: i64,
    pub n: i64,
}

impl ExtendedRoot {
    pub fn zero(rank: usize) -> Self {
        Self { finite: vec![0; rank], m: 0, n: 0 }
    }

    pub fn new(finite: Vec<i64>, m: i64, n: i64) -> Self {
        Self { finite, m, n }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.n == 0 && self.finite.iter().all(|&c| c == 0)
    }

    pub fn is_imaginary(&self) -> bool {
        self.finite.iter().all(|&c| c == 0)
    }

    pub fn height(&self) -> i64 {
        self.finite.iter().sum()
    }

    pub fn neg(&self) -> Self {
        Self { finite: self.finite.iter().map(|c| -c).collect(), m: -self.m, n: -self.n }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            finite: self.finite.iter().zip(&other.finite).map(|(a, b)| a + b).collect(),
            m: self.m + other.m,
            n: self.n + other.n,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { finite: self.finite.iter().map(|c| c * k).collect(), m: self.m * k, n: self.n * k }
    }
}

/// Deliberate defects used as negative controls by tests and the CLI.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Central term `(x|y) δ_{m1,-n1} δ_{m2,-n2} (m1 c1 + m2 c2)`.
    PrintedCocycle,
    /// `[e_α(m1,n1), e_{-α}(m2,n2)]` returns `-α^∨` for positive `α` when `n1 + n2 ≠ 0`.
    FlippedCoroot,
}

/// Sparse exact combination of basis symbols with no stored zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisSymbol, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        Self::term(s, Q::one())
    }

    pub fn term(s: BasisSymbol, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(s, c);
        e
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        for (s, v) in &other.terms {
            self.add_term(*s, v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &BasisSymbol) -> Q {
        self.terms.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisSymbol, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl FromIterator<(BasisSymbol, Q)> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = (BasisSymbol, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (s, c) in iter {
            out.add_term(s, c);
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty element")]
    Empty,
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("bad symbol `{0}`")]
    Symbol(String),
    #[error("unknown root `{0}`")]
    Root(String),
    #[error("node index {0} out of range")]
    Node(usize),
}

/// Witness of a failed Jacobi sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiWitness {
    pub triple: [BasisSymbol; 3],
    pub residual: AlgebraElement,
}

/// The double affine algebra over a fixed simply-laced root system.
#[derive(Debug, Clone)]
pub struct Algebra {
    rs: Arc<RootSystem>,
    fault: Fault,
}

impl Algebra {
    pub fn new(rs: RootSystem) -> Self {
        Self { rs: Arc::new(rs), fault: Fault::None }
    }

    pub fn from_label(label: &str) -> Result<Self, RootSystemError> {
        Ok(Self::new(RootSystem::from_label(label)?))
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = fault;
        self
    }

    pub fn fault(&self) -> Fault {
        self.fault
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Bracket of two basis symbols.
    pub fn bracket_symbols(&self, a: BasisSymbol, b: BasisSymbol) -> AlgebraElement {
        use BasisSymbol::*;
        let mut out = AlgebraElement::zero();
        match (a, b) {
            (C1 | C2, _) | (_, C1 | C2) => {}
            (D1 | D2, D1 | D2) => {}
            (D1, x) | (D2, x) => {
                if let Some((m, n)) = x.degrees() {
                    let k = if a == D1 { m } else { n };
                    out.add_term(x, q(k));
                }
            }
            (x, D1) | (x, D2) => {
                if let Some((m, n)) = x.degrees() {
                    let k = if b == D1 { m } else { n };
                    out.add_term(x, q(-k));
                }
            }
            _ => {
                let (x, m1, n1) = a.loop_part().expect("loop symbol");
                let (y, m2, n2) = b.loop_part().expect("loop symbol");
                for (z, c) in self.rs.bracket(x, y) {
                    let c = match (self.fault, x, y) {
                        (Fault::FlippedCoroot, ChevalleySymbol::Root(r), ChevalleySymbol::Root(_))
                            if matches!(z, ChevalleySymbol::Cartan(_)) && self.rs.root(r).is_positive() && n1 + n2 != 0 =>
                        {
                            -c
                        }
                        _ => c,
                    };
                    out.add_term(BasisSymbol::from_loop(z, m1 + m2, n1 + n2), q(c));
                }
                let form = self.rs.invariant_form(x, y);
                if form != 0 {
                    let (k1, k2) = match self.fault {
                        Fault::PrintedCocycle => {
                            if m1 == -n1 && m2 == -n2 {
                                (m1, m2)
                            } else {
                                (0, 0)
                            }
                        }
                        _ => {
                            if m1 + m2 == 0 && n1 + n2 == 0 {
                                (m1, n1)
                            } else {
                                (0, 0)
                            }
                        }
                    };
                    out.add_term(C1, q(form * k1));
                    out.add_term(C2, q(form * k2));
                }
            }
        }
        out
    }

    /// Bilinear extension of [`Algebra::bracket_symbols`].
    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_scaled(&self.bracket_symbols(*x, *y), &(cx * cy));
            }
        }
        out
    }

    /// Root-lattice grading of a symbol; zero for centers, derivations and `h_i(0,0)`.
    pub fn weight_of(&self, s: &BasisSymbol) -> ExtendedRoot {
        match *s {
            BasisSymbol::Root { root, m, n } => ExtendedRoot::new(self.rs.root(root).coords.clone(), m, n),
            BasisSymbol::Cartan { m, n, .. } => ExtendedRoot::new(vec![0; self.rank()], m, n),
            _ => ExtendedRoot::zero(self.rank()),
        }
    }

    /// `e_α(m,n)` for `α` given by name, e.g. `a1+a2` or `-a1`.
    pub fn root_symbol(&self, name: &str, m: i64, n: i64) -> Option<BasisSymbol> {
        self.rs.parse_root(name).map(|root| BasisSymbol::Root { root, m, n })
    }

    /// Every loop symbol with degrees in `[lo, hi]²` followed by `c1, c2, d1, d2`.
    pub fn symbols_in_box(&self, lo: i64, hi: i64) -> Vec<BasisSymbol> {
        let mut out = Vec::new();
        for m in lo..=hi {
            for n in lo..=hi {
                out.extend(self.rs.root_ids().map(|root| BasisSymbol::Root { root, m, n }));
                out.extend((0..self.rank()).map(|i| BasisSymbol::Cartan { i, m, n }));
            }
        }
        out.extend([BasisSymbol::C1, BasisSymbol::C2, BasisSymbol::D1, BasisSymbol::D2]);
        out
    }

    /// Uniform random basis symbol with loop degrees in `[lo, hi]`.
    pub fn random_symbol<R: Rng>(&self, rng: &mut R, lo: i64, hi: i64) -> BasisSymbol {
        let nroots = self.rs.roots().len();
        let k = rng.gen_range(0..nroots + self.rank() + 4);
        let m = rng.gen_range(lo..=hi);
        let n = rng.gen_range(lo..=hi);
        if k < nroots {
            BasisSymbol::Root { root: RootId(k), m, n }
        } else if k < nroots + self.rank() {
            BasisSymbol::Cartan { i: k - nroots, m, n }
        } else {
            [BasisSymbol::C1, BasisSymbol::C2, BasisSymbol::D1, BasisSymbol::D2][k - nroots - self.rank()]
        }
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]`.
    pub fn jacobiator(&self, a: BasisSymbol, b: BasisSymbol, c: BasisSymbol) -> AlgebraElement {
        let (a, b, c) = (AlgebraElement::symbol(a), AlgebraElement::symbol(b), AlgebraElement::symbol(c));
        let mut out = self.bracket(&self.bracket(&a, &b), &c);
        out.add_scaled(&self.bracket(&self.bracket(&b, &c), &a), &Q::one());
        out.add_scaled(&self.bracket(&self.bracket(&c, &a), &b), &Q::one());
        out
    }

    /// Samples `trials` random triples with degrees in `[-5, 5]`.
    pub fn jacobi_sample_check<R: Rng>(&self, trials: usize, rng: &mut R) -> Result<(), JacobiWitness> {
        for _ in 0..trials {
            let t = [
                self.random_symbol(rng, -5, 5),
                self.random_symbol(rng, -5, 5),
                self.random_symbol(rng, -5, 5),
            ];
            let residual = self.jacobiator(t[0], t[1], t[2]);
            if !residual.is_zero() {
                return Err(JacobiWitness { triple: t, residual });
            }
        }
        Ok(())
    }

    /// Jacobi over all triples of symbols with degrees in `[lo, hi]`.
    pub fn jacobi_exhaustive(&self, lo: i64, hi: i64) -> Result<usize, JacobiWitness> {
        let syms = self.symbols_in_box(lo, hi);
        let mut count = 0;
        for (ia, &a) in syms.iter().enumerate() {
            for (ib, &b) in syms.iter().enumerate().skip(ia) {
                for &c in &syms[ib..] {
                    let residual = self.jacobiator(a, b, c);
                    if !residual.is_zero() {
                        return Err(JacobiWitness { triple: [a, b, c], residual });
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    pub fn format_symbol(&self, s: &BasisSymbol) -> String {
        match *s {
            BasisSymbol::Root { root, m, n } => {
                let r = self.rs.root(root);
                if r.is_positive() {
                    format!("e[{}]({m},{n})", self.rs.root_name(root))
                } else {
                    format!("f[{}]({m},{n})", self.rs.root_name(self.rs.neg(root)))
                }
            }
            BasisSymbol::Cartan { i, m, n } => format!("h[{}]({m},{n})", i + 1),
            BasisSymbol::C1 => "c1".into(),
            BasisSymbol::C2 => "c2".into(),
            BasisSymbol::D1 => "d1".into(),
            BasisSymbol::D2 => "d2".into(),
        }
    }

    /// Formats as `3/2*e[a1](1,-2) + h[2](0,3)`; zero prints as `0`.
    pub fn format(&self, e: &AlgebraElement) -> String {
        format_terms(e.iter().map(|(s, c)| (self.format_symbol(s), c)))
    }

    pub fn parse(&self, text: &str) -> Result<AlgebraElement, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::Empty);
        }
        if compact == "0" {
            return Ok(AlgebraElement::zero());
        }
        let mut out = AlgebraElement::zero();
        for (sign, term) in split_terms(&compact) {
            let (coeff, sym) = match term.rsplit_once('*') {
                Some((c, s)) => (parse_q(c).ok_or_else(|| ParseError::Coefficient(c.into()))?, s),
                None => (Q::one(), term),
            };
            let s = self.parse_symbol(sym)?;
            out.add_term(s, coeff * q(sign));
        }
        Ok(out)
    }

    pub fn parse_symbol(&self, s: &str) -> Result<BasisSymbol, ParseError> {
        let bad = || ParseError::Symbol(s.to_string());
        match s {
            "c1" => return Ok(BasisSymbol::C1),
            "c2" => return Ok(BasisSymbol::C2),
            "d1" => return Ok(BasisSymbol::D1),
            "d2" => return Ok(BasisSymbol::D2),
            _ => {}
        }
        let kind = s.chars().next().ok_or_else(bad)?;
        let open = s.find('[').ok_or_else(bad)?;
        let close = s.find(']').ok_or_else(bad)?;
        if open != 1 || close < open {
            return Err(bad());
        }
        let inner = &s[open + 1..close];
        let rest = &s[close + 1..];
        let (m, n) = if rest.is_empty() {
            (0, 0)
        } else {
            let body = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
        };
        match kind {
            'e' | 'f' => {
                let root = self.rs.parse_root(inner).ok_or_else(|| ParseError::Root(inner.into()))?;
                let root = if kind == 'f' { self.rs.neg(root) } else { root };
                Ok(BasisSymbol::Root { root, m, n })
            }
            'h' => {
                let i: usize = inner.parse().map_err(|_| bad())?;
                if i == 0 || i > self.rank() {
                    return Err(ParseError::Node(i));
                }
                Ok(BasisSymbol::Cartan { i: i - 1, m, n })
            }
            _ => Err(bad()),
        }
    }
}

/// Joins `(label, coefficient)` pairs as `a - 2*b + 1/3*c`.
pub(crate) fn format_terms<'a, S: fmt::Display>(terms: impl Iterator<Item = (S, &'a Q)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&fmt_q(&abs));
            out.push('*');
        }
        out.push_str(&label.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits at top-level `+`/`-`, respecting brackets and parentheses.
fn split_terms(s: &str) -> Vec<(i64, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut sign = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                // a sign right after `*` or `/` belongs to the coefficient
                let prev = s[..i].chars().last();
                if matches!(prev, Some('*') | Some('/')) {
                    continue;
                }
                if i > start {
                    out.push((sign, &s[start..i]));
                }
                sign = if ch == '-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < s.len() {
        out.push((sign, &s[start..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a1() -> Algebra {
        Algebra::from_label("A1").unwrap()
    }

    #[test]
    fn derivation_and_center_examples() {
        let g = a1();
        let e = g.root_symbol("a1", 3, -2).unwrap();
        let d1 = g.bracket_symbols(BasisSymbol::D1, e);
        assert_eq!(d1, AlgebraElement::term(e, q(3)));
        let h = BasisSymbol::Cartan { i: 0, m: 5, n: 7 };
        assert!(g.bracket_symbols(BasisSymbol::C1, h).is_zero());
        let d2 = g.bracket_symbols(BasisSymbol::D2, e);
        assert_eq!(d2, AlgebraElement::term(e, q(-2)));
    }

    #[test]
    fn central_terms() {
        let g = a1();
        let x = BasisSymbol::Cartan { i: 0, m: 1, n: 2 };
        let y = BasisSymbol::Cartan { i: 0, m: -1, n: -2 };
        assert_eq!(g.format(&g.bracket_symbols(x, y)), "2*c1 + 4*c2");
        let e = g.root_symbol("a1", 1, 0).unwrap();
        let f = g.root_symbol("-a1", -1, 0).unwrap();
        assert_eq!(g.format(&g.bracket_symbols(e, f)), "h[1](0,0) + c1");
    }

    #[test]
    fn weights() {
        let g = a1();
        let e = g.root_symbol("a1", 2, -3).unwrap();
        assert_eq!(g.weight_of(&e), ExtendedRoot::new(vec![1], 2, -3));
        assert_eq!(g.weight_of(&BasisSymbol::Cartan { i: 0, m: 0, n: 4 }), ExtendedRoot::new(vec![0], 0, 4));
        assert!(g.weight_of(&BasisSymbol::C2).is_zero());
    }

    #[test]
    fn parse_format_round_trip() {
        let g = Algebra::from_label("A2").unwrap();
        let e = g.parse("3/2*e[a1](1,-2) + h[2](0,3) - f[a1+a2](0,-1) - 1/2*c1 + d2").unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(g.parse(&g.format(&e)).unwrap(), e);
        assert_eq!(e.coeff(&g.root_symbol("a1", 1, -2).unwrap()), frac(3, 2));
        assert_eq!(g.parse("-2*e[a2]").unwrap(), AlgebraElement::term(g.root_symbol("a2", 0, 0).unwrap(), q(-2)));
        assert!(g.parse("h[3](0,0)").is_err());
        assert!(g.parse("e[a3](0,0)").is_err());
        assert_eq!(g.format(&AlgebraElement::zero()), "0");
    }

    #[test]
    fn antisymmetry_and_grading_exhaustive_small_box() {
        let g = Algebra::from_label("A2").unwrap();
        let syms = g.symbols_in_box(-1, 1);
        for &a in &syms {
            for &b in &syms {
                let ab = g.bracket_symbols(a, b);
                let ba = g.bracket_symbols(b, a);
                assert!((&ab + &ba).is_zero(), "{a:?} {b:?}");
                let w = g.weight_of(&a).add(&g.weight_of(&b));
                for (s, _) in ab.iter() {
                    if w.is_zero() {
                        assert!(g.weight_of(s).is_zero());
                    } else {
                        assert_eq!(g.weight_of(s), w);
                    }
                }
            }
        }
    }

    #[test]
    fn affine_subalgebras_are_closed() {
        let g = a1();
        let syms = g.symbols_in_box(-2, 2);
        let in_first = |s: &BasisSymbol| match s.degrees() {
            Some((_, n)) => n == 0,
            None => matches!(s, BasisSymbol::C1 | BasisSymbol::D1),
        };
        let in_second = |s: &BasisSymbol| match s.degrees() {
            Some((m, _)) => m == 0,
            None => matches!(s, BasisSymbol::C2 | BasisSymbol::D2),
        };
        for pred in [&in_first as &dyn Fn(&BasisSymbol) -> bool, &in_second] {
            let sub: Vec<_> = syms.iter().filter(|s| pred(s)).collect();
            for a in &sub {
                for b in &sub {
                    assert!(g.bracket_symbols(**a, **b).iter().all(|(s, _)| pred(s)));
                }
            }
        }
    }

    #[test]
    fn jacobi_samples_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for label in ["A1", "A2"] {
            let g = Algebra::from_label(label).unwrap();
            assert!(g.jacobi_sample_check(300, &mut rng).is_ok());
        }
        let g = a1();
        assert!(g.jacobiator(BasisSymbol::C1, BasisSymbol::C2, BasisSymbol::D1).is_zero());
    }

    #[test]
    fn printed_cocycle_breaks_jacobi() {
        let g = a1().with_fault(Fault::PrintedCocycle);
        assert!(g.jacobi_exhaustive(-1, 1).is_err());
        let g = a1().with_fault(Fault::FlippedCoroot);
        assert!(g.jacobi_exhaustive(-1, 1).is_err());
    }
}
