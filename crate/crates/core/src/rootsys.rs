//! Finite simply-laced root systems with a Chevalley basis.
//!
//! Structure constants come from a bimultiplicative sign cocycle on the root
//! lattice, fixed by orienting every Dynkin edge from the lower to the higher
//! node index:
//!
//! ```text
//! ε(α_i, α_i) = -1,   ε(α_i, α_j) = -1  if i < j and a_ij = -1,   +1 otherwise.
//! ```
//!
//! With `E_α` the cocycle basis (`[E_α, E_β] = ε(α,β) E_{α+β}`,
//! `[E_α, E_{-α}] = -α`) we rescale negative root vectors by `-1`, so that the
//! exported basis satisfies `[e_α, e_{-α}] = α^∨` and `(e_α | e_{-α}) = 1` for
//! every root.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown algebra label `{0}` (expected A<n>, D<n>, E6, E7 or E8)")]
    UnknownLabel(String),
    #[error("Cartan matrix is not square")]
    NotSquare,
    #[error("Cartan matrix entry ({0},{1}) = {2} is not allowed for a simply-laced type")]
    NotSimplyLaced(usize, usize, i64),
    #[error("Cartan matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("Cartan matrix is not positive definite (leading minor {0} is {1})")]
    NotPositiveDefinite(usize, i64),
    #[error("Cartan matrix is empty")]
    Empty,
}

/// Dynkin type of a simply-laced finite root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::D(n) => write!(f, "D{n}"),
            TypeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

impl std::str::FromStr for TypeLabel {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootSystemError::UnknownLabel(s.to_string());
        let s = s.trim();
        let (head, rank) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match head {
            "A" | "a" if rank >= 1 => Ok(TypeLabel::A(rank)),
            "D" | "d" if rank >= 4 => Ok(TypeLabel::D(rank)),
            "E" | "e" if (6..=8).contains(&rank) => Ok(TypeLabel::E(rank)),
            _ => Err(bad()),
        }
    }
}

/// Symmetric Cartan matrix of a simply-laced type, Bourbaki numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    label: TypeLabel,
}

impl CartanMatrix {
    /// Validates a user-supplied matrix against the simply-laced invariants.
    pub fn new(entries: Vec<Vec<i64>>, label: TypeLabel) -> Result<Self, RootSystemError> {
        let s = entries.len();
        if s == 0 {
            return Err(RootSystemError::Empty);
        }
        if entries.iter().any(|row| row.len() != s) {
            return Err(RootSystemError::NotSquare);
        }
        for i in 0..s {
            for j in 0..s {
                let a = entries[i][j];
                let ok = if i == j { a == 2 } else { a == 0 || a == -1 };
                if !ok {
                    return Err(RootSystemError::NotSimplyLaced(i + 1, j + 1, a));
                }
                if a != entries[j][i] {
                    return Err(RootSystemError::NotSymmetric(i + 1, j + 1));
                }
            }
        }
        for k in 1..=s {
            let minor: Vec<Vec<i64>> = entries[..k].iter().map(|r| r[..k].to_vec()).collect();
            let det = bareiss_det(minor);
            if det <= 0 {
                return Err(RootSystemError::NotPositiveDefinite(k, det));
            }
        }
        Ok(Self { entries, label })
    }

    pub fn from_type(label: TypeLabel) -> Result<Self, RootSystemError> {
        let (s, edges): (usize, Vec<(usize, usize)>) = match label {
            TypeLabel::A(n) => (n, (1..n).map(|i| (i - 1, i)).collect()),
            TypeLabel::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                (n, e)
            }
            TypeLabel::E(n) => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                (n, e)
            }
        };
        let mut entries = vec![vec![0i64; s]; s];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            entries[i][j] = -1;
            entries[j][i] = -1;
        }
        Self::new(entries, label)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

impl std::str::FromStr for CartanMatrix {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_type(s.parse()?)
    }
}

fn bareiss_det(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Index of a root inside its [`RootSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootId(pub usize);

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}

/// Outcome of adding two roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSum {
    Root(RootId),
    Zero,
    NotARoot,
}

/// Chevalley basis element of the finite algebra: `e_α` or `h_i` (0-based `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChevalleySymbol {
    Root(RootId),
    Cartan(usize),
}

/// Roots, heights, the highest root and bracket data of a simply-laced algebra.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, RootId>,
    negation: Vec<RootId>,
    sums: Vec<Vec<RootSum>>,
    constants: Vec<Vec<i64>>,
    theta: RootId,
    simple: Vec<RootId>,
    epsilon_simple: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn from_label(label: &str) -> Result<Self, RootSystemError> {
        Ok(Self::new(label.parse()?))
    }

    /// Grows positive roots height by height: for a positive root `β ≠ α_i`,
    /// `β + α_i` is a root exactly when `(β|α_i) = -1`.
    pub fn new(cartan: CartanMatrix) -> Self {
        let s = cartan.rank();
        let form = |a: &[i64], b: &[i64]| -> i64 {
            let mut acc = 0;
            for i in 0..s {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..s {
                    acc += a[i] * cartan.entry(i, j) * b[j];
                }
            }
            acc
        };
        let unit = |i: usize| {
            let mut v = vec![0i64; s];
            v[i] = 1;
            v
        };

        let mut positive: Vec<Vec<i64>> = (0..s).map(unit).collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..s {
                    if form(beta, &unit(i)) == -1 {
                        let mut g = beta.clone();
                        g[i] += 1;
                        if !next.contains(&g) {
                            next.push(g);
                        }
                    }
                }
            }
            positive.extend(next.iter().cloned());
            layer = next;
        }

        let mut all: Vec<Vec<i64>> = positive.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        all.extend(positive);
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let roots: Vec<Root> = all.into_iter().map(|coords| Root { coords }).collect();
        let index: HashMap<Vec<i64>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), RootId(k)))
            .collect();
        let negation = roots
            .iter()
            .map(|r| index[&r.coords.iter().map(|c| -c).collect::<Vec<_>>()])
            .collect();
        let theta = RootId(roots.len() - 1);
        let simple = (0..s).map(|i| index[&unit(i)]).collect();

        let mut epsilon_simple = vec![vec![1i64; s]; s];
        for (i, row) in epsilon_simple.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if i == j || (i < j && cartan.entry(i, j) == -1) {
                    *e = -1;
                }
            }
        }

        let n = roots.len();
        let mut sums = vec![vec![RootSum::NotARoot; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<i64> = roots[a].coords.iter().zip(&roots[b].coords).map(|(x, y)| x + y).collect();
                sums[a][b] = if c.iter().all(|&x| x == 0) {
                    RootSum::Zero
                } else {
                    index.get(&c).map_or(RootSum::NotARoot, |&id| RootSum::Root(id))
                };
            }
        }

        let mut rs = Self {
            cartan,
            roots,
            index,
            negation,
            sums,
            constants: Vec::new(),
            theta,
            simple,
            epsilon_simple,
        };
        let mut constants = vec![vec![0i64; n]; n];
        for a in 0..n {
            for b in 0..n {
                if let RootSum::Root(g) = rs.sums[a][b] {
                    let sign = |id: usize| if rs.roots[id].is_positive() { 1 } else { -1 };
                    constants[a][b] =
                        sign(a) * sign(b) * sign(g.0) * rs.epsilon(&rs.roots[a].coords, &rs.roots[b].coords);
                }
            }
        }
        rs.constants = constants;
        rs
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn label(&self) -> TypeLabel {
        self.cartan.label()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len()).map(RootId)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = RootId> + '_ {
        self.root_ids().filter(|&r| self.roots[r.0].is_positive())
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0]
    }

    pub fn find(&self, coords: &[i64]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn height(&self, id: RootId) -> i64 {
        self.roots[id.0].height()
    }

    pub fn neg(&self, id: RootId) -> RootId {
        self.negation[id.0]
    }

    pub fn sum(&self, a: RootId, b: RootId) -> RootSum {
        self.sums[a.0][b.0]
    }

    /// `α_i` for a 0-based node index.
    pub fn simple(&self, i: usize) -> RootId {
        self.simple[i]
    }

    pub fn theta(&self) -> RootId {
        self.theta
    }

    /// Marks `k_i` of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.roots[self.theta.0].coords
    }

    /// `(a|b)` for lattice vectors in simple-root coordinates.
    pub fn form_coords(&self, a: &[i64], b: &[i64]) -> i64 {
        let s = self.rank();
        let mut acc = 0;
        for i in 0..s {
            if a[i] == 0 {
                continue;
            }
            for j in 0..s {
                acc += a[i] * self.cartan.entry(i, j) * b[j];
            }
        }
        acc
    }

    /// `⟨α, α_i^∨⟩` for a root `α` and 0-based node `i`.
    pub fn pairing(&self, root: RootId, i: usize) -> i64 {
        let c = &self.roots[root.0].coords;
        (0..self.rank()).map(|j| c[j] * self.cartan.entry(j, i)).sum()
    }

    /// Bimultiplicative sign `ε(a, b)` on the root lattice.
    pub fn epsilon(&self, a: &[i64], b: &[i64]) -> i64 {
        let s = self.rank();
        let mut odd = 0i64;
        for i in 0..s {
            for j in 0..s {
                if self.epsilon_simple[i][j] == -1 {
                    odd += a[i] * b[j];
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Coefficient `c` in `[e_α, e_β] = c e_{α+β}`; zero when `α + β` is not a root.
    pub fn structure_constant(&self, a: RootId, b: RootId) -> i64 {
        self.constants[a.0][b.0]
    }

    /// Invariant form on Chevalley symbols, normalized so `(θ|θ) = 2`.
    pub fn invariant_form(&self, x: ChevalleySymbol, y: ChevalleySymbol) -> i64 {
        match (x, y) {
            (ChevalleySymbol::Root(a), ChevalleySymbol::Root(b)) => i64::from(self.neg(a) == b),
            (ChevalleySymbol::Cartan(i), ChevalleySymbol::Cartan(j)) => self.cartan.entry(i, j),
            _ => 0,
        }
    }

    /// Bracket of two Chevalley symbols as integer combinations of symbols.
    pub fn bracket(&self, x: ChevalleySymbol, y: ChevalleySymbol) -> Vec<(ChevalleySymbol, i64)> {
        use ChevalleySymbol::*;
        match (x, y) {
            (Cartan(_), Cartan(_)) => Vec::new(),
            (Cartan(i), Root(a)) => {
                let p = self.pairing(a, i);
                if p == 0 {
                    Vec::new()
                } else {
                    vec![(Root(a), p)]
                }
            }
            (Root(a), Cartan(i)) => {
                let p = self.pairing(a, i);
                if p == 0 {
                    Vec::new()
                } else {
                    vec![(Root(a), -p)]
                }
            }
            (Root(a), Root(b)) => match self.sum(a, b) {
                RootSum::Root(g) => vec![(Root(g), self.structure_constant(a, b))],
                RootSum::Zero => self.roots[a.0]
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (Cartan(i), c))
                    .collect(),
                RootSum::NotARoot => Vec::new(),
            },
        }
    }

    /// Formats a root as `a1+2a2`, `-a1-a2` and so on.
    pub fn root_name(&self, id: RootId) -> String {
        let mut out = String::new();
        for (i, &c) in self.roots[id.0].coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("a{}", i + 1));
        }
        out
    }

    /// Parses `a1+2a2` style names of positive or negative roots.
    pub fn parse_root(&self, s: &str) -> Option<RootId> {
        let mut coords = vec![0i64; self.rank()];
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let a_pos = tail.find('a')?;
            let mult: i64 = if a_pos == 0 { 1 } else { tail[..a_pos].parse().ok()? };
            let after = &tail[a_pos + 1..];
            let end = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
            let node: usize = after[..end].parse().ok()?;
            if node == 0 || node > self.rank() {
                return None;
            }
            coords[node - 1] += sign * mult;
            rest = &after[end..];
        }
        self.find(&coords)
    }
}
