//! Brute-force oracle: close `f(0)^{L+1} w` under every generator inside
//! `Sym(f ⊗ A) w` truncated at length `L+1`, with dense vectors and a
//! separate polynomial implementation of `A = Q[t]/P`.

use dala_core::rational::{q, Q};
use num_traits::{One, Zero};

pub struct Oracle {
    d: usize,
    big_l: usize,
    /// `mul[i][j]` = coefficients of `t^{i+j} mod P`.
    mul: Vec<Vec<Vec<Q>>>,
    h_values: Vec<Q>,
    monos: Vec<Vec<usize>>,
}

fn polymod(mut p: Vec<Q>, modulus: &[Q]) -> Vec<Q> {
    let d = modulus.len() - 1;
    while p.len() > d {
        let c = p.pop().unwrap();
        let shift = p.len() - d;
        for k in 0..d {
            p[shift + k] -= &c * &modulus[k];
        }
    }
    p.resize(d, Q::zero());
    p
}

impl Oracle {
    pub fn new(points: &[Q], weights: &[u64]) -> Self {
        let mut modulus = vec![Q::one()];
        for (a, &w) in points.iter().zip(weights) {
            for _ in 0..w {
                let mut next = vec![Q::zero(); modulus.len() + 1];
                for (i, c) in modulus.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * a;
                }
                modulus = next;
            }
        }
        let d = modulus.len() - 1;
        let mul = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut p = vec![Q::zero(); i + j + 1];
                        p[i + j] = Q::one();
                        polymod(p, &modulus)
                    })
                    .collect()
            })
            .collect();
        let h_values = (0..d)
            .map(|i| {
                points.iter().zip(weights).fold(Q::zero(), |s, (a, &w)| {
                    let mut x = q(w as i64);
                    for _ in 0..i {
                        x *= a;
                    }
                    s + x
                })
            })
            .collect();
        let big_l = d;
        let mut monos = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..=big_l {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().copied().unwrap_or(0);
                for i in start..d {
                    let mut k: Vec<usize> = m.clone();
                    k.push(i);
                    next.push(k);
                }
            }
            monos.extend(next.iter().cloned());
            layer = next;
        }
        Self { d, big_l, mul, h_values, monos }
    }

    fn idx(&self, m: &[usize]) -> usize {
        let mut m = m.to_vec();
        m.sort_unstable();
        self.monos.iter().position(|x| *x == m).unwrap()
    }

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.monos.len()]
    }

    /// `prefix · h(x) · m w` for `x = Σ coeffs_l t^l`.
    fn h_mono(&self, coeffs: &[Q], prefix: &[usize], m: &[usize], scale: &Q, out: &mut [Q]) {
        let s: Q = coeffs.iter().zip(&self.h_values).fold(Q::zero(), |s, (a, b)| s + a * b);
        let joined = |n: &[usize]| [prefix, n].concat();
        out[self.idx(&joined(m))] += scale * s;
        for r in 0..m.len() {
            for (l, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, y) in self.mul[l][m[r]].iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let mut n = m.to_vec();
                    n[r] = k;
                    out[self.idx(&joined(&n))] -= scale * q(2) * c * y;
                }
            }
        }
    }

    /// Applies generator `g` (0 = e, 1 = f, 2 = h) at `t^i`; `None` if it leaves the window.
    fn apply(&self, g: usize, i: usize, v: &[Q]) -> Option<Vec<Q>> {
        let mut out = self.zero();
        let unit = |i: usize| -> Vec<Q> { (0..self.d).map(|k| if k == i { Q::one() } else { Q::zero() }).collect() };
        for (pos, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = &self.monos[pos];
            match g {
                0 => {
                    // e(t^i) f_j X = f_j e(t^i) X + h(t^{i+j}) X
                    for r in 0..m.len() {
                        self.h_mono(&self.mul[i][m[r]], &m[..r], &m[r + 1..], c, &mut out);
                    }
                }
                1 => {
                    if m.len() == self.big_l + 1 {
                        return None;
                    }
                    let mut n = m.clone();
                    n.push(i);
                    out[self.idx(&n)] += c;
                }
                _ => self.h_mono(&unit(i), &[], m, c, &mut out),
            }
        }
        Some(out)
    }

    /// Reduces `v` against echelon rows (pivot, row with pivot entry 1); keeps it if new.
    fn insert(rows: &mut Vec<(usize, Vec<Q>)>, mut v: Vec<Q>) -> Option<Vec<Q>> {
        for (p, row) in rows.iter() {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let p = v.iter().position(|x| !x.is_zero())?;
        let c = v[p].clone();
        let row: Vec<Q> = v.iter().map(|x| x / &c).collect();
        rows.push((p, row.clone()));
        Some(row)
    }

    /// `dim Sym_{≤ L} - dim N_{≤ L}`.
    pub fn dimension(&self) -> usize {
        if self.d == 0 {
            return 1;
        }
        let mut u = self.zero();
        u[self.idx(&vec![0; self.big_l + 1])] = Q::one();
        let mut span = Vec::new();
        let mut work = vec![Self::insert(&mut span, u).unwrap()];
        while let Some(v) = work.pop() {
            for g in 0..3 {
                for i in 0..self.d {
                    if let Some(w) = self.apply(g, i, &v) {
                        work.extend(Self::insert(&mut span, w));
                    }
                }
            }
        }
        // every vector reached is homogeneous, so pivots below length L+1 count N_{≤ L}
        let low = self.monos.iter().filter(|m| m.len() <= self.big_l).count();
        low - span.iter().filter(|(p, _)| self.monos[*p].len() <= self.big_l).count()
    }
}
