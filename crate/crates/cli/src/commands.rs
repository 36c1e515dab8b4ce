use std::collections::{BTreeMap, HashSet};

use dala_core::dala::ExtendedRoot;
use dala_core::extremal::{embedding_check, extremal_space, irreducibility_probe, Verdict};
use dala_core::garland::{
    annihilator_check, garland_check, nilpotency_index, simple_coroot, AffineRoot, AnnihilatorPolynomial,
    EvalRelations, LoopCurrent, NullBudget, Sign,
};
use dala_core::partition::{
    f_a, in_i, in_phi_plus, in_q_a, levi_roots, phi, roots_in_box, symmetric_part_q_a, ClosedSetSpec, ParabolicSpec,
    WeightOffset,
};
use dala_core::pbw::{surjection_chain_dims, InducedModule, Truncation, WeightFunctional};
use dala_core::rational::{fmt_q, frac, parse_q, q, Q};
use dala_core::rootsys::{ChevalleySymbol, RootSystem};
use dala_core::weyl::{build_weyl_module, highest_h_line_dim, verify_cyclic_relations, WeylSpec};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{parse_list, parse_range, CliError, RunConfig, Variant};
use crate::report::Outcome;

type Res = Result<Outcome, CliError>;

fn rt<E: ToString>(e: E) -> CliError {
    CliError::runtime(e)
}

/// `-a1+2d1-d2` style label.
pub fn root_label(rs: &RootSystem, r: &ExtendedRoot) -> String {
    let mut parts = Vec::new();
    if r.finite.iter().any(|&c| c != 0) {
        let name = match rs.find(&r.finite) {
            Some(id) => rs.root_name(id),
            None => format!("{:?}", r.finite),
        };
        parts.push(name);
    }
    for (k, d) in [(r.m, "d1"), (r.n, "d2")] {
        match k {
            0 => {}
            1 => parts.push(format!("+{d}")),
            -1 => parts.push(format!("-{d}")),
            k if k > 0 => parts.push(format!("+{k}{d}")),
            k => parts.push(format!("{k}{d}")),
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.concat();
    s.strip_prefix('+').map(str::to_string).unwrap_or(s)
}

fn module(cfg: &RunConfig, spec: ClosedSetSpec, lambda: WeightFunctional, tr: Truncation) -> Result<InducedModule, CliError> {
    InducedModule::new(cfg.algebra.clone(), spec, lambda, tr).map_err(|e| CliError::config("--lambda", e))
}

fn outcome(variant: Option<Variant>, lambda: Option<&WeightFunctional>, tr: Option<Truncation>) -> Outcome {
    Outcome {
        variant: variant.map(Variant::name),
        lambda: lambda.map(WeightFunctional::to_json),
        truncation: tr,
        ..Outcome::default()
    }
}

fn unit_offset(rank: usize, node: usize) -> WeightOffset {
    let mut alpha = vec![0; rank + 1];
    alpha[node] = 1;
    WeightOffset { alpha, delta2: 0 }
}

fn generic_weight(rank: usize) -> WeightFunctional {
    let mut w = WeightFunctional::zero(rank);
    w.h = (0..rank).map(|i| frac(3 + 2 * i as i64, 2)).collect();
    w.c1 = frac(2, 7);
    w.c2 = frac(5, 3);
    w
}

/// `λ(α_i^∨)` with `α_0^∨ = c1 - θ^∨`.
fn coroot_value(rs: &RootSystem, w: &WeightFunctional, i: usize) -> Q {
    let base = if i == 0 { w.c1.clone() } else { Q::zero() };
    simple_coroot(rs, i).iter().zip(&w.h).fold(base, |acc, (&c, h)| acc + q(c) * h)
}

pub fn roots(cfg: &RunConfig) -> Res {
    let rs = cfg.algebra.root_system();
    let (bm, bn) = cfg.degree_box.bound();
    let all: Vec<ExtendedRoot> =
        roots_in_box(rs, bm, bn).into_iter().filter(|r| cfg.degree_box.contains(r.m, r.n)).collect();
    let spec = cfg.parabolic.clone().unwrap_or_default();
    let mut out = outcome(None, None, None);
    let member = |r: &ExtendedRoot| in_i(rs, r).map_err(rt);
    let mut rows = Vec::new();
    for r in &all {
        rows.push(json!({
            "root": root_label(rs, r),
            "phi": phi(rs, r),
            "fA": f_a(rs, &spec, r),
            "inI": member(r)?,
            "inQA": in_q_a(rs, &spec, r).map_err(rt)?,
            "inPhiPlus": in_phi_plus(rs, r).map_err(rt)?,
        }));
    }

    let set: HashSet<&ExtendedRoot> = all.iter().collect();
    let mut union = true;
    let mut disjoint = true;
    for r in &all {
        let (p, n) = (member(r)?, member(&r.neg())?);
        union &= out.check(p || n, || format!("{} lies in neither 𝓘 nor -𝓘", root_label(rs, r)));
        disjoint &= out.check(!(p && n), || format!("{} lies in 𝓘 ∩ -𝓘", root_label(rs, r)));
    }
    let positive: Vec<&ExtendedRoot> = all.iter().filter(|r| member(r).unwrap_or(false)).collect();
    let mut closed = true;
    'outer: for a in &positive {
        for b in &positive {
            let s = a.add(b);
            if set.contains(&s) && !member(&s)? {
                closed = out.check(false, || format!("{} + {} leaves 𝓘", root_label(rs, a), root_label(rs, b)));
                break 'outer;
            }
        }
    }
    let rank = cfg.rank();
    let mut specs = vec![ParabolicSpec::default(), ParabolicSpec::new(rank, [1]).map_err(rt)?, ParabolicSpec::full(rank)];
    if !specs.contains(&spec) {
        specs.push(spec.clone());
    }
    let mut strict = BTreeMap::new();
    let mut symmetric = BTreeMap::new();
    for s in &specs {
        let key = format!("{:?}", s.indices().collect::<Vec<_>>());
        let mut contained = true;
        let mut larger = false;
        for r in &all {
            let qa = in_q_a(rs, s, r).map_err(rt)?;
            if member(r)? {
                contained &= qa;
            } else {
                larger |= qa;
            }
        }
        strict.insert(key.clone(), contained && larger);
        out.check(contained && larger, || format!("𝓘 ⊊ Q(𝓐) fails for 𝓐 = {key}"));
        let bound = bm.min(bn);
        let same = symmetric_part_q_a(rs, s, bound) == levi_roots(rs, s, bound);
        symmetric.insert(key.clone(), same);
        out.check(same, || format!("Q(𝓐) ∩ -Q(𝓐) differs from the Levi formula for 𝓐 = {key}"));
    }
    out.set("count", all.len());
    out.set("parabolic", spec.indices().collect::<Vec<_>>());
    out.set("roots", rows);
    out.set(
        "checks",
        json!({
            "unionIsAllRoots": union,
            "disjoint": disjoint,
            "closedUnderAddition": closed,
            "strictlyInsideQA": strict,
            "symmetricPartMatchesFormula": symmetric,
        }),
    );
    Ok(out)
}

/// Coefficient of `x^k` in `Π_j (1 - x^j)^{-s}`.
fn colored_partitions(s: usize, k_max: usize) -> Vec<usize> {
    let mut p = vec![0usize; k_max + 1];
    p[0] = 1;
    for _ in 0..s {
        for j in 1..=k_max {
            for t in j..=k_max {
                p[t] += p[t - j];
            }
        }
    }
    p
}

pub fn dims(cfg: &RunConfig) -> Res {
    let variant = cfg.require_variant(Variant::Imaginary, "dims")?;
    let k_max = cfg.kmax.unwrap_or(5);
    let window = cfg.t2window.unwrap_or(k_max as i64);
    let tr = Truncation::uniform(cfg.maxlen.unwrap_or(k_max), window, 2);
    let lambda = cfg.lambda_or(generic_weight);
    let m = module(cfg, ClosedSetSpec::Imaginary, lambda.clone(), tr)?;
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    let table = m.delta2_dim_table(k_max).map_err(|e| CliError::config("--kmax", e))?;
    let oracle = colored_partitions(cfg.rank(), k_max);
    out.check(table == oracle, || format!("δ2 dimensions {table:?} differ from colored partitions {oracle:?}"));
    out.check(table.first() == Some(&1), || "dim at λ is not 1".into());
    let mu = unit_offset(cfg.rank(), 1);
    let growth: Vec<usize> = (1..=window.min(4))
        .map(|d| m.truncated_dim(&mu, &Truncation::new(tr.max_len, tr.t1, d, 2)))
        .collect::<Result<_, _>>()
        .map_err(rt)?;
    out.check(growth.windows(2).all(|w| w[0] < w[1]), || format!("growth at λ-α1 {growth:?} is not strictly increasing"));
    out.set("delta2", table);
    out.set("coloredPartitions", oracle);
    out.set("growthAtMinusAlpha1", growth);
    Ok(out)
}

pub fn extremal(cfg: &RunConfig) -> Res {
    let variant = cfg.require_variant(Variant::Imaginary, "extremal")?;
    let k_max = cfg.kmax.unwrap_or(3);
    let tr = Truncation::uniform(cfg.maxlen.unwrap_or(k_max), cfg.t2window.unwrap_or(k_max as i64), 2);
    let lambda = cfg.lambda_or(generic_weight);
    let m = module(cfg, ClosedSetSpec::Imaginary, lambda.clone(), tr)?;
    let rs = cfg.algebra.root_system();
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    let all_coroots_nonzero = (0..=cfg.rank()).all(|i| !coroot_value(rs, &lambda, i).is_zero());
    let expectation = if !lambda.c2.is_zero() {
        "none"
    } else if all_coroots_nonzero {
        "full"
    } else {
        "unconstrained"
    };
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let r = extremal_space(&m, k).map_err(rt)?;
        match expectation {
            "none" => out.check(r.extremal_dim == 0, || format!("c2 ≠ 0 but extremal dim {} at k = {k}", r.extremal_dim)),
            "full" => out.check(r.extremal_dim == r.weight_dim, || {
                format!("c2 = 0 but extremal dim {} < weight dim {} at k = {k}", r.extremal_dim, r.weight_dim)
            }),
            _ => true,
        };
        rows.push(json!({
            "k": k,
            "weightDim": r.weight_dim,
            "extremalDim": r.extremal_dim,
            "basis": r.basis.iter().map(|v| m.format_vector(v)).collect::<Vec<_>>(),
        }));
    }
    out.set("expected", expectation);
    out.set("spaces", rows);
    Ok(out)
}

pub fn irreducible(cfg: &RunConfig) -> Res {
    let variant = cfg.require_variant(Variant::Imaginary, "irreducible")?;
    let k_max = cfg.kmax.unwrap_or(3);
    let tr = Truncation::uniform(cfg.maxlen.unwrap_or(k_max.max(2)), cfg.t2window.unwrap_or(k_max.max(2) as i64), 2);
    let lambda = cfg.lambda_or(generic_weight);
    let m = module(cfg, ClosedSetSpec::Imaginary, lambda.clone(), tr)?;
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    match irreducibility_probe(&m, k_max).map_err(rt)? {
        Verdict::Reducible { k, witness } => {
            let embeds = embedding_check(&m, &witness, &Truncation::new(2, (-1, 0), 1, 1)).map_err(rt)?;
            out.check(embeds, || "witness does not generate a free submodule in the checked window".into());
            out.set("verdict", "REDUCIBLE");
            out.set("k", k);
            out.set("witness", m.format_vector(&witness));
            out.set("embeddingCheck", embeds);
        }
        Verdict::ConsistentWithIrreducible { k_max } => {
            out.set("verdict", "CONSISTENT_WITH_IRREDUCIBLE");
            out.set("kMax", k_max);
        }
    }
    Ok(out)
}

fn level_zero_default(rank: usize) -> WeightFunctional {
    let mut eval = BTreeMap::new();
    eval.insert(0, vec![(q(2), 2), (frac(-1, 3), 1)]);
    if rank >= 2 {
        eval.insert(1, vec![(frac(1, 2), 1)]);
    }
    WeightFunctional::evaluation(rank, eval).expect("valid default")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

pub struct GarlandArgs {
    /// `t` or an inclusive range `lo..hi`.
    pub t: Option<String>,
    pub beta: String,
    pub r1: i64,
    pub sign: SignArg,
}

pub fn garland(cfg: &RunConfig, args: &GarlandArgs) -> Res {
    let variant = cfg.require_variant(Variant::Levelzero, "garland")?;
    let (lo, hi) = match args.t.as_deref() {
        Some(text) if text.contains("..") => parse_range(text, "--t")?,
        Some(text) => {
            let t = text.trim().parse().map_err(|e| CliError::config("--t", format!("`{text}`: {e}")))?;
            (t, t)
        }
        None => (1, 3),
    };
    if lo < 1 {
        return Err(CliError::config("--t", "t must be at least 1"));
    }
    let ts: Vec<usize> = (lo as usize..=hi as usize).collect();
    let t_top = *ts.last().expect("nonempty");
    let lambda = cfg.lambda_or(level_zero_default);
    let window = cfg.t2window.unwrap_or(12);
    let tr = Truncation::new(cfg.maxlen.unwrap_or(2 * t_top + 2), (-5, 5), window, 3);
    let m = module(cfg, ClosedSetSpec::LevelZero, lambda.clone(), tr)?;
    let rs = cfg.algebra.root_system();
    let root = rs
        .parse_root(&args.beta)
        .filter(|&r| rs.root(r).is_positive())
        .ok_or_else(|| CliError::config("--beta", format!("`{}` is not a positive root", args.beta)))?;
    if args.r1 < 0 {
        return Err(CliError::config("--r1", "must be nonnegative"));
    }
    let signs = match args.sign {
        SignArg::Plus => vec![Sign::Plus],
        SignArg::Minus => vec![Sign::Minus],
        SignArg::Both => vec![Sign::Plus, Sign::Minus],
    };
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    let mut rows = Vec::new();
    for &t in &ts {
        for &sign in &signs {
            let rep = garland_check(&m, AffineRoot { root, r1: args.r1 }, t, sign).map_err(rt)?;
            let beta = root_label(rs, &ExtendedRoot::new(rs.root(root).coords.clone(), args.r1, 0));
            let label = format!("β = {beta}, t = {t}, sign = {:+}", sign.value());
            out.check(rep.passed(), || {
                format!(
                    "{label}: residuals {} | {}",
                    m.format_vector(&rep.residual_a),
                    m.format_vector(&rep.residual_b)
                )
            });
            rows.push(json!({
                "beta": rs.root_name(root),
                "r1": args.r1,
                "t": t,
                "sign": sign.value(),
                "residualA": m.format_vector(&rep.residual_a),
                "residualB": m.format_vector(&rep.residual_b),
                "passed": rep.passed(),
            }));
        }
    }
    out.set("instances", rows);
    Ok(out)
}

pub struct NilpotencyArgs {
    pub node: usize,
    pub n: i64,
    pub nmax: Option<usize>,
}

pub fn nilpotency(cfg: &RunConfig, args: &NilpotencyArgs) -> Res {
    let variant = cfg.require_variant(Variant::Levelzero, "nilpotency")?;
    let rs = cfg.algebra.root_system();
    if args.node > cfg.rank() {
        return Err(CliError::config("--node", format!("node {} out of range 0..={}", args.node, cfg.rank())));
    }
    let lambda = cfg.lambda_or(|rank| {
        WeightFunctional::evaluation(rank, BTreeMap::from([(0, vec![(q(2), 2)])])).expect("valid default")
    });
    let w = coroot_value(rs, &lambda, args.node);
    if !w.is_integer() || w < Q::zero() {
        return Err(CliError::config("--lambda", format!("λ(α_{}^∨) = {} is not a nonnegative integer", args.node, fmt_q(&w))));
    }
    let w: usize = w.to_integer().try_into().map_err(|_| CliError::config("--lambda", "weight too large"))?;
    let nmax = args.nmax.unwrap_or(w + 2);
    let tr = Truncation::new(cfg.maxlen.unwrap_or(nmax + 3), (-3, 3), cfg.t2window.unwrap_or(10), 3);
    let m = module(cfg, ClosedSetSpec::LevelZero, lambda.clone(), tr)?;
    let budget = NullBudget { generator_window: 1, raising: Truncation::new(w.max(1), (-1, 1), 2, 3) };
    let rep = nilpotency_index(&m, args.node, args.n, nmax, &budget).map_err(rt)?;
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    out.check(rep.index == Some(w + 1), || format!("expected index {}, found {:?}", w + 1, rep.index));
    out.check(rep.off_diagonal_zero, || "some x(α_j, m) with j ≠ i does not kill the power".into());
    out.set("node", args.node);
    out.set("n", args.n);
    out.set("expected", w + 1);
    out.set("index", rep.index.map_or(Value::Null, Value::from));
    out.set("offDiagonalZero", rep.off_diagonal_zero);
    Ok(out)
}

fn eval_default(rank: usize) -> WeightFunctional {
    let pts = [q(2), frac(-1, 3), q(3), frac(1, 2)];
    let eval = (0..rank).map(|i| (i, vec![(pts[i % pts.len()].clone(), 1)])).collect();
    WeightFunctional::evaluation(rank, eval).expect("valid default")
}

pub struct EvalRelArgs {
    pub mwindow: i64,
    pub window: i64,
}

pub fn evalrel(cfg: &RunConfig, args: &EvalRelArgs) -> Res {
    let variant = cfg.require_variant(Variant::Levelzero, "evalrel")?;
    let lambda = cfg.lambda_or(eval_default);
    let e = AnnihilatorPolynomial::from_weight(&lambda);
    let degree = e.coeffs.len() as i64 - 1;
    let t2 = cfg.t2window.unwrap_or(args.mwindow + degree + 2 * args.window + 4);
    let tr = Truncation::new(cfg.maxlen.unwrap_or(6), (-3, 3), t2, 3);
    let m = module(cfg, ClosedSetSpec::LevelZero, lambda.clone(), tr)?;
    let rs = cfg.algebra.root_system();
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    let htt = rs.height(rs.theta());
    let currents: Vec<LoopCurrent> = rs
        .root_ids()
        .flat_map(|r| [-1, 0].map(|r1| (r, r1)))
        .filter(|&(r, r1)| (-2..=-1).contains(&(rs.height(r) + r1 * (1 + htt))))
        .map(|(r, r1)| LoopCurrent::root(r, r1))
        .collect();
    let describe = |c: &LoopCurrent| {
        let name = match c.terms[0].0 {
            ChevalleySymbol::Root(r) => rs.root_name(r),
            ChevalleySymbol::Cartan(i) => format!("h{}", i + 1),
        };
        format!("{name}{:+}d1", c.r1)
    };
    let mut ev = EvalRelations::new(&m, &e, args.window).map_err(rt)?;
    let mut single = 0;
    for cur in &currents {
        for mm in -args.mwindow..=args.mwindow {
            let rep = ev.check(cur, mm).map_err(rt)?;
            out.check(rep.passed, || format!("β = {}, m = {mm}: {:?}", describe(cur), rep.residual));
            single += 1;
        }
    }
    let budget = Truncation::new(3, (-1, 1), 2, 3);
    let f1 = LoopCurrent::root(rs.neg(rs.simple(0)), 0);
    let gammas = [
        dala_core::dala::BasisSymbol::Root { root: rs.neg(rs.simple(cfg.rank() - 1)), m: 0, n: 1 },
        dala_core::dala::BasisSymbol::Root { root: rs.theta(), m: -1, n: 0 },
    ];
    let mut two = 0;
    for gamma in gammas {
        for first in [false, true] {
            let rep = ev.check_two_factor(gamma, &f1, 0, first, &budget).map_err(rt)?;
            out.check(rep.passed, || {
                format!("two-factor γ = {}, first = {first}: {:?}", cfg.algebra.format_symbol(&gamma), rep.residual)
            });
            two += 1;
        }
    }
    let mut perturbed = e.coeffs.clone();
    perturbed[0] += Q::one();
    let bad = AnnihilatorPolynomial::from_coeffs(perturbed);
    let mut ev_bad = EvalRelations::new(&m, &bad, args.window).map_err(rt)?;
    let control = ev_bad.check(&f1, 0).map_err(rt)?;
    let control_residual = control.residual.as_ref().map(|(_, v)| fmt_q(v));
    out.check(!control.passed, || "perturbed ε was not detected".into());
    out.set("epsilon", e.coeffs.iter().map(fmt_q).collect::<Vec<_>>());
    out.set("currents", currents.iter().map(describe).collect::<Vec<_>>());
    out.set("singleFactorChecks", single);
    out.set("twoFactorChecks", two);
    out.set("controlResidual", control_residual.map_or(Value::Null, Value::from));
    Ok(out)
}

pub fn annihilator(cfg: &RunConfig, window: i64) -> Res {
    let variant = cfg.require_variant(Variant::Levelzero, "annihilator")?;
    let lambda = cfg.lambda_or(eval_default);
    let g = AnnihilatorPolynomial::from_weight(&lambda);
    let degree = g.coeffs.len() as i64 - 1;
    let tr = Truncation::new(cfg.maxlen.unwrap_or(4), (-3, 3), cfg.t2window.unwrap_or(2 * window + degree + 2), 3);
    let m = module(cfg, ClosedSetSpec::LevelZero, lambda.clone(), tr)?;
    let mut out = outcome(Some(variant), Some(&lambda), Some(tr));
    let rep = annihilator_check(&m, &g, window).map_err(rt)?;
    out.check(rep.passed, || rep.failure.clone().unwrap_or_default());
    let trivial = lambda.eval.is_empty();
    let control = annihilator_check(&m, &AnnihilatorPolynomial::from_coeffs(vec![Q::one()]), window).map_err(rt)?;
    if !trivial {
        out.check(!control.passed, || "g = 1 was not rejected".into());
    }
    out.set("polynomial", g.coeffs.iter().map(fmt_q).collect::<Vec<_>>());
    out.set("checks", rep.checks);
    out.set("controlRejected", !control.passed);
    Ok(out)
}

pub fn weyl(points: &str, weights: &str) -> Res {
    let pts: Vec<Q> = points
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_q(s).ok_or_else(|| CliError::config("--points", format!("`{s}` is not a rational"))))
        .collect::<Result<_, _>>()?;
    let ws = parse_list::<u64>(weights, "--weights")?;
    let spec = WeylSpec::new(pts, ws).map_err(|e| CliError::config("--points/--weights", e))?;
    let m = build_weyl_module(&spec).map_err(rt)?;
    let rel = verify_cyclic_relations(&m);
    let hline = highest_h_line_dim(&m);
    let mut out = outcome(None, None, None);
    out.check(rel.passed(), || rel.failure.clone().unwrap_or_default());
    out.check(hline == 1, || format!("h-line has dimension {hline}"));
    out.set("points", spec.points().iter().map(fmt_q).collect::<Vec<_>>());
    out.set("weights", spec.weights().to_vec());
    out.set("dimension", m.dimension());
    out.set("basisSize", m.basis().len());
    out.set("lengthDims", m.length_dims().to_vec());
    out.set("relationsOk", rel.passed());
    out.set("relationsChecked", rel.checked);
    out.set("hLineDim", hline);
    Ok(out)
}

pub fn jacobi(cfg: &RunConfig, trials: usize, exhaustive: Option<&str>) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = outcome(None, None, None);
    let g = &cfg.algebra;
    let witness = |w: dala_core::dala::JacobiWitness| {
        let triple: Vec<String> = w.triple.iter().map(|s| g.format_symbol(s)).collect();
        format!("({}) gives {}", triple.join(", "), g.format(&w.residual))
    };
    if let Err(w) = g.jacobi_sample_check(trials, &mut rng) {
        out.check(false, || format!("random triple {}", witness(w)));
    }
    out.set("trials", trials);
    if let Some(range) = exhaustive {
        let (lo, hi) = parse_range(range, "--exhaustive")?;
        match g.jacobi_exhaustive(lo, hi) {
            Ok(n) => out.set("exhaustiveTriples", n),
            Err(w) => {
                out.check(false, || format!("exhaustive triple {}", witness(w)));
            }
        }
        out.set("exhaustiveRange", vec![lo, hi]);
    }
    Ok(out)
}

fn default_mus(rank: usize) -> Vec<WeightOffset> {
    let mut mus = Vec::new();
    for d in 0..=2 {
        mus.push(WeightOffset { alpha: vec![0; rank + 1], delta2: d });
    }
    for node in 0..=rank {
        for d in [-1, 0, 1] {
            let mut mu = unit_offset(rank, node);
            mu.delta2 = d;
            mus.push(mu);
        }
    }
    let mut two = unit_offset(rank, 1);
    two.alpha[1] = 2;
    mus.push(two);
    mus.truncate(10);
    mus
}

fn parse_mus(text: &str, rank: usize) -> Result<Vec<WeightOffset>, CliError> {
    text.split('|')
        .map(|item| {
            let (alpha, d) = item
                .split_once(';')
                .ok_or_else(|| CliError::config("--mus", format!("expected `a0,..,as;d`, got `{item}`")))?;
            let alpha = parse_list::<i64>(alpha, "--mus")?;
            if alpha.len() != rank + 1 {
                return Err(CliError::config("--mus", format!("`{item}` needs {} coefficients", rank + 1)));
            }
            let delta2 = d.trim().parse().map_err(|e| CliError::config("--mus", format!("`{d}`: {e}")))?;
            Ok(WeightOffset { alpha, delta2 })
        })
        .collect()
}

pub fn chain(cfg: &RunConfig, small: Option<&str>, mus: Option<&str>) -> Res {
    let rank = cfg.rank();
    let large = match &cfg.parabolic {
        Some(p) => p.clone(),
        None => ParabolicSpec::new(rank, [1]).map_err(rt)?,
    };
    let small = match small {
        Some(text) => ParabolicSpec::new(rank, parse_list::<usize>(text, "--parabolic-small")?)
            .map_err(|e| CliError::config("--parabolic-small", e))?,
        None => ParabolicSpec::default(),
    };
    let mus = match mus {
        Some(text) => parse_mus(text, rank)?,
        None => default_mus(rank),
    };
    let lambda = cfg.lambda_or(|rank| {
        let mut w = WeightFunctional::zero(rank);
        w.c1 = frac(2, 3);
        w.d1 = q(1);
        w
    });
    let tr = Truncation::uniform(cfg.maxlen.unwrap_or(3), cfg.t2window.unwrap_or(2), 2);
    let rows = surjection_chain_dims(&cfg.algebra, &lambda, &small, &large, &mus, tr)
        .map_err(|e| CliError::config("--lambda/--parabolic", e))?;
    let mut out = outcome(None, Some(&lambda), Some(tr));
    let mut table = Vec::new();
    for r in &rows {
        out.check(r.monotone(), || format!("not monotone at μ = {:?}: {r:?}", r.mu));
        table.push(json!({
            "mu": { "alpha": r.mu.alpha, "delta2": r.mu.delta2 },
            "imaginary": r.imaginary,
            "levelZero": r.level_zero,
            "parabolicSmall": r.parabolic_small,
            "parabolicLarge": r.parabolic_large,
        }));
    }
    out.set("small", small.indices().collect::<Vec<_>>());
    out.set("large", large.indices().collect::<Vec<_>>());
    out.set("rows", table);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        let rs = RootSystem::from_label("A2").unwrap();
        let a1 = rs.simple(0);
        let r = ExtendedRoot::new(rs.root(rs.neg(a1)).coords.clone(), 2, -1);
        assert_eq!(root_label(&rs, &r), "-a1+2d1-d2");
        assert_eq!(root_label(&rs, &ExtendedRoot::new(vec![0, 0], 0, 1)), "d2");
        assert_eq!(root_label(&rs, &ExtendedRoot::new(vec![1, 1], 0, 0)), "a1+a2");
    }

    #[test]
    fn default_grid_has_ten_weights() {
        assert_eq!(default_mus(1).len(), 10);
        assert_eq!(parse_mus("0,1;0|1,0;-1", 1).unwrap().len(), 2);
        assert!(parse_mus("0,1", 1).is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(colored_partitions(1, 8), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
