use std::sync::Arc;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use tl_core::cellrep::{annihilation_check, cell_labels, simple_dim_altsum, simple_dim_rank, simple_q_modules, GFunction};
use tl_core::combinatorics::{catalan, cell_dim};
use tl_core::diagram::tl_basis;
use tl_core::exactnum::{CycField, CycNum};
use tl_core::quotientdim::{closed_form_dim_q, dim_q, fibonacci, fibonacci_bridge};
use tl_core::tlalg::{ideal_dimension, trace_form_rank, TLElement, DEFAULT_MAX_IDEAL_N};

use crate::commands::{self, field};
use crate::config::NRange;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ising,
    Catalan,
    Gram,
    Clifford,
    Fibonacci,
    Level6,
    Jw,
    Radical,
    Classification,
    Properties,
    All,
}

impl Suite {
    const EACH: [Suite; 10] = [
        Suite::Ising,
        Suite::Catalan,
        Suite::Gram,
        Suite::Clifford,
        Suite::Fibonacci,
        Suite::Level6,
        Suite::Jw,
        Suite::Radical,
        Suite::Classification,
        Suite::Properties,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Restricts level-generic suites to one level.
    pub level: Option<u32>,
    pub max_n: Option<usize>,
    pub order: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { level: None, max_n: None, order: 20, seed: 0 }
    }
}

type Checks = Result<Vec<Check>, CliError>;

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

fn pow(base: u32, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

fn levels(opts: &VerifyOptions, default: &[u32]) -> Vec<u32> {
    opts.level.map_or_else(|| default.to_vec(), |l| vec![l])
}

/// `dim Q_n(l)` on every available route with a summary; `None` when routes disagree.
fn dim_q_routes(k: &Arc<CycField>, l: u32, n: usize) -> Result<(Option<BigInt>, String), CliError> {
    let labels = simple_q_modules(n, l);
    let mut routes = vec![("matrix", dim_q(l, n)?)];
    routes.push(("altsum", labels.iter().map(|&t| simple_dim_altsum(t, n, l).map(|x| &x * &x)).sum::<Result<BigInt, _>>()?));
    if n <= 12 {
        routes.push(("rank", labels.iter().map(|&t| simple_dim_rank(k, t, n).map(|x| big(x * x))).sum::<Result<BigInt, _>>()?));
    }
    if let Some(c) = closed_form_dim_q(l, n) {
        routes.push(("closed", c));
    }
    let text = routes.iter().map(|(r, v)| format!("{r}={v}")).collect::<Vec<_>>().join(", ");
    let first = routes[0].1.clone();
    Ok((routes.iter().all(|(_, v)| *v == first).then_some(first), text))
}

fn quotient_family(l: u32, range: NRange, want: impl Fn(usize) -> BigInt) -> Checks {
    let k = field(l)?;
    let mut out = Vec::new();
    for n in range.iter() {
        let name = format!("dimQ l={l} n={n}");
        let (d, text) = dim_q_routes(&k, l, n)?;
        let w = want(n);
        out.push(check(name, d.as_ref() == Some(&w), format!("{text}; expected {w}")));
    }
    Ok(out)
}

fn ising(opts: &VerifyOptions) -> Checks {
    quotient_family(4, NRange::new(2, opts.max_n.unwrap_or(12)), |n| pow(2, n as u32 - 1))
}

fn fibonacci_suite(opts: &VerifyOptions) -> Checks {
    let mut out = quotient_family(5, NRange::new(3, opts.max_n.unwrap_or(12)), |n| fibonacci(2 * n as u64 - 1))?;
    for n in 1..=15u32 {
        let (a, b) = fibonacci_bridge(n)?;
        let (_, b2) = fibonacci_bridge(2 * n)?;
        out.push(check(
            format!("bridge n={n}"),
            a == fibonacci(2 * n as u64) && b == fibonacci(2 * n as u64 - 1) && &a * &a + &b * &b == b2,
            format!("(a, b) = ({a}, {b})"),
        ));
    }
    Ok(out)
}

fn level6(opts: &VerifyOptions) -> Checks {
    quotient_family(6, NRange::new(2, opts.max_n.unwrap_or(10)), |n| (pow(3, n as u32 - 1) + 1) / 2)
}

fn catalan_suite(opts: &VerifyOptions) -> Checks {
    let report = commands::catalan_table(opts.order)?;
    let mut out: Vec<Check> = report.meta["identities"]
        .as_object()
        .into_iter()
        .flatten()
        .map(|(name, v)| check(name.clone(), v.as_bool() == Some(true), "to order K"))
        .collect();
    let rows_ok = report.rows.iter().all(|r| r["agree"] == true);
    out.push(check("catalan recursive = closed = w(0,n)", rows_ok, format!("n = 0..{}", opts.order)));
    Ok(out)
}

fn gram(opts: &VerifyOptions) -> Checks {
    let max_n = opts.max_n.unwrap_or(10).min(12);
    let mut out = Vec::new();
    for l in levels(opts, &[4, 5, 6]) {
        let k = field(l)?;
        let g = GFunction::new(l)?;
        let (mut rank_alt, mut factors, mut cells) = (true, true, 0);
        for n in 0..=max_n {
            for t in cell_labels(n) {
                cells += 1;
                let lt = simple_dim_rank(&k, t, n)?;
                if g.in_domain(t) {
                    rank_alt &= big(lt) == simple_dim_altsum(t, n, l)?;
                }
                let partner = if g.in_domain(t) { g.apply(t).ok().filter(|&s| s <= n) } else { None };
                let other = partner.map_or(Ok(0), |s| simple_dim_rank(&k, s, n))?;
                factors &= cell_dim(t as i64, n as i64) == big(lt + other);
            }
        }
        out.push(check(format!("rank = alternating sum, l={l}"), rank_alt, format!("{cells} cells, n <= {max_n}")));
        out.push(check(format!("w_t = l_t + l_g(t), l={l}"), factors, format!("{cells} cells, n <= {max_n}")));
    }
    Ok(out)
}

fn clifford(opts: &VerifyOptions) -> Checks {
    let report = commands::clifford_check(NRange::new(2, opts.max_n.unwrap_or(8).min(12)))?;
    Ok(report
        .rows
        .iter()
        .map(|r| {
            check(
                format!("clifford n={}", r["n"]),
                r["agree"] == true,
                format!("image {} of expected {}, kernel = ideal: {}", r["image_dim"], r["expected"], r["kernel_is_ideal"]),
            )
        })
        .collect())
}

fn jw(opts: &VerifyOptions) -> Checks {
    let mut out = Vec::new();
    for l in levels(opts, &[3, 4, 5, 6, 7]) {
        let report = commands::jw(l, commands::DEFAULT_MAX_JW_TERMS)?;
        out.push(check(format!("E_{} at l={l}", l - 1), report.ok, report.meta["checks"].to_string()));
    }
    Ok(out)
}

fn radical(opts: &VerifyOptions) -> Checks {
    let max_n = opts.max_n.unwrap_or(DEFAULT_MAX_IDEAL_N).min(DEFAULT_MAX_IDEAL_N);
    let mut out = Vec::new();
    for l in levels(opts, &[4, 5, 6]) {
        let k = field(l)?;
        for n in 1..=max_n {
            let rank = big(trace_form_rank(&k, n));
            let cat = catalan(n as u64);
            if n + 1 < l as usize {
                out.push(check(format!("trace form nondegenerate l={l} n={n}"), rank == cat, format!("rank {rank} of {cat}")));
                continue;
            }
            let ideal = big(ideal_dimension(&k, n, DEFAULT_MAX_IDEAL_N)?);
            let squares: BigInt = simple_q_modules(n, l)
                .into_iter()
                .map(|t| simple_dim_rank(&k, t, n).map(|x| big(x * x)))
                .sum::<Result<_, _>>()?;
            out.push(check(
                format!("radical = ideal l={l} n={n}"),
                rank == &cat - &ideal && rank == squares,
                format!("trace rank {rank}, Catalan - dim J = {}, sum of squares {squares}", &cat - &ideal),
            ));
        }
    }
    Ok(out)
}

fn classification(opts: &VerifyOptions) -> Checks {
    let max_n = opts.max_n.unwrap_or(9);
    let mut out = Vec::new();
    for l in levels(opts, &[4, 5, 6]) {
        let k = field(l)?;
        for n in (l as usize - 1)..=max_n {
            let mut wrong = Vec::new();
            for t in cell_labels(n) {
                if annihilation_check(&k, t, n)? != (t + 2 <= l as usize) {
                    wrong.push(t);
                }
            }
            let detail = if wrong.is_empty() { "E annihilates L_t iff t <= l-2".to_string() } else { format!("wrong at t = {wrong:?}") };
            out.push(check(format!("classification l={l} n={n}"), wrong.is_empty(), detail));
        }
    }
    Ok(out)
}

fn random_cyc(rng: &mut ChaCha8Rng, k: &Arc<CycField>) -> CycNum {
    let c: Vec<BigRational> =
        (0..k.degree()).map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())).collect();
    k.from_coeffs(&c)
}

fn random_tl(rng: &mut ChaCha8Rng, k: &Arc<CycField>, n: usize) -> TLElement {
    let basis = tl_basis(n);
    let mut x = TLElement::zero(k, n);
    for _ in 0..3 {
        x.add_term(basis[rng.gen_range(0..basis.len())].clone(), random_cyc(rng, k));
    }
    x
}

const CASES: usize = 100;

fn properties(opts: &VerifyOptions) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fields: Vec<Arc<CycField>> = levels(opts, &[3, 4, 5, 6, 7, 8]).into_iter().map(field).collect::<Result<_, _>>()?;
    let (mut axioms, mut assoc, mut trace) = (true, true, true);
    for _ in 0..CASES {
        let k = &fields[rng.gen_range(0..fields.len())];
        let (a, b, c) = (random_cyc(&mut rng, k), random_cyc(&mut rng, k), random_cyc(&mut rng, k));
        axioms &= &(&a * &b) * &c == &a * &(&b * &c) && &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        axioms &= a.is_zero() || a.inv().is_some_and(|i| (&a * &i).is_one());
        let n = rng.gen_range(1..=5);
        let (x, y, z) = (random_tl(&mut rng, k, n), random_tl(&mut rng, k, n), random_tl(&mut rng, k, n));
        assoc &= x.multiply(&y)?.multiply(&z)? == x.multiply(&y.multiply(&z)?)?;
        trace &= x.multiply(&y)?.jones_trace() == y.multiply(&x)?.jones_trace();
    }
    let detail = format!("{CASES} cases, seed {}", opts.seed);
    Ok(vec![
        check("field axioms", axioms, detail.clone()),
        check("TL associativity", assoc, detail.clone()),
        check("tr(xy) = tr(yx)", trace, detail),
    ])
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Vec<SuiteReport>, CliError> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    suites
        .into_iter()
        .map(|s| {
            let checks = match s {
                Suite::Ising => ising(opts),
                Suite::Catalan => catalan_suite(opts),
                Suite::Gram => gram(opts),
                Suite::Clifford => clifford(opts),
                Suite::Fibonacci => fibonacci_suite(opts),
                Suite::Level6 => level6(opts),
                Suite::Jw => jw(opts),
                Suite::Radical => radical(opts),
                Suite::Classification => classification(opts),
                Suite::Properties => properties(opts),
                Suite::All => unreachable!(),
            }?;
            Ok(SuiteReport { suite: s, passed: checks.iter().all(|c| c.passed), checks })
        })
        .collect()
}
