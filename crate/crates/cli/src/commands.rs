use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tl_core::cellrep::{cell_labels, simple_dim_altsum, simple_dim_rank, simple_q_modules, GFunction};
use tl_core::clifford::{constant_term_trace, image_dimension, phi_generator, phi_table, so_commutators, BladeElement};
use tl_core::combinatorics::{
    catalan, catalan_recursive, cell_dim, series_identities, two_step_recursion_check, DimFunctionTable,
};
use tl_core::diagram::Diagram;
use tl_core::exactnum::{CycField, CycNum};
use tl_core::quotientdim::{closed_form_dim_q, closed_form_simple_dims, dim_q, dims_by_matrix};
use tl_core::tlalg::{
    ideal_dimension, jones_wenzl, reduced_words, TLElement, DEFAULT_MAX_IDEAL_N,
};

use crate::bignum;
use crate::config::{NRange, Route, RunConfig};
use crate::error::CliError;
use crate::output::{approx_string, object, to_rows, Meta};

/// Rendered-independent command result: a metadata object, table rows, and whether
/// every cross-check agreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub meta: Value,
    pub rows: Vec<Value>,
    pub ok: bool,
}

pub fn field(level: u32) -> Result<Arc<CycField>, CliError> {
    Ok(CycField::new(level)?)
}

fn all_agree<'a>(vals: impl IntoIterator<Item = &'a Option<BigInt>>) -> bool {
    let present: Vec<&BigInt> = vals.into_iter().flatten().collect();
    present.windows(2).all(|w| w[0] == w[1])
}

fn sum_sq(vals: impl IntoIterator<Item = BigInt>) -> BigInt {
    vals.into_iter().map(|x| &x * &x).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimRow {
    pub n: usize,
    pub t: usize,
    #[serde(with = "bignum")]
    pub w: BigInt,
    #[serde(with = "bignum::opt")]
    pub l_rank: Option<BigInt>,
    #[serde(with = "bignum::opt")]
    pub l_altsum: Option<BigInt>,
    #[serde(with = "bignum::opt")]
    pub l_matrix: Option<BigInt>,
    #[serde(with = "bignum::opt")]
    pub l_closed: Option<BigInt>,
    #[serde(rename = "dimQ_rank", with = "bignum::opt")]
    pub dim_q_rank: Option<BigInt>,
    #[serde(rename = "dimQ_altsum", with = "bignum::opt")]
    pub dim_q_altsum: Option<BigInt>,
    #[serde(rename = "dimQ_matrix", with = "bignum::opt")]
    pub dim_q_matrix: Option<BigInt>,
    #[serde(rename = "dimQ_closed", with = "bignum::opt")]
    pub dim_q_closed: Option<BigInt>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsMeta {
    #[serde(flatten)]
    pub base: Meta,
    pub n: NRange,
    pub routes: Vec<Route>,
}

/// The `dims` table: `w_t(n)`, `l_t(n)` and `dim Q_n(l)` per route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub meta: DimsMeta,
    pub rows: Vec<DimRow>,
}

impl ResultTable {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn into_report(self) -> Result<Report, CliError> {
        let ok = self.agree();
        Ok(Report { meta: serde_json::to_value(&self.meta)?, rows: to_rows(&self.rows)?, ok })
    }
}

fn dims_at(k: &Arc<CycField>, cfg: &RunConfig, n: usize) -> Result<Vec<DimRow>, CliError> {
    let l = cfg.level;
    let labels = simple_q_modules(n, l);
    let matrix = if cfg.uses(Route::Matrix) && l >= 4 { Some(dims_by_matrix(l, n)?) } else { None };
    let closed: Option<BTreeMap<usize, BigInt>> = if cfg.uses(Route::Closed) {
        closed_form_simple_dims(l, n).map(|v| v.into_iter().collect())
    } else {
        None
    };
    let mut rows = Vec::with_capacity(labels.len());
    for &t in &labels {
        let l_rank = if cfg.uses(Route::Rank) { Some(BigInt::from(simple_dim_rank(k, t, n)?)) } else { None };
        let l_altsum = if cfg.uses(Route::Altsum) { Some(simple_dim_altsum(t, n, l)?) } else { None };
        rows.push(DimRow {
            n,
            t,
            w: cell_dim(t as i64, n as i64),
            l_rank,
            l_altsum,
            l_matrix: matrix.as_ref().map(|v| v.get(t)),
            l_closed: closed.as_ref().map(|c| c.get(&t).cloned().unwrap_or_else(BigInt::zero)),
            dim_q_rank: None,
            dim_q_altsum: None,
            dim_q_matrix: None,
            dim_q_closed: None,
            agree: true,
        });
    }
    let total = |f: fn(&DimRow) -> &Option<BigInt>| -> Option<BigInt> {
        rows.iter().map(|r| f(r).clone()).collect::<Option<Vec<_>>>().map(sum_sq)
    };
    let dq_rank = total(|r| &r.l_rank);
    let dq_altsum = total(|r| &r.l_altsum);
    let dq_matrix = if cfg.uses(Route::Matrix) && l >= 4 { Some(dim_q(l, n)?) } else { None };
    let dq_closed = if cfg.uses(Route::Closed) { closed_form_dim_q(l, n) } else { None };
    for r in &mut rows {
        r.dim_q_rank = dq_rank.clone();
        r.dim_q_altsum = dq_altsum.clone();
        r.dim_q_matrix = dq_matrix.clone();
        r.dim_q_closed = dq_closed.clone();
        r.agree = all_agree([&r.l_rank, &r.l_altsum, &r.l_matrix, &r.l_closed])
            && all_agree([&r.dim_q_rank, &r.dim_q_altsum, &r.dim_q_matrix, &r.dim_q_closed]);
    }
    Ok(rows)
}

pub fn dims(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    cfg.check_rank_cap()?;
    let k = field(cfg.level)?;
    let per_n: Vec<Vec<DimRow>> = cfg.n.iter().collect::<Vec<_>>().par_iter().map(|&n| dims_at(&k, cfg, n)).collect::<Result<_, _>>()?;
    Ok(ResultTable {
        meta: DimsMeta { base: Meta::for_field(&k), n: cfg.n, routes: cfg.routes.clone() },
        rows: per_n.into_iter().flatten().collect(),
    })
}

fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        "1".into()
    } else {
        word.iter().map(|i| format!("f{i}")).collect::<Vec<_>>().join(" ")
    }
}

/// `c * word` as a signed summand: rational coefficients and `+-delta` are spelled out.
fn summand(c: &CycNum, delta: &CycNum, word: &str, first: bool) -> String {
    let (neg, mag) = match c.as_rational() {
        Some(r) if r < num_rational::BigRational::zero() => (true, (-r).to_string()),
        Some(r) => (false, r.to_string()),
        None if c == delta => (false, "delta".into()),
        None if *c == -delta => (true, "delta".into()),
        None => (false, format!("({c})")),
    };
    let body = match (mag.as_str(), word) {
        ("1", w) => w.to_string(),
        (m, "1") => m.to_string(),
        (m, w) => format!("{m} {w}"),
    };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

pub const DEFAULT_MAX_JW_TERMS: u64 = 5000;

/// `E_{l-1}` in canonical diagram order, with runtime checks.
pub fn jw(level: u32, max_terms: u64) -> Result<Report, CliError> {
    if level < 3 {
        return Err(CliError::Usage(format!("--level must be at least 3, got {level}")));
    }
    let m = level as usize - 1;
    let terms = catalan(m as u64);
    if terms > BigInt::from(max_terms) {
        return Err(CliError::ResourceCap(format!("E_{m} has {terms} terms, above the cap of {max_terms}")));
    }
    let k = field(level)?;
    let e = jones_wenzl(&k)?.into_element();
    let words = reduced_words(m);
    let delta = k.delta();
    let mut formula = format!("E_{m} = ");
    let mut rows = Vec::new();
    let mut terms: Vec<_> = e.terms().collect();
    terms.sort_by(|a, b| words[a.0].len().cmp(&words[b.0].len()).then_with(|| words[a.0].cmp(&words[b.0])));
    for (i, (d, c)) in terms.into_iter().enumerate() {
        let w = word_text(&words[d]);
        formula.push_str(&summand(c, &delta, &w, i == 0));
        rows.push(object([
            ("index", json!(i)),
            ("word", json!(w)),
            ("diagram", json!(d.to_string())),
            ("coefficient", json!(c.to_string())),
            ("approx", json!(approx_string(c))),
        ]));
    }
    let idempotent = e.multiply(&e)? == e;
    let mut killed = true;
    for i in 1..m {
        let f = TLElement::generator(&k, m, i)?;
        killed &= f.multiply(&e)?.is_zero() && e.multiply(&f)?.is_zero();
    }
    let identity_one = e.coeff(&Diagram::identity(m)).is_one();
    let trace_zero = e.jones_trace().is_zero();
    let mut meta = serde_json::to_value(Meta::for_field(&k))?;
    let checks = json!({
        "idempotent": idempotent,
        "killed_by_generators": killed,
        "identity_coefficient_one": identity_one,
        "trace_zero": trace_zero,
    });
    meta["terms"] = json!(e.len());
    meta["formula"] = json!(formula);
    meta["checks"] = checks;
    Ok(Report { meta, rows, ok: idempotent && killed && identity_one && trace_zero })
}

/// Gram ranks of every cell module against the alternating-sum formula.
pub fn gram_rank(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.n.end > cfg.max_rank_n {
        return Err(CliError::ResourceCap(format!("gram-rank up to n = {} exceeds --max-rank-n {}", cfg.n.end, cfg.max_rank_n)));
    }
    let k = field(cfg.level)?;
    let g = GFunction::new(cfg.level)?;
    let cells: Vec<(usize, usize)> = cfg.n.iter().flat_map(|n| cell_labels(n).into_iter().map(move |t| (n, t))).collect();
    let rows: Vec<(Value, bool)> = cells
        .par_iter()
        .map(|&(n, t)| -> Result<(Value, bool), CliError> {
            let w = cell_dim(t as i64, n as i64);
            let rank = BigInt::from(simple_dim_rank(&k, t, n)?);
            let alt = if g.in_domain(t) { Some(simple_dim_altsum(t, n, cfg.level)?) } else { None };
            let agree = alt.as_ref().map_or(true, |a| *a == rank);
            let row = object([
                ("n", json!(n)),
                ("t", json!(t)),
                ("w", json!(w.to_string().parse::<u64>().ok())),
                ("rank", json!(rank.to_string().parse::<u64>().ok())),
                ("corank", json!((&w - &rank).to_string().parse::<u64>().ok())),
                ("l_altsum", json!(alt.map(|a| a.to_string().parse::<i64>().ok()))),
                ("agree", json!(agree)),
            ]);
            Ok((row, agree))
        })
        .collect::<Result<_, _>>()?;
    let ok = rows.iter().all(|(_, a)| *a);
    Ok(Report { meta: serde_json::to_value(Meta::for_field(&k))?, rows: rows.into_iter().map(|(r, _)| r).collect(), ok })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientRow {
    pub n: usize,
    #[serde(with = "bignum")]
    pub catalan: BigInt,
    #[serde(rename = "dimQ_rank", with = "bignum::opt")]
    pub dim_q_rank: Option<BigInt>,
    #[serde(rename = "dimQ_altsum", with = "bignum::opt")]
    pub dim_q_altsum: Option<BigInt>,
    #[serde(rename = "dimQ_matrix", with = "bignum::opt")]
    pub dim_q_matrix: Option<BigInt>,
    #[serde(rename = "dimQ_closed", with = "bignum::opt")]
    pub dim_q_closed: Option<BigInt>,
    #[serde(rename = "dimQ_ideal", with = "bignum::opt")]
    pub dim_q_ideal: Option<BigInt>,
    #[serde(with = "bignum::opt")]
    pub ideal_dim: Option<BigInt>,
    pub agree: bool,
}

/// `dim Q_n(l)` per route, plus `Catalan(n) - dim J` for `n <= 8`.
pub fn quotient(cfg: &RunConfig) -> Result<Report, CliError> {
    let table = dims(cfg)?;
    let k = field(cfg.level)?;
    let mut rows = Vec::new();
    for n in cfg.n.iter() {
        let first = table.rows.iter().find(|r| r.n == n);
        let cat = catalan(n as u64);
        let ideal = if n <= DEFAULT_MAX_IDEAL_N { Some(BigInt::from(ideal_dimension(&k, n, DEFAULT_MAX_IDEAL_N)?)) } else { None };
        let mut row = QuotientRow {
            n,
            dim_q_rank: first.and_then(|r| r.dim_q_rank.clone()),
            dim_q_altsum: first.and_then(|r| r.dim_q_altsum.clone()),
            dim_q_matrix: first.and_then(|r| r.dim_q_matrix.clone()),
            dim_q_closed: first.and_then(|r| r.dim_q_closed.clone()),
            dim_q_ideal: ideal.as_ref().map(|j| &cat - j),
            ideal_dim: ideal,
            catalan: cat,
            agree: true,
        };
        row.agree = first.map_or(true, |r| r.agree)
            && all_agree([&row.dim_q_rank, &row.dim_q_altsum, &row.dim_q_matrix, &row.dim_q_closed, &row.dim_q_ideal]);
        rows.push(row);
    }
    let ok = rows.iter().all(|r| r.agree);
    Ok(Report { meta: serde_json::to_value(&table.meta)?, rows: to_rows(&rows)?, ok })
}

/// Clifford realization checks at `l = 4` for each `n` in range.
pub fn clifford_check(range: NRange) -> Result<Report, CliError> {
    if range.start < 2 {
        return Err(CliError::Usage("clifford-check needs n >= 2".into()));
    }
    if range.end > 12 {
        return Err(CliError::ResourceCap(format!("clifford-check supports n <= 12, got {}", range.end)));
    }
    let k = field(4)?;
    let delta = k.delta();
    let e3 = jones_wenzl(&k)?.into_element();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in range.iter() {
        let gens: Vec<BladeElement> = (1..n).map(|j| phi_generator(&k, n, j)).collect::<Result<_, _>>()?;
        let mut relations = true;
        for i in 0..gens.len() {
            relations &= gens[i].multiply(&gens[i])? == gens[i].scale(&delta);
            for j in 0..gens.len() {
                if i.abs_diff(j) == 1 {
                    relations &= gens[i].multiply(&gens[j])?.multiply(&gens[i])? == gens[i];
                } else if i.abs_diff(j) > 1 {
                    relations &= gens[i].multiply(&gens[j])? == gens[j].multiply(&gens[i])?;
                }
            }
        }
        let table = phi_table(&k, n)?;
        let trace_ok = table.iter().all(|(d, img)| {
            img.is_even() && constant_term_trace(img) == TLElement::from_diagram(&k, d.clone(), k.one()).jones_trace()
        });
        let phi_e3_zero = if n >= 3 {
            let e = e3.embed(n)?;
            let mut acc = BladeElement::zero(&k, n)?;
            for (d, c) in e.terms() {
                acc = acc.add(&table[d].scale(c))?;
            }
            acc.is_zero()
        } else {
            true
        };
        let image = image_dimension(&k, n)?;
        let expected = 1usize << (n - 1);
        let ideal = if n <= DEFAULT_MAX_IDEAL_N { Some(ideal_dimension(&k, n, DEFAULT_MAX_IDEAL_N)?) } else { None };
        let kernel_is_ideal = ideal.map(|j| table.len() - image == j);
        let so_ok = so_commutators(&k, n)?.passed();
        let agree = relations && trace_ok && phi_e3_zero && image == expected && kernel_is_ideal != Some(false) && so_ok;
        ok &= agree;
        rows.push(object([
            ("n", json!(n)),
            ("dim_tl", json!(table.len())),
            ("image_dim", json!(image)),
            ("expected", json!(expected)),
            ("ideal_dim", json!(ideal)),
            ("kernel_is_ideal", json!(kernel_is_ideal)),
            ("relations", json!(relations)),
            ("phi_e3_zero", json!(phi_e3_zero)),
            ("trace_correspondence", json!(trace_ok)),
            ("so_commutators", json!(so_ok)),
            ("agree", json!(agree)),
        ]));
    }
    let meta = serde_json::to_value(Meta::for_field(&k))?;
    Ok(Report { meta, rows, ok })
}

/// Catalan numbers and the truncated generating-function identities to order `k`.
pub fn catalan_table(order: usize) -> Result<Report, CliError> {
    if order > 200 {
        return Err(CliError::ResourceCap(format!("--K {order} exceeds 200")));
    }
    let ids = series_identities(order);
    let steps = two_step_recursion_check(order);
    let rec = catalan_recursive(order);
    let table = DimFunctionTable::build(2 * order);
    let mut rows = Vec::new();
    let mut ok = ids.iter().chain(&steps).all(|c| c.passed);
    for (n, r) in rec.iter().enumerate() {
        let closed = catalan(n as u64);
        let w_0n = table.w(0, n as i64);
        let agree = *r == closed && w_0n == closed;
        ok &= agree;
        rows.push(object([
            ("n", json!(n)),
            ("catalan", serde_json::to_value(BigWrap(closed))?),
            ("catalan_recursive", serde_json::to_value(BigWrap(r.clone()))?),
            ("w_0", serde_json::to_value(BigWrap(w_0n))?),
            ("agree", json!(agree)),
        ]));
    }
    let checks: serde_json::Map<String, Value> =
        ids.iter().chain(&steps).map(|c| (c.name.clone(), json!(c.passed))).collect();
    let meta = json!({ "K": order, "identities": checks });
    Ok(Report { meta, rows, ok })
}

#[derive(Serialize)]
struct BigWrap(#[serde(with = "bignum")] BigInt);
