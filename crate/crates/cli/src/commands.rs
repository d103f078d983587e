use crate::config::Config;
use crate::output::Record;
use crate::{AmpKind, ChainAction, Check, Failure, IdentityKindArg, Method, ModelArgs, Outcome};
use defectbethe::amplitudes::{
    breather_S, breather_S_integral, breather_T, breather_T_integral, kink_S_amplitude, kink_S_integral, transmission_amplitude,
    transmission_integral, transmission_matrix, transmission_rep, DefectRegimeData,
};
use defectbethe::lax_operators::{rll_residual, ybe_residual};
use defectbethe::physics_checks::{
    block_casimir_identity, defect_spectrum_closed_form, defect_spin_spectrum, matrix_crossing_residual, matrix_unitarity_residual,
    rtt_residual, scalar_crossing_residual, scalar_unitarity_residual,
};
use defectbethe::spin_algebra::{build_rep, casimir, casimir_closed_form, ModelParameters, Regime};
use defectbethe::spin_chain::{bae_residual, hamiltonian, hamiltonian_spectrum, solve_bae, BetheState, ChainSpec};
use defectbethe::special_functions::{use1_integral, use2_difference_integral, verify_gamma_integral_identity, AmplitudeValue, IdentityKind};
use defectbethe::{Error, Result};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(params: &Map<String, Value>, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{e} (params: {})", Value::Object(params.clone())))
}

fn insert(map: &mut Map<String, Value>, pairs: Value) {
    if let Value::Object(extra) = pairs {
        map.extend(extra);
    }
}

fn model(args: &ModelArgs) -> CliResult<ModelParameters> {
    args.params().map_err(|e| usage(&args.describe(), e))
}

fn check_name(check: Check) -> &'static str {
    match check {
        Check::Ybe => "ybe",
        Check::Rll => "rll",
        Check::Rtt => "rtt",
        Check::Unitarity => "unitarity",
        Check::Crossing => "crossing",
        Check::Casimir => "casimir",
        Check::DefectSpectrum => "defect-spectrum",
    }
}

fn default_tol(check: Check, params: &ModelParameters) -> f64 {
    match check {
        Check::Ybe | Check::Rll | Check::Casimir => 1e-12,
        Check::Rtt => 1e-10,
        Check::Unitarity | Check::Crossing => 1e-9,
        Check::DefectSpectrum if params.is_rational() => 1e-12,
        Check::DefectSpectrum => 1e-8,
    }
}

/// Whether the transmission matrix exists for this defect (S̃ ≥ 1/2, finite rep).
fn has_matrix(data: &DefectRegimeData) -> bool {
    data.shifted_spin >= 0.5 - 1e-12 && transmission_rep(data).is_ok()
}

fn verify_sample(check: Check, p: &ModelParameters, spin: f64, l1: C64, l2: C64) -> Result<f64> {
    match check {
        Check::Ybe => ybe_residual(p, l1, l2),
        Check::Rll => rll_residual(p, &build_rep(spin, p)?, l1, l2),
        Check::Rtt => rtt_residual(p, &DefectRegimeData::new(p, spin, 0.0, 0.0)?, l1, l2),
        Check::Unitarity => {
            let data = DefectRegimeData::new(p, spin, 0.0, 0.0)?;
            let mut r = scalar_unitarity_residual(p, &data, l1)?;
            if has_matrix(&data) {
                r = r.max(matrix_unitarity_residual(|l| transmission_matrix(p, &data, None, l), l1)?);
            }
            Ok(r)
        }
        Check::Crossing => {
            let data = DefectRegimeData::new(p, spin, 0.0, 0.0)?;
            let mut r = scalar_crossing_residual(p, &data, l1)?;
            if has_matrix(&data) {
                r = r.max(matrix_crossing_residual(|l| transmission_matrix(p, &data, None, l), l1)?);
            }
            Ok(r)
        }
        Check::Casimir => {
            let rep = build_rep(spin, p)?;
            let (_, c) = casimir(&rep)?;
            Ok(block_casimir_identity(p, &rep, l1)?.residual.max((c - casimir_closed_form(&rep)).abs()))
        }
        Check::DefectSpectrum => {
            let rep = build_rep(spin, p)?;
            Ok(defect_spectrum_closed_form(p, &rep, l1)?.residual.max(defect_spin_spectrum(&rep).residual))
        }
    }
}

/// Random spectral parameters: complex pairs for the algebraic relations,
/// real rapidities for the amplitude and spectrum checks.
fn samples(check: Check, n: usize, seed: u64) -> Vec<(C64, C64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real_only = matches!(check, Check::Unitarity | Check::Crossing | Check::DefectSpectrum);
    (0..n)
        .map(|_| {
            let mut draw = || {
                let re = rng.random_range(-2.0..2.0);
                let im = if real_only { 0.0 } else { rng.random_range(-0.4..0.4) };
                C64::new(re, im)
            };
            (draw(), draw())
        })
        .collect()
}

pub fn verify(
    check: Check,
    args: &ModelArgs,
    spin: f64,
    n_samples: usize,
    tol: Option<f64>,
    config: &Config,
    seed: u64,
) -> CliResult<Outcome> {
    let p = model(args)?;
    let name = check_name(check);
    let tol = tol.or(config.tol(name)).unwrap_or_else(|| default_tol(check, &p));
    let mut params = args.describe();
    insert(&mut params, json!({ "spin": spin, "samples": n_samples, "tol": tol, "seed": seed }));
    if n_samples == 0 {
        return Err(usage(&params, "--samples must be at least 1"));
    }
    let points = samples(check, n_samples, seed);
    let residuals: Vec<Result<f64>> = points.par_iter().map(|&(l1, l2)| verify_sample(check, &p, spin, l1, l2)).collect();
    let mut worst = (0usize, 0.0f64);
    for (k, r) in residuals.into_iter().enumerate() {
        match r {
            Ok(v) if v.is_nan() || v > worst.1 => worst = (k, v),
            Ok(_) => {}
            Err(e) => {
                let (l1, l2) = points[k];
                let mut at = params.clone();
                insert(&mut at, json!({ "lambda1": [l1.re, l1.im], "lambda2": [l2.re, l2.im] }));
                return Err(usage(&at, e));
            }
        }
    }
    let pass = worst.1 <= tol;
    let (l1, l2) = points[worst.0];
    insert(
        &mut params,
        json!({ "pass": pass, "worst_lambda1": [l1.re, l1.im], "worst_lambda2": [l2.re, l2.im] }),
    );
    let mut rec = Record::new(&format!("verify {name}"), params);
    rec.residual = Some(worst.1);
    Ok(Outcome { records: vec![rec], pass })
}

/// Rapidities from `--lambda` or `--sweep min:max:steps` (endpoints included).
pub fn lambdas(lambda: Option<f64>, sweep: Option<&str>) -> CliResult<Vec<f64>> {
    match (lambda, sweep) {
        (Some(l), None) => Ok(vec![l]),
        (None, Some(s)) => {
            let bad = || Failure::Usage(format!("--sweep expects min:max:steps, got {s:?}"));
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
            if steps == 0 || !lo.is_finite() || !hi.is_finite() {
                return Err(bad());
            }
            if steps == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..steps).map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64).collect())
        }
        (None, None) => Err(Failure::Usage("one of --lambda or --sweep is required".into())),
        (Some(_), Some(_)) => Err(Failure::Usage("--lambda and --sweep are exclusive".into())),
    }
}

pub struct AmpRequest {
    pub kind: AmpKind,
    pub lambdas: Vec<f64>,
    pub spin: f64,
    pub theta: f64,
    pub branch_m: Option<i64>,
    pub n1: usize,
    pub n2: usize,
    pub n: usize,
    pub method: Method,
    pub tol: f64,
}

fn amp_name(kind: AmpKind) -> &'static str {
    match kind {
        AmpKind::Kink => "kink",
        AmpKind::Transmission => "transmission",
        AmpKind::BreatherS => "breather-s",
        AmpKind::BreatherT => "breather-t",
    }
}

fn require_attractive(p: &ModelParameters) -> Result<f64> {
    if p.is_rational() || p.regime()? != Regime::Attractive {
        return Err(Error::Domain("breathers exist only for --model xxz --regime attractive".into()));
    }
    p.gamma()
}

fn product_value(req: &AmpRequest, p: &ModelParameters, data: Option<&DefectRegimeData>, lambda: f64) -> Result<AmplitudeValue> {
    let l = C64::new(lambda, 0.0);
    match (req.kind, data) {
        (AmpKind::Kink, _) => kink_S_amplitude(p, l),
        (AmpKind::Transmission, Some(d)) => transmission_amplitude(p, d, l - req.theta),
        (AmpKind::BreatherS, _) => Ok(AmplitudeValue::exact(breather_S(req.n1, req.n2, l, require_attractive(p)?)?)),
        (AmpKind::BreatherT, Some(d)) => {
            let g = require_attractive(p)?;
            Ok(AmplitudeValue::exact(breather_T(req.n, l - req.theta, g, d.eta1, d.eta2)?))
        }
        _ => unreachable!("defect data is built for every defect amplitude"),
    }
}

fn integral_value(req: &AmpRequest, p: &ModelParameters, data: Option<&DefectRegimeData>, lambda: f64) -> Result<AmplitudeValue> {
    match (req.kind, data) {
        (AmpKind::Kink, _) => kink_S_integral(p, lambda),
        (AmpKind::Transmission, Some(d)) => transmission_integral(p, d, lambda - req.theta),
        (AmpKind::BreatherS, _) => {
            if (req.n1, req.n2) != (1, 1) {
                return Err(Error::Domain("the integral form exists for --n1 1 --n2 1 only".into()));
            }
            breather_S_integral(p, lambda)
        }
        (AmpKind::BreatherT, Some(d)) => {
            if req.n != 1 {
                return Err(Error::Domain("the integral form exists for --n 1 only".into()));
            }
            breather_T_integral(p, d, lambda - req.theta)
        }
        _ => unreachable!("defect data is built for every defect amplitude"),
    }
}

fn value_record(command: &str, params: &Map<String, Value>, method: &str, lambda: f64, v: &AmplitudeValue) -> Record {
    let mut params = params.clone();
    params.insert("method".into(), json!(method));
    let mut rec = Record::new(command, params);
    rec.lambda = Some(lambda);
    rec.re = Some(v.value.re);
    rec.im = Some(v.value.im);
    rec.err = Some(v.err_estimate);
    rec
}

pub fn amp(req: &AmpRequest, args: &ModelArgs) -> CliResult<Outcome> {
    let p = model(args)?;
    let command = format!("amp {}", amp_name(req.kind));
    let mut params = args.describe();
    match req.kind {
        AmpKind::Kink => {}
        AmpKind::BreatherS => insert(&mut params, json!({ "n1": req.n1, "n2": req.n2 })),
        AmpKind::Transmission | AmpKind::BreatherT => {
            insert(&mut params, json!({ "spin": req.spin, "theta": req.theta }));
            if req.kind == AmpKind::BreatherT {
                params.insert("n".into(), json!(req.n));
            }
        }
    }
    let data = match req.kind {
        AmpKind::Transmission | AmpKind::BreatherT => {
            let d = DefectRegimeData::new(&p, req.spin, req.theta, 0.0).map_err(|e| usage(&params, e))?;
            params.insert("branch_m".into(), json!(d.branch));
            params.insert("shifted_spin".into(), json!(d.shifted_spin));
            if let Some(m) = req.branch_m {
                if m != d.branch {
                    return Err(usage(&params, format!("--branch-m {m} disagrees with the branch {} fixed by S and nu", d.branch)));
                }
            }
            Some(d)
        }
        _ => None,
    };
    let data = data.as_ref();
    type Row = (Option<AmplitudeValue>, Option<AmplitudeValue>);
    let rows: Vec<Result<Row>> = req
        .lambdas
        .par_iter()
        .map(|&l| {
            let prod = match req.method {
                Method::Product | Method::Both => Some(product_value(req, &p, data, l)?),
                Method::Integral => None,
            };
            let int = match req.method {
                Method::Integral | Method::Both => Some(integral_value(req, &p, data, l)?),
                Method::Product => None,
            };
            Ok((prod, int))
        })
        .collect();
    let mut records = Vec::new();
    let mut pass = true;
    for (row, &l) in rows.into_iter().zip(&req.lambdas) {
        let (prod, int) = row.map_err(|e| {
            let mut at = params.clone();
            at.insert("lambda".into(), json!(l));
            usage(&at, e)
        })?;
        let diff = match (&prod, &int) {
            (Some(a), Some(b)) => Some((a.value - b.value).norm()),
            _ => None,
        };
        if let Some(d) = diff {
            pass &= d <= req.tol;
        }
        for (method, v) in [("product", prod), ("integral", int)] {
            if let Some(v) = v {
                let mut rec = value_record(&command, &params, method, l, &v);
                rec.diff = diff;
                records.push(rec);
            }
        }
    }
    Ok(Outcome { records, pass })
}

/// Deterministic seed sets for Newton: the solver's default grid, then
/// symmetric spreads around several centers with a small imaginary tilt.
fn bae_seed_sets(m: usize) -> Vec<Vec<C64>> {
    let mut sets = vec![Vec::new()];
    for center in [-1.0, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 1.0] {
        for spread in [0.3, 0.8] {
            sets.push(
                (0..m)
                    .map(|j| C64::new(center + spread * (j as f64 - (m as f64 - 1.0) / 2.0), 0.01 * (j as f64 + 1.0)))
                    .collect(),
            );
        }
    }
    sets
}

fn same_state(a: &BetheState, b: &BetheState) -> bool {
    a.roots.iter().all(|r| b.roots.iter().any(|s| (r - s).norm() < 1e-8))
        && b.roots.iter().all(|r| a.roots.iter().any(|s| (r - s).norm() < 1e-8))
}

#[allow(clippy::too_many_arguments)]
pub fn chain(
    action: ChainAction,
    args: &ModelArgs,
    n_bulk: usize,
    defect_site: usize,
    spin: f64,
    theta: f64,
    magnons: Option<usize>,
    tol: Option<f64>,
) -> CliResult<Outcome> {
    let p = model(args)?;
    let mut params = args.describe();
    insert(&mut params, json!({ "N": n_bulk, "defect_site": defect_site, "spin": spin, "theta": theta }));
    let spec = ChainSpec::new(n_bulk, defect_site, spin, theta, p).map_err(|e| usage(&params, e))?;
    match action {
        ChainAction::Diagonalize => {
            let h = hamiltonian(&spec).map_err(|e| usage(&params, e))?;
            let spectrum = hamiltonian_spectrum(&spec).map_err(|e| usage(&params, e))?;
            params.insert("hermiticity_residual".into(), json!(h.hermiticity_residual));
            params.insert("phase".into(), json!([h.phase.re, h.phase.im]));
            let records = spectrum
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let mut at = params.clone();
                    at.insert("index".into(), json!(k));
                    let mut rec = Record::new("chain diagonalize", at);
                    rec.re = Some(e.re);
                    rec.im = Some(e.im);
                    rec
                })
                .collect();
            Ok(Outcome { records, pass: true })
        }
        ChainAction::Bae => {
            let m = magnons.ok_or_else(|| usage(&params, "chain bae needs --magnons"))?;
            params.insert("magnons".into(), json!(m));
            if m == 0 {
                return Err(usage(&params, "--magnons must be at least 1"));
            }
            let tol = tol.unwrap_or(1e-10);
            let attempts: Vec<Result<BetheState>> = bae_seed_sets(m).par_iter().map(|s| solve_bae(&spec, m, s)).collect();
            let mut states: Vec<BetheState> = Vec::new();
            for st in attempts.into_iter().flatten() {
                if !states.iter().any(|s| same_state(s, &st)) {
                    states.push(st);
                }
            }
            if states.is_empty() {
                return Err(usage(&params, "Newton iteration converged from none of the seed sets"));
            }
            for s in &mut states {
                s.roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            }
            states.sort_by(|a, b| a.roots[0].re.total_cmp(&b.roots[0].re));
            let mut records = Vec::new();
            let mut pass = true;
            for (k, s) in states.iter().enumerate() {
                let residual = bae_residual(&spec, s).map_err(|e| usage(&params, e))?;
                pass &= residual <= tol;
                for (j, r) in s.roots.iter().enumerate() {
                    let mut at = params.clone();
                    insert(&mut at, json!({ "solution": k, "root": j, "total_sz": s.total_sz(&spec) }));
                    let mut rec = Record::new("chain bae", at);
                    rec.re = Some(r.re);
                    rec.im = Some(r.im);
                    rec.residual = Some(residual);
                    records.push(rec);
                }
            }
            Ok(Outcome { records, pass })
        }
    }
}

/// 20 points spread over (0, 10).
pub const USE1_GRID: [f64; 20] =
    [0.25, 0.75, 1.25, 1.75, 2.25, 2.75, 3.25, 3.75, 4.25, 4.75, 5.25, 5.75, 6.25, 6.75, 7.25, 7.75, 8.25, 8.75, 9.25, 9.75];

pub const USE2_GRID: [(f64, f64); 10] =
    [(0.3, 0.5), (0.5, 1.0), (0.8, 2.0), (1.0, 0.7), (1.5, 1.5), (2.0, 3.0), (2.5, 0.4), (3.0, 1.2), (4.0, 2.5), (5.0, 0.9)];

pub fn identity(which: IdentityKindArg, mu: Option<f64>, beta: Option<f64>, tol: Option<f64>) -> CliResult<Outcome> {
    let (name, tol, kinds): (&str, f64, Vec<IdentityKind>) = match which {
        IdentityKindArg::Use1 => {
            if beta.is_some() {
                return Err(Failure::Usage("--beta only applies to use2".into()));
            }
            let grid = mu.map(|m| vec![m]).unwrap_or_else(|| USE1_GRID.to_vec());
            ("use1", tol.unwrap_or(1e-8), grid.into_iter().map(|mu| IdentityKind::Use1 { mu }).collect())
        }
        IdentityKindArg::Use2 => {
            let grid = match (mu, beta) {
                (Some(m), Some(b)) => vec![(m, b)],
                (None, None) => USE2_GRID.to_vec(),
                _ => return Err(Failure::Usage("use2 takes both --mu and --beta, or neither".into())),
            };
            ("use2", tol.unwrap_or(1e-6), grid.into_iter().map(|(mu, beta)| IdentityKind::Use2 { mu, beta }).collect())
        }
    };
    let rows: Vec<Result<(f64, f64)>> = kinds
        .par_iter()
        .map(|k| {
            let lhs = match *k {
                IdentityKind::Use1 { mu } => use1_integral(mu)?,
                IdentityKind::Use2 { mu, beta } => use2_difference_integral(mu, beta)?,
            };
            Ok((lhs, verify_gamma_integral_identity(*k)?))
        })
        .collect();
    let mut records = Vec::new();
    let mut pass = true;
    for (k, row) in kinds.iter().zip(rows) {
        let params = match *k {
            IdentityKind::Use1 { mu } => json!({ "mu": mu, "tol": tol }),
            IdentityKind::Use2 { mu, beta } => json!({ "mu": mu, "beta": beta, "tol": tol }),
        };
        let Value::Object(params) = params else { unreachable!() };
        let (lhs, residual) = row.map_err(|e| usage(&params, e))?;
        pass &= residual <= tol;
        let mut rec = Record::new(&format!("identity {name}"), params);
        rec.re = Some(lhs);
        rec.residual = Some(residual);
        records.push(rec);
    }
    Ok(Outcome { records, pass })
}
