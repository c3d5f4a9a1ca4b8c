use std::collections::BTreeSet;

use mapcov::coverings::{
    collapse_psi, cov31_coefficient, covering_census, enumerate_coverings, enumerate_coverings_capped, in_image,
    reconstruct_covering, MAX_COVERING_LETTERS,
};
use mapcov::maps::{enumerate_gluings, gluing_census, harer_zagier, MAX_GLUING_SLOTS};
use mapcov::partitions::{decay_rate_first_f64, limit_shape, rotated_profile, sample_rsk_with, scaled_rows};
use mapcov::ribbon::kontsevich_sum;
use mapcov::rng::{self, replicate};
use mapcov::spectral::{
    edge_moment_experiment, gue_eigenvalues, quadrature_identities, rho_laplace, scale_gue, EdgeMomentConfig,
    QuadratureSpec,
};
use mapcov::{jm_trace_direct, jm_trace_via_partitions, CoveringSolution, ExponentVector, PolygonGluing};

use crate::output::{Cell, Table};
use crate::{Cli, CliError, Command, Report};

type Res = Result<Report, CliError>;

pub fn dispatch(cli: &Cli) -> Res {
    match &cli.command {
        Command::EnumerateMaps { by_genus } => enumerate_maps(cli, *by_genus),
        Command::EnumerateCoverings { by_genus } => enumerate_coverings_cmd(cli, *by_genus),
        Command::HarerZagier { check } => harer_zagier_cmd(cli, *check),
        Command::TraceCheck { modified } => trace_check(cli, *modified),
        Command::PsiRoundtrip => psi_roundtrip(cli),
        Command::KontsevichEval => kontsevich_eval(cli),
        Command::Cov31Series => cov31_series(cli),
        Command::SamplePlancherel => sample_plancherel(cli),
        Command::SampleGue { model } => sample_gue(cli, (*model).into()),
        Command::Identities => identities(),
        Command::EdgeCompare { n_gue, model } => edge_compare(cli, *n_gue, (*model).into()),
        Command::LimitShape { grid } => limit_shape_cmd(cli, *grid),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("{flag} is required")))
}

fn k_vector(cli: &Cli) -> Result<ExponentVector, CliError> {
    let raw = cli
        .k
        .as_deref()
        .ok_or_else(|| CliError::Invalid("--k is required".into()))?;
    raw.parse().map_err(|e: mapcov::Error| CliError::Invalid(e.to_string()))
}

fn xi_list(cli: &Cli, default: &[f64]) -> Result<Vec<f64>, CliError> {
    match &cli.xi {
        None => Ok(default.to_vec()),
        Some(raw) => raw
            .split(',')
            .map(|p| {
                let v: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Invalid(format!("bad --xi value {p:?}")))?;
                if v > 0.0 && v.is_finite() {
                    Ok(v)
                } else {
                    Err(CliError::Invalid(format!("--xi values must be positive, got {v}")))
                }
            })
            .collect(),
    }
}

fn seed(cli: &Cli) -> Result<u64, CliError> {
    cli.seed
        .ok_or_else(|| CliError::Invalid("--seed is required for stochastic commands".into()))
}

/// Refuses runs whose estimated size exceeds `--max-work` (or `default`)
/// unless `--force` is given.
fn guard(cli: &Cli, work: f64, default: f64, what: &str) -> Result<(), CliError> {
    let cap = cli.max_work.unwrap_or(default);
    if work > cap && !cli.force {
        return Err(CliError::SizeCap(format!(
            "{what}: estimated work {work:.3e} exceeds {cap:.3e}"
        )));
    }
    Ok(())
}

fn double_factorial_odd(m: usize) -> f64 {
    (1..m).step_by(2).map(|x| x as f64).product()
}

fn gluing_work(k: &ExponentVector) -> f64 {
    let m = k.total();
    if m % 2 == 1 {
        0.0
    } else {
        double_factorial_odd(m)
    }
}

fn slot_cap(cli: &Cli) -> usize {
    if cli.force {
        usize::MAX
    } else {
        MAX_GLUING_SLOTS
    }
}

fn enumerate_maps(cli: &Cli, by_genus: bool) -> Res {
    let k = k_vector(cli)?;
    guard(
        cli,
        gluing_work(&k),
        double_factorial_odd(MAX_GLUING_SLOTS),
        "gluing enumeration",
    )?;
    let census = gluing_census(&k, slot_cap(cli))?;
    if by_genus {
        let mut t = Table::new(&["genus", "count"]);
        for (g, c) in census.by_genus() {
            if cli.genus.map_or(true, |want| want == g) {
                t.push(vec![g.into(), c.into()]);
            }
        }
        return Ok(Report::table(t));
    }
    let mut t = Table::new(&["components", "euler_characteristic", "total_genus", "count"]);
    for (&(comp, chi), &c) in &census.counts {
        let g = ((2 * comp as i64 - chi) / 2) as usize;
        t.push(vec![comp.into(), chi.into(), g.into(), c.into()]);
    }
    Ok(Report::table(t))
}

fn coverings_of(cli: &Cli, k: &ExponentVector) -> Result<Vec<CoveringSolution>, CliError> {
    if cli.force {
        Ok(enumerate_coverings_capped(k, usize::MAX)?)
    } else {
        Ok(enumerate_coverings(k)?)
    }
}

fn enumerate_coverings_cmd(cli: &Cli, by_genus: bool) -> Res {
    let k = k_vector(cli)?;
    guard(
        cli,
        k.total() as f64,
        MAX_COVERING_LETTERS as f64,
        "covering word length",
    )?;
    if by_genus {
        let census = if cli.force {
            mapcov::CoveringCensus::from_solutions(&enumerate_coverings_capped(&k, usize::MAX)?)
        } else {
            covering_census(&k)?
        };
        let max_g = census
            .counts
            .keys()
            .map(|&(c, chi)| ((2 * c as i64 - chi) / 2) as usize)
            .max();
        let mut t = Table::new(&["genus", "connected", "total"]);
        for g in 0..=max_g.unwrap_or(0) {
            if census.total() == 0 {
                break;
            }
            t.push(vec![g.into(), census.connected(g).into(), census.total_genus(g).into()]);
        }
        return Ok(Report::table(t));
    }
    let mut t = Table::new(&[
        "word",
        "nonspecial_sheets",
        "euler_characteristic",
        "components",
        "total_genus",
    ]);
    for c in coverings_of(cli, &k)? {
        t.push(vec![
            c.to_string().into(),
            c.d().into(),
            c.euler_characteristic().into(),
            c.num_components().into(),
            c.total_genus().into(),
        ]);
    }
    Ok(Report::table(t))
}

fn harer_zagier_cmd(cli: &Cli, check: bool) -> Res {
    let k = k_vector(cli)?;
    if k.len() != 1 || k.total() % 2 == 1 {
        return Err(CliError::Invalid("--k must be a single even perimeter 2k".into()));
    }
    let half = k.total() / 2;
    let brute = if check {
        guard(
            cli,
            gluing_work(&k),
            double_factorial_odd(MAX_GLUING_SLOTS),
            "gluing enumeration",
        )?;
        Some(gluing_census(&k, slot_cap(cli))?.by_genus())
    } else {
        None
    };
    let mut headers = vec!["genus", "count"];
    if check {
        headers.push("enumerated");
    }
    let mut t = Table::new(&headers);
    let mut violation = None;
    for g in 0..=half / 2 {
        if cli.genus.is_some_and(|want| want != g) {
            continue;
        }
        let count = harer_zagier(g, half);
        let mut row = vec![Cell::Int(count.to_string())];
        row.insert(0, g.into());
        if let Some(b) = &brute {
            let e = b.get(&g).copied().unwrap_or(0);
            if count != e.into() {
                violation = Some(format!("genus {g}: formula {count}, enumeration {e}"));
            }
            row.push(e.into());
        }
        t.push(row);
    }
    Ok(Report {
        table: t,
        message: None,
        violation,
    })
}

fn trace_check(cli: &Cli, modified: bool) -> Res {
    let n = need(cli.n, "--n")?;
    let k = k_vector(cli)?;
    let s = k.len();
    let work: f64 = k
        .as_slice()
        .iter()
        .enumerate()
        .map(|(r, &kr)| {
            let choices = if modified {
                n.saturating_sub(s)
            } else {
                n.saturating_sub(r + 1)
            };
            (choices as f64).powi(kr as i32)
        })
        .product();
    guard(cli, work, 1e9, "transposition words")?;
    let direct = jm_trace_direct(n, &k, modified)?;
    let mut t = Table::new(&["n", "k", "direct", "partition", "status"]);
    if modified {
        // the partition sum evaluates the unmodified trace only
        t.push(vec![
            n.into(),
            k.to_string().into(),
            direct.into(),
            Cell::Empty,
            "direct-only".into(),
        ]);
        return Ok(Report {
            table: t,
            message: Some(format!("direct={direct}")),
            violation: None,
        });
    }
    let part = jm_trace_via_partitions(n, &k)?;
    let ok = num_bigint::BigInt::from(direct) == part;
    let status = if ok { "OK" } else { "MISMATCH" };
    t.push(vec![
        n.into(),
        k.to_string().into(),
        direct.into(),
        Cell::Int(part.to_string()),
        status.into(),
    ]);
    Ok(Report {
        table: t,
        message: Some(format!("direct={direct} partition={part} {status}")),
        violation: (!ok).then(|| format!("n={n} k={k}: direct {direct} vs partition {part}")),
    })
}

fn compositions(total: u32, s: usize) -> Vec<Vec<u32>> {
    if s == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    (1..total)
        .flat_map(|first| {
            compositions(total - first, s - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn psi_roundtrip(cli: &Cli) -> Res {
    let k = k_vector(cli)?;
    let s = k.len();
    let total = k.total() as u32;
    guard(
        cli,
        gluing_work(&k),
        double_factorial_odd(MAX_GLUING_SLOTS),
        "gluing enumeration",
    )?;
    guard(cli, total as f64, MAX_COVERING_LETTERS as f64, "covering word length")?;
    let mut problems = Vec::new();
    let mut round_trip_ok = true;
    let mut round_trips = 0u64;
    let mut images: BTreeSet<PolygonGluing> = BTreeSet::new();
    for size in 1..=total {
        for kv in compositions(size, s) {
            let kv = ExponentVector::new(kv)?;
            for c in coverings_of(cli, &kv)?.into_iter().filter(|c| c.is_connected()) {
                let m = collapse_psi(&c)?;
                if kv == k {
                    round_trips += 1;
                    match reconstruct_covering(&m) {
                        Ok(back) if back == c => {}
                        Ok(back) => {
                            round_trip_ok = false;
                            problems.push(format!("{c} -> {m} -> {back}"));
                        }
                        Err(e) => {
                            round_trip_ok = false;
                            problems.push(format!("{c} -> {m}: {e}"));
                        }
                    }
                }
                if m.k() == &k {
                    images.insert(m);
                }
            }
        }
    }
    let in_img: BTreeSet<PolygonGluing> = enumerate_gluings(&k)
        .filter(|m| m.is_connected() && in_image(m))
        .collect();
    for m in &in_img {
        match reconstruct_covering(m).and_then(|c| collapse_psi(&c)) {
            Ok(back) if &back == m => {}
            _ => {
                round_trip_ok = false;
                problems.push(format!("collapse(reconstruct({m})) differs"));
            }
        }
    }
    let exact = in_img == images;
    if !exact {
        problems.push(format!(
            "{} in-image maps vs {} collapse images",
            in_img.len(),
            images.len()
        ));
    }
    let mut t = Table::new(&[
        "k",
        "coverings",
        "in_image_maps",
        "collapse_images",
        "round_trip",
        "image_exact",
    ]);
    t.push(vec![
        k.to_string().into(),
        round_trips.into(),
        in_img.len().into(),
        images.len().into(),
        round_trip_ok.into(),
        exact.into(),
    ]);
    Ok(Report {
        table: t,
        message: None,
        violation: problems.first().cloned(),
    })
}

fn kontsevich_eval(cli: &Cli) -> Res {
    let g = need(cli.genus, "--genus")?;
    let s = cli.s.unwrap_or(1);
    let z = xi_list(cli, &vec![1.0; s])?;
    if z.len() != s {
        return Err(CliError::Invalid(format!("--xi needs {s} values, got {}", z.len())));
    }
    let value = kontsevich_sum(g, s, &z)?;
    let zs: Vec<String> = z.iter().map(|&x| crate::output::fmt_float(x)).collect();
    let mut t = Table::new(&["genus", "s", "z", "value"]);
    t.push(vec![g.into(), s.into(), zs.join(";").into(), value.into()]);
    Ok(Report::table(t))
}

fn cov31_series(cli: &Cli) -> Res {
    let n = cli.n.unwrap_or(20);
    guard(cli, n as f64, 2000.0, "series length")?;
    let mut t = Table::new(&["k", "coefficient"]);
    for k in 0..=n {
        t.push(vec![k.into(), Cell::Int(cov31_coefficient(k).to_string())]);
    }
    Ok(Report::table(t))
}

fn sample_plancherel(cli: &Cli) -> Res {
    let n = need(cli.n, "--n")?;
    let seed = seed(cli)?;
    let reps = cli.reps.unwrap_or(1);
    let xi = xi_list(cli, &[])?;
    guard(cli, n as f64 * (n as f64).sqrt() * reps as f64, 1e11, "RSK insertions")?;
    let mut headers: Vec<String> = ["rep", "lambda_1", "x_1", "sqrt_n_delta_1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    headers.extend(xi.iter().map(|x| format!("xhat_{}", crate::output::fmt_float(*x))));
    let rows = replicate(seed, reps, |rng, rep| {
        let lambda = sample_rsk_with(n, rng);
        let x = scaled_rows(&lambda);
        let mut row: Vec<Cell> = vec![
            rep.into(),
            (lambda.part(1) as u64).into(),
            x.first().copied().unwrap_or(f64::NAN).into(),
            ((n as f64).sqrt() * decay_rate_first_f64(&lambda)).into(),
        ];
        row.extend(xi.iter().map(|&v| Cell::Float(x.iter().map(|p| (v * p).exp()).sum())));
        row
    });
    let mut t = Table {
        headers,
        rows: Vec::new(),
    };
    for r in rows {
        t.push(r);
    }
    Ok(Report::table(t))
}

fn sample_gue(cli: &Cli, model: mapcov::GueModel) -> Res {
    let n = need(cli.n, "--n")?;
    if n == 0 {
        return Err(CliError::Invalid("--n must be positive".into()));
    }
    let seed = seed(cli)?;
    let reps = cli.reps.unwrap_or(1);
    let xi = xi_list(cli, &[])?;
    let per = match model {
        mapcov::GueModel::Dense => (n as f64).powi(3),
        mapcov::GueModel::Tridiagonal => (n as f64).powi(2),
    };
    guard(cli, per * reps as f64, 1e12, "eigenvalue work")?;
    let mut headers: Vec<String> = ["rep", "y_1"].iter().map(|s| s.to_string()).collect();
    headers.extend(xi.iter().map(|x| format!("yhat_{}", crate::output::fmt_float(*x))));
    let rows = replicate(seed, reps, |rng, rep| -> Result<Vec<Cell>, mapcov::Error> {
        let y = scale_gue(&gue_eigenvalues(n, model, rng)?, n);
        let top = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut row: Vec<Cell> = vec![rep.into(), top.into()];
        row.extend(xi.iter().map(|&v| Cell::Float(y.iter().map(|p| (v * p).exp()).sum())));
        Ok(row)
    });
    let mut t = Table {
        headers,
        rows: Vec::new(),
    };
    for r in rows {
        t.push(r?);
    }
    Ok(Report::table(t))
}

fn identities() -> Res {
    let mut t = Table::new(&["identity", "params", "computed", "expected", "rel_error", "pass"]);
    let mut violation = None;
    for c in quadrature_identities() {
        let params: Vec<String> = c.params.iter().map(|&p| crate::output::fmt_float(p)).collect();
        if !c.pass && violation.is_none() {
            violation = Some(format!("{} {:?}: relative error {:e}", c.name, c.params, c.rel_error));
        }
        t.push(vec![
            c.name.into(),
            params.join(";").into(),
            c.computed.into(),
            c.expected.into(),
            c.rel_error.into(),
            c.pass.into(),
        ]);
    }
    Ok(Report {
        table: t,
        message: None,
        violation,
    })
}

fn edge_compare(cli: &Cli, n_gue: usize, model: mapcov::GueModel) -> Res {
    let seed = seed(cli)?;
    let config = EdgeMomentConfig {
        n_plancherel: cli.n.unwrap_or(10_000),
        n_gue,
        reps: cli.reps.unwrap_or(200),
        xi: xi_list(cli, &[1.0])?,
        s: cli.s.unwrap_or(1),
        seed,
        gue_model: model,
        skip_reference: false,
    };
    let np = config.n_plancherel as f64;
    let gue_work = match model {
        mapcov::GueModel::Dense => (n_gue as f64).powi(3),
        mapcov::GueModel::Tridiagonal => (n_gue as f64).powi(2),
    };
    guard(
        cli,
        (np * np.sqrt() + gue_work) * config.reps as f64,
        1e11,
        "sampling work",
    )?;
    let report = edge_moment_experiment(&config)?;
    let mut t = Table::new(&[
        "xi",
        "plancherel",
        "plancherel_stderr",
        "gue",
        "gue_stderr",
        "reference",
        "g_assembly",
        "closed_form",
        "printed_form",
    ]);
    for row in report.rows {
        let xs: Vec<String> = row.xi.iter().map(|&x| crate::output::fmt_float(x)).collect();
        let (closed, printed) = match row.xi.as_slice() {
            [x] => match rho_laplace(*x, &QuadratureSpec::default()) {
                Ok(r) => (Some(r.closed_form), Some(r.printed_form)),
                Err(_) => (None, None),
            },
            _ => (None, None),
        };
        t.push(vec![
            xs.join(";").into(),
            row.plancherel_mean.into(),
            row.plancherel_stderr.into(),
            row.gue_mean.into(),
            row.gue_stderr.into(),
            row.reference.into(),
            row.g_assembly.into(),
            closed.into(),
            printed.into(),
        ]);
    }
    Ok(Report::table(t))
}

fn limit_shape_cmd(cli: &Cli, grid: usize) -> Res {
    let n = need(cli.n, "--n")?;
    let seed = seed(cli)?;
    if grid < 2 {
        return Err(CliError::Invalid("--grid must be at least 2".into()));
    }
    guard(cli, n as f64 * (n as f64).sqrt(), 1e11, "RSK insertions")?;
    let lambda = sample_rsk_with(n, &mut rng::stream(seed, 0));
    let profile = rotated_profile(&lambda);
    let mut t = Table::new(&["x", "profile", "limit"]);
    for i in 0..grid {
        let x = -2.5 + 5.0 * i as f64 / (grid - 1) as f64;
        t.push(vec![x.into(), profile.eval(x).into(), limit_shape(x).into()]);
    }
    Ok(Report::table(t))
}
