use std::fs;

use confblocks::blocks::{
    build_decorated_p, build_q, build_qw, cb_dim_generic, cb_dim_sl2, check_p_asymptotics, enumerate_sign_words,
    enumerate_u_families, pascal_table, remark42_check, schur_s, LimitMode,
};
use confblocks::exact::{parse_y_polynomial, rank_over_rationals};
use confblocks::kz::{remark52_check, solve_kz_exponents, verify_kz, CasimirKind};
use confblocks::localization::{
    build_p, build_p_concise, check_flag_vanishing, check_lagrange, flag_threshold, random_symmetric_poly, seeded_rng,
};
use confblocks::operators::{conformal_block_membership, Weight};
use confblocks::{Error, Partition, Rational, Result, Ring, YPolynomial, ZAssignment, ZPolynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::acceptance;
use crate::args::{
    AsymCommand, AsymMode, BasisKind, Casimir, CbCommand, Cli, Command, DimMethod, IdentityCommand, KzCommand,
    PzCommand, ZArg, ZValues,
};
use crate::report::RunReport;

/// Runs the parsed command. Domain errors end up as failed results.
pub fn dispatch(cli: &Cli) -> RunReport {
    let mut rng = seeded_rng(cli.seed);
    let mut report = RunReport::new(command_name(&cli.command), cli.seed);
    let outcome = match &cli.command {
        Command::Pz(PzCommand::Build { lambda, z, symbolic }) => pz_build(&mut report, &mut rng, lambda, z, *symbolic),
        Command::Cb(CbCommand::Verify { lambda, level, z, input }) => {
            cb_verify(&mut report, &mut rng, lambda, *level, z, input.as_deref())
        }
        Command::Cb(CbCommand::Dim { lambda, level, method, z }) => cb_dim(&mut report, &mut rng, lambda, *level, *method, z),
        Command::Cb(CbCommand::Basis { lambda, level, kind, z, schur }) => {
            cb_basis(&mut report, &mut rng, lambda, *level, *kind, z, schur)
        }
        Command::Cb(CbCommand::Ltable { level, max_size }) => {
            cb_ltable(&mut report, *level, *max_size);
            Ok(())
        }
        Command::Kz(KzCommand::Check { m, n, casimir, z }) => kz_check(&mut report, &mut rng, *m, *n, *casimir, z),
        Command::Identity(IdentityCommand::Lagrange { fuzz }) => {
            identity_lagrange(&mut report, &mut rng, *fuzz);
            Ok(())
        }
        Command::Identity(IdentityCommand::Flag { fuzz, lambda }) => {
            identity_flag(&mut report, &mut rng, *fuzz, lambda.as_ref())
        }
        Command::Identity(IdentityCommand::Concise { lambda }) => identity_concise(&mut report, lambda.as_ref()),
        Command::Identity(IdentityCommand::Remark52 { m, n }) => {
            report.input("m", m);
            report.input("n", n);
            let r = remark52_check(*m, *n);
            report.check("identity", r.is_ok(), r.err().map(|e| e.to_string()).unwrap_or_default());
            Ok(())
        }
        Command::Asym(AsymCommand::Check { lambda, mode }) => asym_check(&mut report, &mut rng, lambda, *mode),
        Command::Accept(args) => {
            report.input("only", args.only.join(","));
            for r in acceptance::run(cli.seed, &args.only) {
                report.check(&r.label(), r.passed, r.detail.clone());
                if r.passed {
                    report.results.last_mut().expect("just pushed").detail = Some(r.detail);
                }
            }
            Ok(())
        }
    };
    if let Err(e) = outcome {
        report.fail("error", e.to_string());
    }
    report
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Pz(_) => "pz build",
        Command::Cb(CbCommand::Verify { .. }) => "cb verify",
        Command::Cb(CbCommand::Dim { .. }) => "cb dim",
        Command::Cb(CbCommand::Basis { .. }) => "cb basis",
        Command::Cb(CbCommand::Ltable { .. }) => "cb ltable",
        Command::Kz(_) => "kz check",
        Command::Identity(IdentityCommand::Lagrange { .. }) => "identity lagrange",
        Command::Identity(IdentityCommand::Flag { .. }) => "identity flag",
        Command::Identity(IdentityCommand::Concise { .. }) => "identity concise",
        Command::Identity(IdentityCommand::Remark52 { .. }) => "identity remark52",
        Command::Asym(_) => "asym check",
        Command::Accept(_) => "accept",
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parts_text(lambda: &Partition) -> String {
    lambda.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// The given `z`, or `n` seeded random values; echoed into the inputs.
fn resolve_z(report: &mut RunReport, rng: &mut ChaCha8Rng, z: &ZArg, n: usize) -> Result<ZAssignment> {
    let z = match &z.z {
        Some(ZValues(values)) if values.len() < n => return Err(Error::MissingZ(values.len() + 1)),
        Some(ZValues(values)) => ZAssignment::new(values.clone())?,
        None => ZAssignment::random(n, rng),
    };
    report.input("z", join(z.values()));
    Ok(z)
}

fn pz_build(report: &mut RunReport, rng: &mut ChaCha8Rng, lambda: &Partition, z: &ZArg, symbolic: bool) -> Result<()> {
    report.input("lambda", parts_text(lambda));
    let sum = build_p(lambda);
    report.summarize("terms", sum.len());
    if symbolic {
        report.certificate("P", sum.to_symbolic());
    } else {
        let z = resolve_z(report, rng, z, lambda.size())?;
        let p = sum.evaluate(&z)?;
        report.check("nonzero", !p.is_zero(), "P_z vanishes at this z");
        report.certificate("P", p);
    }
    Ok(())
}

fn weight_value(w: &Weight) -> Value {
    match w {
        Weight::Pure(v) => json!(v),
        Weight::Mixed => json!("mixed"),
    }
}

fn cb_verify(
    report: &mut RunReport,
    rng: &mut ChaCha8Rng,
    lambda: &Partition,
    level: Option<usize>,
    z: &ZArg,
    input: Option<&std::path::Path>,
) -> Result<()> {
    let level = level.unwrap_or(lambda.spread().max(1));
    report.input("lambda", parts_text(lambda));
    report.input("level", level);
    let z = resolve_z(report, rng, z, lambda.size())?;
    let p: YPolynomial<Rational> = match input {
        Some(path) => {
            report.input("input", path.display());
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_y_polynomial(&text)?
        }
        None => build_p(lambda).evaluate(&z)?,
    };
    let m = conformal_block_membership(&p, lambda, level, &z)?;
    report.summarize("singular", m.singular);
    report.summarize("weight", weight_value(&m.weight));
    report.summarize("cb_member", m.cb_member);
    report.summarize("failing_operator", m.failing_operator.clone().map_or(Value::Null, Value::from));
    report.check("singular", m.singular, m.failing_operator.clone().unwrap_or_default());
    report.check("cb_member", m.cb_member, m.failing_operator.unwrap_or_default());
    Ok(())
}

fn cb_dim(
    report: &mut RunReport,
    rng: &mut ChaCha8Rng,
    lambda: &Partition,
    level: usize,
    method: DimMethod,
    z: &ZArg,
) -> Result<()> {
    report.input("lambda", parts_text(lambda));
    report.input("level", level);
    let dim = match method {
        DimMethod::Recursion => {
            report.input("method", "recursion");
            cb_dim_sl2(lambda, level)?
        }
        DimMethod::Rank => {
            report.input("method", "rank");
            let z = resolve_z(report, rng, z, lambda.size())?;
            cb_dim_generic(lambda, level, &z)?
        }
    };
    report.summarize("value", dim);
    report.value("dim", dim);
    Ok(())
}

fn cb_basis(
    report: &mut RunReport,
    rng: &mut ChaCha8Rng,
    lambda: &Partition,
    level: usize,
    kind: BasisKind,
    z: &ZArg,
    schur: &str,
) -> Result<()> {
    report.input("lambda", parts_text(lambda));
    report.input("level", level);
    let z = resolve_z(report, rng, z, lambda.size())?;
    let named: Vec<(String, YPolynomial<Rational>)> = match kind {
        BasisKind::Qu => {
            report.input("kind", "qu");
            enumerate_u_families(lambda, level)?
                .par_iter()
                .map(|u| Ok((format!("Q {u}"), build_q(u)?.evaluate(&z)?)))
                .collect::<Result<_>>()?
        }
        BasisKind::Qw => {
            report.input("kind", "qw");
            enumerate_sign_words(lambda, level)?
                .par_iter()
                .map(|w| Ok((format!("Q_w {w}"), build_qw(w, lambda, level)?.evaluate(&z)?)))
                .collect::<Result<_>>()?
        }
        BasisKind::Decorated => {
            report.input("kind", "decorated");
            report.input("schur", schur);
            let k = lambda.part(1);
            schur
                .split(';')
                .map(|mu| {
                    let mu: Partition = mu.parse()?;
                    let h = schur_s(k, &mu);
                    Ok((format!("P[s{mu}]"), build_decorated_p(lambda, &h)?.evaluate(&z)?))
                })
                .collect::<Result<_>>()?
        }
    };
    let members = named
        .par_iter()
        .map(|(_, p)| Ok(conformal_block_membership(p, lambda, level, &z)?.cb_member))
        .collect::<Result<Vec<bool>>>()?;
    let polys: Vec<_> = named.iter().map(|(_, p)| p.clone()).collect();
    let rank = rank_over_rationals(&polys);
    let dim = cb_dim_generic(lambda, level, &z)?;
    report.summarize("count", named.len());
    report.summarize("rank", rank);
    report.summarize("cb_dim", dim);
    let outside: Vec<&str> = named
        .iter()
        .zip(&members)
        .filter(|(_, &m)| !m)
        .map(|((n, _), _)| n.as_str())
        .collect();
    report.check("members", outside.is_empty(), format!("not in the block: {}", outside.join(", ")));
    if kind == BasisKind::Decorated {
        report.value("rank", rank);
    } else {
        report.check("spans", rank == dim, format!("rank {rank}, dimension {dim}"));
    }
    for (name, p) in named {
        report.certificate(name, p);
    }
    Ok(())
}

fn cb_ltable(report: &mut RunReport, level: usize, max_size: usize) {
    report.input("level", level);
    report.input("max_size", max_size);
    let mut rows = Vec::new();
    for (n, row) in pascal_table(level, max_size).into_iter().enumerate() {
        let text: Vec<String> = row.iter().map(|(l, v)| format!("{l}={v}")).collect();
        report.value(&format!("size {n}"), text.join(" "));
        rows.push(row.iter().map(|(l, v)| json!({"lambda": parts_text(l), "dim": v})).collect::<Vec<_>>());
    }
    report.summarize("rows", rows);
}

fn kz_check(
    report: &mut RunReport,
    rng: &mut ChaCha8Rng,
    m: usize,
    n_per: usize,
    casimir: Casimir,
    z: &ZArg,
) -> Result<()> {
    let kind = match casimir {
        Casimir::Gl => CasimirKind::Gl,
        Casimir::Sl => CasimirKind::Sl,
    };
    report.input("m", m);
    report.input("n", n_per);
    report.input("casimir", kind);
    let size = m * n_per;
    let first = resolve_z(report, rng, z, size)?;
    let mut points = vec![first.clone()];
    while points.len() < size.saturating_sub(1).max(1) {
        points.push(ZAssignment::random(size, rng));
    }
    let a = solve_kz_exponents(m, n_per, 1, &points, kind)?;
    let expected = kind.expected_exponent(m);
    let uniform = a.iter().all(|x| *x == a[0]);
    report.summarize(
        "a_ij",
        if uniform {
            json!(a[0].to_string())
        } else {
            json!(a.iter().map(ToString::to_string).collect::<Vec<_>>())
        },
    );
    report.check(
        "a_ij",
        uniform && a[0] == expected,
        format!("solved {}, expected {expected}", join(&a)),
    );
    let v = verify_kz(m, n_per, &first, kind)?;
    report.summarize("verified", v.verified);
    report.summarize("residual", v.residual.as_ref().map_or(Value::Null, |(_, r)| json!(r.to_string())));
    match v.residual {
        None => report.pass("verified", None),
        Some((i, r)) => {
            report.fail("verified", format!("equation {i} fails"));
            report.certificate(format!("residual {i}"), r);
        }
    }
    Ok(())
}

fn identity_lagrange(report: &mut RunReport, rng: &mut ChaCha8Rng, fuzz: usize) {
    report.input("fuzz", fuzz);
    tally(report, fuzz, lagrange_failures(rng, fuzz));
}

/// `fuzz` random two-block sums with `deg p + deg q < k(n - k)`; returns
/// a description of every one that does not vanish.
pub fn lagrange_failures(rng: &mut ChaCha8Rng, fuzz: usize) -> Vec<String> {
    let cases: Vec<_> = (0..fuzz)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            let k = rng.gen_range(1..n);
            let bound = (k * (n - k)) as u32;
            let dp = rng.gen_range(0..bound);
            let dq = rng.gen_range(0..bound - dp);
            (k, n, random_symmetric_poly(k, dp, rng), random_symmetric_poly(n - k, dq, rng))
        })
        .collect();
    cases
        .par_iter()
        .filter_map(|(k, n, p, q)| match check_lagrange(*k, *n, p, q) {
            Ok(s) if s.is_zero() => None,
            Ok(s) => Some(format!("k={k} n={n} p={p} q={q}: sum {s}")),
            Err(e) => Some(format!("k={k} n={n} p={p} q={q}: {e}")),
        })
        .collect()
}

fn tally(report: &mut RunReport, total: usize, failures: Vec<String>) {
    report.summarize("pass", total - failures.len());
    report.summarize("fail", failures.len());
    report.summarize("counterexamples", failures.clone());
    report.check("vanishes", failures.is_empty(), failures.join("; "));
}

/// Partitions with at least two blocks and a positive threshold, `|λ| ≤ 5`.
pub fn flag_partitions() -> Vec<Partition> {
    (2..=5)
        .flat_map(|m| (2..=5).flat_map(move |size| Partition::all(m, size)))
        .filter(|l| flag_threshold(l.parts()) > 0)
        .collect()
}

/// Random symmetric block polynomials of total degree exactly `degree`.
pub fn random_flag_polys(lambda: &Partition, degree: usize, rng: &mut ChaCha8Rng) -> Vec<ZPolynomial> {
    let blocks: Vec<usize> = (0..lambda.len()).filter(|&j| lambda.parts()[j] > 0).collect();
    let mut degrees = vec![0u32; lambda.len()];
    for _ in 0..degree {
        degrees[blocks[rng.gen_range(0..blocks.len())]] += 1;
    }
    lambda
        .parts()
        .iter()
        .zip(degrees)
        .map(|(&k, d)| random_symmetric_poly(k, d, rng))
        .collect()
}

fn identity_flag(report: &mut RunReport, rng: &mut ChaCha8Rng, fuzz: usize, lambda: Option<&Partition>) -> Result<()> {
    report.input("fuzz", fuzz);
    let pool = match lambda {
        Some(l) => {
            report.input("lambda", parts_text(l));
            if flag_threshold(l.parts()) == 0 {
                return Err(Error::InvalidPartition(format!("{l} has threshold 0")));
            }
            vec![l.clone()]
        }
        None => flag_partitions(),
    };
    let cases: Vec<_> = (0..fuzz)
        .map(|_| {
            let l = pool[rng.gen_range(0..pool.len())].clone();
            let degree = rng.gen_range(0..flag_threshold(l.parts()));
            let polys = random_flag_polys(&l, degree, rng);
            (l, polys)
        })
        .collect();
    let failures = flag_failures(&cases);
    tally(report, fuzz, failures);
    Ok(())
}

/// Every flag sum among `cases` that does not vanish.
pub fn flag_failures(cases: &[(Partition, Vec<ZPolynomial>)]) -> Vec<String> {
    cases
        .par_iter()
        .filter_map(|(l, polys)| {
            let shown = polys.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ");
            match check_flag_vanishing(l, polys) {
                Ok(s) if s.is_zero() => None,
                Ok(s) => Some(format!("{l} [{shown}]: sum {s}")),
                Err(e) => Some(format!("{l} [{shown}]: {e}")),
            }
        })
        .collect()
}

/// Partitions among `pool` whose divided-difference form differs from
/// the localization sum.
pub fn concise_failures(pool: &[Partition]) -> Vec<String> {
    pool.par_iter()
        .filter(|l| build_p_concise(l) != build_p(l).to_symbolic())
        .map(ToString::to_string)
        .collect()
}

/// Partitions with two to five parts and size at most 5.
pub fn concise_partitions() -> Vec<Partition> {
    (2..=5).flat_map(|m| (0..=5).flat_map(move |size| Partition::all(m, size))).collect()
}

fn identity_concise(report: &mut RunReport, lambda: Option<&Partition>) -> Result<()> {
    let pool = match lambda {
        Some(l) => {
            report.input("lambda", parts_text(l));
            vec![l.clone()]
        }
        None => concise_partitions(),
    };
    tally(report, pool.len(), concise_failures(&pool));
    Ok(())
}

fn asym_check(report: &mut RunReport, rng: &mut ChaCha8Rng, lambda: &Partition, mode: AsymMode) -> Result<()> {
    report.input("lambda", parts_text(lambda));
    let mode = match mode {
        AsymMode::Clustered => LimitMode::Clustered,
        AsymMode::Nested => LimitMode::Nested,
        AsymMode::Remark42 => {
            report.input("mode", "remark42");
            let n = lambda.part(1);
            if lambda.parts() != [n, n] {
                return Err(Error::InvalidPartition(format!("{lambda} is not of the form (N, N)")));
            }
            let sign = remark42_check(n)?;
            report.summarize("sign", sign);
            report.pass("identity", Some(format!("holds with sign {sign}")));
            return Ok(());
        }
    };
    report.input("mode", mode);
    let c = check_p_asymptotics(lambda, mode, rng)?;
    report.summarize("sign", c.sign);
    if let Some(e) = &c.exponents {
        report.summarize("exponents", e.clone());
    }
    report.pass("limit", Some(format!("limit = {} * target", c.sign)));
    report.certificate("limit", c.limit);
    report.certificate("target", c.target);
    Ok(())
}
