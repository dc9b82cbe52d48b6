//! `qaskey` — evaluate the q⁻¹-symmetric polynomial families and certify
//! their bilateral discrete/continuous orthogonality relations.
//!
//! ```text
//! qaskey eval --family hermite --n 1 --z 2 --q 0.5
//! qaskey gram --family aw --q 0.3 --params '0.2;0.3;0.4;0.45' --max-degree 2
//! qaskey cont-gram --family big-hermite --q 0.5 --params 0.3 --max-degree 3
//! qaskey qbeta --q 0.4 --params '0.2;0.3;0.4;0.5'
//! qaskey beta --params '0.1;0.2;0.3;0.4'
//! qaskey mass --q 0.5 --params '0.1;0.2;0.3;0.4'
//! qaskey suite --seed 42 --output json > report.json
//! ```
//!
//! Exit status: 0 when every check passes, 1 on any failed check, 2 on
//! invalid configuration. Complex inputs are "re,im" pairs; lists use ';'
//! as the separator. `QASKEY_MAX_TERMS` overrides the series/product term
//! cap.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qaskey_cli::report::{fmt_complex, fmt_f64, CheckRecord, Report};
use qaskey_cli::suite::run_suite;
use qaskey_core::ortho_continuous::{
    beta_integral_check, continuous_closed_norm, continuous_inner, qbeta_integral,
};
use qaskey_core::ortho_discrete::{gram, total_mass, DiscreteOrthoSpec};
use qaskey_core::polys::eval_poly;
use qaskey_core::{Family, FamilyKind, ParamMultiset, QContext, Rep, ZPoint};

#[derive(Parser)]
#[command(
    name = "qaskey",
    version,
    about = "q^{-1}-symmetric families: evaluation and orthogonality verification"
)]
struct Cli {
    /// Report rendering
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// q^{-1}-Askey-Wilson (4 parameters)
    #[value(alias = "askey-wilson")]
    Aw,
    /// continuous dual q^{-1}-Hahn (3 parameters)
    #[value(alias = "dh")]
    DualHahn,
    /// q^{-1}-Al-Salam-Chihara (2 parameters)
    #[value(alias = "al-salam-chihara")]
    Asc,
    /// continuous big q^{-1}-Hermite (1 parameter)
    #[value(alias = "bigh")]
    BigHermite,
    /// continuous q^{-1}-Hermite (no parameters)
    #[value(alias = "h")]
    Hermite,
}

impl FamilyArg {
    fn kind(self) -> FamilyKind {
        match self {
            FamilyArg::Aw => FamilyKind::AskeyWilson,
            FamilyArg::DualHahn => FamilyKind::DualHahn,
            FamilyArg::Asc => FamilyKind::AlSalamChihara,
            FamilyArg::BigHermite => FamilyKind::BigHermite,
            FamilyArg::Hermite => FamilyKind::Hermite,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a family polynomial; reports the cross-representation
    /// defect when two representations exist
    Eval {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Base q in (0, 1), or complex "re,im" with |q| < 1
        #[arg(long)]
        q: String,
        /// Degree n >= 0
        #[arg(long)]
        n: u32,
        /// Evaluation point z (complex "re,im" allowed)
        #[arg(long)]
        z: String,
        /// Family parameters, ';'-separated, complex entries as "re,im"
        #[arg(long, default_value = "")]
        params: String,
        /// Pass/fail tolerance for the representation defect
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Discrete bilateral orthogonality: Gram matrix vs closed norms
    Gram {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        q: String,
        /// Lattice offset alpha (complex allowed)
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Largest degree N (Askey-Wilson: must satisfy |qabcd| < |q|^{2N})
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Continuous orthogonality: integral Gram matrix vs closed norms
    ContGram {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        q: String,
        /// Lattice offset alpha (positive real)
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// The q-beta integral vs its closed form
    Qbeta {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Exactly four parameters
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// The classical beta integral: quadrature, bilateral sum, closed form
    Beta {
        /// Exactly four real parameters with a+b+c+d > -1
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Tolerance for the (algebraic-tail) quadrature path
        #[arg(long, default_value_t = 1e-4)]
        quad_tol: f64,
    },
    /// Total mass of the Askey-Wilson relation: bilateral sum vs product
    Mass {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the full seeded verification battery
    Suite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Only run check groups whose name contains this substring
        #[arg(long)]
        only: Option<String>,
        /// Recorded in the report; per-check tolerances are pinned by the
        /// battery and are not overridden
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn parse_complex(s: &str) -> anyhow::Result<Complex64> {
    let s = s.trim();
    if let Some((re, im)) = s.split_once(',') {
        Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?))
    } else {
        Ok(Complex64::new(s.parse()?, 0.0))
    }
}

fn parse_params(s: &str) -> anyhow::Result<ParamMultiset> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(ParamMultiset::empty());
    }
    let entries: Vec<Complex64> = s
        .split(';')
        .map(parse_complex)
        .collect::<anyhow::Result<_>>()?;
    Ok(ParamMultiset::new(&entries)?)
}

fn parse_reals(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(';')
        .map(|t| t.trim().parse::<f64>().map_err(Into::into))
        .collect()
}

fn context(q_str: &str) -> anyhow::Result<QContext> {
    let q = parse_complex(q_str)?;
    let mut ctx = QContext::new(q)?;
    if let Ok(v) = std::env::var("QASKEY_MAX_TERMS") {
        let max_terms: u32 = v
            .parse()
            .map_err(|_| anyhow::anyhow!("QASKEY_MAX_TERMS must be an integer, got {v:?}"))?;
        ctx = ctx.with_max_terms(max_terms)?;
    }
    Ok(ctx)
}

fn family(arg: FamilyArg, params: &str) -> anyhow::Result<Family> {
    let kind = arg.kind();
    let ms = parse_params(params)?;
    if ms.len() != kind.arity() {
        anyhow::bail!(
            "{} needs {} parameters, got {} (pass --params 'a;b;...')",
            kind,
            kind.arity(),
            ms.len()
        );
    }
    Ok(Family::new(kind, ms)?)
}

fn kv(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Eval { family: fam_arg, q, n, z, params, tol } => {
            let ctx = context(q)?;
            let fam = family(*fam_arg, params)?;
            let pt = ZPoint::new(parse_complex(z)?)?;
            let value = eval_poly(&fam, *n, pt, &ctx, Rep::Canonical)?;
            let mut report = Report::new(format!("eval {}", fam.kind()), None);
            report.push(CheckRecord::new(
                format!("eval-{}-n{n}", fam.kind()),
                kv(&[("q", q.clone()), ("z", z.clone()), ("params", params.clone())]),
                fmt_complex(value),
                fmt_complex(value),
                0.0,
                *tol,
            ));
            if fam.kind().rep_count() > 1 {
                let alt = eval_poly(&fam, *n, pt, &ctx, Rep::Alternate)?;
                let defect = (alt - value).norm() / value.norm().max(f64::MIN_POSITIVE);
                report.push(CheckRecord::new(
                    "representation-agreement",
                    kv(&[("q", q.clone()), ("z", z.clone())]),
                    fmt_complex(alt),
                    fmt_complex(value),
                    defect,
                    *tol,
                ));
            }
            report
        }
        Command::Gram { family: fam_arg, q, alpha, params, max_degree, tol } => {
            let ctx = context(q)?;
            let fam = family(*fam_arg, params)?;
            let alpha = parse_complex(alpha)?;
            let spec = DiscreteOrthoSpec::new(fam.clone(), alpha, *max_degree, ctx)?;
            let g = gram(&spec);
            let mut report = Report::new(format!("gram {}", fam.kind()), None);
            for m in 0..g.size() {
                for n in 0..g.size() {
                    let computed = g.computed[m][n].map(fmt_complex).unwrap_or_default();
                    let reference = if m == n {
                        g.closed_form_diag[n].map(fmt_complex).unwrap_or_default()
                    } else {
                        "0,0".into()
                    };
                    report.push(CheckRecord::new(
                        format!("entry-{m}-{n}"),
                        BTreeMap::new(),
                        computed,
                        reference,
                        g.defect[m][n],
                        *tol,
                    ));
                }
            }
            for f in &g.failures {
                report.push(CheckRecord::new(
                    format!("failure-{}-{}", f.m, f.n),
                    BTreeMap::new(),
                    format!("error: {}", f.error),
                    String::new(),
                    f64::INFINITY,
                    *tol,
                ));
            }
            report
        }
        Command::ContGram { family: fam_arg, q, alpha, params, max_degree, tol } => {
            let ctx = context(q)?;
            let fam = family(*fam_arg, params)?;
            let mut report = Report::new(format!("cont-gram {}", fam.kind()), None);
            let norms: Vec<Complex64> = (0..=*max_degree)
                .map(|n| continuous_closed_norm(&fam, *alpha, n, &ctx))
                .collect::<Result<_, _>>()?;
            for m in 0..=*max_degree {
                for n in 0..=*max_degree {
                    let v = continuous_inner(&fam, *alpha, m, n, &ctx)?;
                    let (reference, defect) = if m == n {
                        (norms[n], (v - norms[n]).norm() / norms[n].norm())
                    } else {
                        let scale = (norms[m].norm() * norms[n].norm()).sqrt();
                        (Complex64::new(0.0, 0.0), v.norm() / scale)
                    };
                    report.push(CheckRecord::new(
                        format!("entry-{m}-{n}"),
                        BTreeMap::new(),
                        fmt_complex(v),
                        fmt_complex(reference),
                        defect,
                        *tol,
                    ));
                }
            }
            report
        }
        Command::Qbeta { q, alpha, params, tol } => {
            let ctx = context(q)?;
            let ms = parse_params(params)?;
            let (quad, closed) = qbeta_integral(*alpha, &ms, &ctx)?;
            let mut report = Report::new("qbeta", None);
            report.push(CheckRecord::new(
                "qbeta-integral",
                kv(&[("q", q.clone()), ("alpha", fmt_f64(*alpha)), ("params", params.clone())]),
                fmt_complex(quad),
                fmt_complex(closed),
                (quad - closed).norm() / closed.norm(),
                *tol,
            ));
            report
        }
        Command::Beta { params, tol, quad_tol } => {
            let p = parse_reals(params)?;
            if p.len() != 4 {
                anyhow::bail!("beta needs exactly 4 real parameters");
            }
            let r = beta_integral_check(p[0], p[1], p[2], p[3])?;
            let mut report = Report::new("beta", None);
            report.push(CheckRecord::new(
                "beta-dougall-vs-closed",
                kv(&[("params", params.clone())]),
                fmt_f64(r.dougall),
                fmt_f64(r.closed),
                (r.dougall - r.closed).abs() / r.closed.abs(),
                *tol,
            ));
            report.push(CheckRecord::new(
                "beta-quadrature-vs-closed",
                kv(&[("params", params.clone())]),
                fmt_f64(r.quadrature),
                fmt_f64(r.closed),
                (r.quadrature - r.closed).abs() / r.closed.abs(),
                *quad_tol,
            ));
            report
        }
        Command::Mass { q, alpha, params, tol } => {
            let ctx = context(q)?;
            let ms = parse_params(params)?;
            let alpha = parse_complex(alpha)?;
            let (direct, closed) = total_mass(&ms, alpha, &ctx)?;
            let mut report = Report::new("mass", None);
            report.push(CheckRecord::new(
                "total-mass",
                kv(&[("q", q.clone()), ("params", params.clone())]),
                fmt_complex(direct),
                fmt_complex(closed),
                (direct - closed).norm() / closed.norm(),
                *tol,
            ));
            report
        }
        Command::Suite { seed, only, tol } => {
            let config = match (only, tol) {
                (Some(o), Some(t)) => format!("suite --seed {seed} --only {o} --tol {t}"),
                (Some(o), None) => format!("suite --seed {seed} --only {o}"),
                (None, Some(t)) => format!("suite --seed {seed} --tol {t}"),
                (None, None) => format!("suite --seed {seed}"),
            };
            run_suite(*seed, only.as_deref(), &config)
        }
    };
    if report.wall_time.is_zero() {
        report.wall_time = start.elapsed();
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Human => print!("{}", report.to_human()),
                Output::Json => print!("{}", report.to_json()),
                Output::Csv => print!("{}", report.to_csv()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("qaskey: {e}");
            ExitCode::from(2)
        }
    }
}
