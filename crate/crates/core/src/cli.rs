//! Command-line front end.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Factored, QMonomial};
use crate::localfactors::{PointRecord, PsiOrder, RepRecord, TorusPoint, UnramifiedWDRep};
use crate::plancherel::{
    formal_degree, gamma_adjoint_two_routes, gamma_direct, hecke_formal_degree, is_residual, mu_value, q_to_one_limit_check,
    regularized_mu, residual_search, to_latex, GroupContext, MuOutcome, MuSpec, Prefactor, Record, SSharp, SearchBounds,
};
use crate::rootdata::{fundamental_group_invariants, omega_index_ratio, order_polynomial, GroupSpec, DEFAULT_WEYL_BOUND};
use crate::verify::{run as run_suite, Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "hecke-gamma", version, about = "Adjoint gamma factors, Plancherel densities and formal degrees of unramified groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Also evaluate exact values numerically at this q.
    #[arg(long, global = true)]
    pub q0: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct GroupArg {
    /// Group spec file (JSON) or a built-in name such as PGL2 or SU3.
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, clap::Args)]
pub struct PsiArg {
    /// Conductor exponent of the additive character.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub psi: i64,
}

#[derive(Debug, clap::Args)]
pub struct BoundsArg {
    #[arg(long = "bound-B", default_value_t = 3)]
    pub bound_b: i64,
    #[arg(long = "bound-D", default_value_t = 6)]
    pub bound_d: i64,
}

impl BoundsArg {
    fn bounds(&self) -> SearchBounds {
        SearchBounds { b: self.bound_b, d: self.bound_d }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, coroots and twist of a group.
    Rootdata(GroupArg),
    /// Classes of the restricted root system of the dual group.
    Restricted(GroupArg),
    /// Twist-invariant fundamental group.
    Omega(GroupArg),
    /// Order of the finite group of Lie type as a polynomial in q.
    Orderpoly(GroupArg),
    /// Residual points on the search grid, up to the twisted Weyl group.
    Residual {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        bounds: BoundsArg,
    },
    /// gamma(0) of a representation file, or of the adjoint parameter at a point.
    Gamma {
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// Point file (JSON), or `principal` / `identity`.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        psi: PsiArg,
    },
    /// The mu-function at a point.
    Mu {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        point: String,
        /// Comma-separated simple-orbit indices spanning the Levi.
        #[arg(long, default_value = "")]
        levi: String,
        /// `levi`, `plancherel`, `none`, or `monomial:TURNS:QEXP`.
        #[arg(long, default_value = "levi")]
        prefactor: String,
        /// Omit vanishing factors.
        #[arg(long)]
        regularized: bool,
        /// Check that the value tends to 1 as q -> 1.
        #[arg(long)]
        q_to_one: bool,
    },
    /// Formal degree at a residual point.
    Fdeg {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        dim_rho: u64,
        /// A positive integer or `principal`.
        #[arg(long, default_value = "principal")]
        s_sharp: String,
        /// Rational constant of the Hecke-algebra route.
        #[arg(long, default_value = "1")]
        d_h: String,
        #[command(flatten)]
        psi: PsiArg,
    },
    /// Run a verification suite.
    Verify {
        /// propA1, thmA2, lemA3, lemA5, ratios, residual-discrete, qlimit or fdeg.
        suite: String,
        /// Restrict to one group (spec file or built-in name).
        #[arg(long)]
        spec: Option<String>,
        /// `builtin` or a comma-separated list of built-in names.
        #[arg(long)]
        groups: Option<String>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[command(flatten)]
        bounds: BoundsArg,
        #[command(flatten)]
        psi: PsiArg,
    },
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::MalformedType(_)
        | Error::InvalidLattice(_)
        | Error::NotDiagramAutomorphism(_)
        | Error::UnsupportedTwist(_)
        | Error::BoundExceeded(_)
        | Error::WeylBound(_)
        | Error::OutOfScope(_) => 2,
        _ => 3,
    }
}

/// One labelled output value.
struct Entry {
    key: String,
    text: String,
    exact: Option<Factored>,
}

enum Output {
    Values(Vec<Entry>),
    Table { headers: Vec<String>, rows: Vec<Vec<String>> },
    Records { records: Vec<Record>, summary: String },
}

fn entry(key: &str, text: impl ToString) -> Entry {
    Entry { key: key.into(), text: text.to_string(), exact: None }
}

fn exact(key: &str, v: &Factored) -> Entry {
    Entry { key: key.into(), text: v.to_string(), exact: Some(v.clone()) }
}

fn load_spec(s: &str) -> Result<(String, GroupSpec)> {
    let p = Path::new(s);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        let name = p.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_else(|| s.into());
        return Ok((name, spec));
    }
    GroupSpec::builtin(s)
        .map(|g| (s.to_string(), g))
        .ok_or_else(|| Error::InvalidInput(format!("{s}: no such file and not a built-in group ({})", GroupSpec::BUILTIN_NAMES.join(", "))))
}

fn load_group(s: &str) -> Result<GroupContext> {
    let (name, spec) = load_spec(s)?;
    GroupContext::from_spec(&name, &spec)
}

fn load_point(group: &GroupContext, s: &str) -> Result<TorusPoint> {
    let r = match s {
        "principal" => group.principal_point(),
        "identity" => TorusPoint::identity(group.dual.rank()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
            let rec: PointRecord = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
            TorusPoint::from_record(&rec)?
        }
    };
    if r.rank() != group.dual.rank() {
        return Err(Error::InvalidInput(format!("point has rank {}, group has rank {}", r.rank(), group.dual.rank())));
    }
    if !group.is_theta_fixed(&r) {
        return Err(Error::NotThetaFixed);
    }
    Ok(r)
}

fn load_rep(path: &str) -> Result<UnramifiedWDRep> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    let rec: RepRecord = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    UnramifiedWDRep::from_record(&rec)
}

fn parse_prefactor(s: &str) -> Result<Prefactor> {
    match s {
        "levi" | "a33" => Ok(Prefactor::Levi),
        "plancherel" => Ok(Prefactor::Plancherel),
        "none" => Ok(Prefactor::None),
        _ => {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() == 3 && parts[0] == "monomial" {
                let t = parts[1].parse().map_err(|_| Error::InvalidInput(format!("bad turns {:?}", parts[1])))?;
                let e = parts[2].parse().map_err(|_| Error::InvalidInput(format!("bad q exponent {:?}", parts[2])))?;
                Ok(Prefactor::Monomial(QMonomial::new(t, e)))
            } else {
                Err(Error::InvalidInput(format!("unknown prefactor {s:?}")))
            }
        }
    }
}

fn parse_levi(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| Error::InvalidInput(format!("bad Levi index {part:?}")))?;
        if i >= rank {
            return Err(Error::InvalidInput(format!("Levi index {i} out of range (rank {rank})")));
        }
        out.push(i);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn gamma_entries(key: &str, v: crate::exactnum::AtUOne<Factored>) -> Entry {
    match v {
        crate::exactnum::AtUOne::Value(x) => exact(key, &x),
        crate::exactnum::AtUOne::Zero(k) => entry(key, format!("zero of order {k}")),
        crate::exactnum::AtUOne::Pole(k) => entry(key, format!("pole of order {k}")),
    }
}

fn cmd_rootdata(g: &GroupContext) -> Output {
    let d = &g.datum;
    let mut rows = Vec::new();
    for (i, r) in d.roots().iter().enumerate().take(d.num_positive()) {
        rows.push(vec![i.to_string(), format!("{:?}", r.simple), format!("{:?}", r.character), format!("{:?}", r.cocharacter)]);
    }
    let mut out = vec![
        entry("group", &g.name),
        entry("type", d.types().iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x")),
        entry("rank", d.rank()),
        entry("semisimple rank", d.semisimple_rank()),
        entry("positive roots", d.num_positive()),
        entry("dimension", d.dimension()),
        entry("twist", format!("{:?} (order {})", g.twist.permutation(), g.twist.order())),
    ];
    for row in rows {
        out.push(entry(&format!("root {}", row[0]), format!("simple {} character {} coroot {}", row[1], row[2], row[3])));
    }
    Output::Values(out)
}

fn cmd_restricted(g: &GroupContext) -> Output {
    let headers = ["class", "roots", "type", "beta", "gamma", "m+", "m-", "f"].map(String::from).to_vec();
    let fmt_r = |v: &[num_rational::Rational64]| format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    let rows = g
        .rrs
        .positive_classes()
        .map(|(i, c)| {
            vec![
                i.to_string(),
                format!("{:?}", c.members),
                format!("{:?}", c.class_type),
                fmt_r(&c.beta),
                format!("{:?}", c.gamma),
                c.m_plus.to_string(),
                c.m_minus.to_string(),
                c.f.to_string(),
            ]
        })
        .collect();
    Output::Table { headers, rows }
}

fn cmd_omega(g: &GroupContext) -> Result<Output> {
    let om = fundamental_group_invariants(&g.datum, &g.twist);
    let desc = if om.invariant_factors.is_empty() {
        "Z/1".to_string()
    } else {
        om.invariant_factors.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ")
    };
    let ratio = omega_index_ratio(&g.datum, &g.twist)?;
    Ok(Output::Values(vec![entry("Ω", desc), entry("|Ω|", om.order()), entry("Ω_ad/Ω", ratio)]))
}

fn cmd_orderpoly(g: &GroupContext) -> Result<Output> {
    let p = order_polynomial(&g.datum, &g.twist)?;
    Ok(Output::Values(vec![entry("|G(k)|", p)]))
}

fn cmd_residual(g: &GroupContext, b: SearchBounds) -> Result<Output> {
    let headers = vec!["simple root values".to_string(), "mu".into(), "nu".into()];
    let rows = residual_search(g, b, DEFAULT_WEYL_BOUND)?
        .into_iter()
        .map(|(key, r)| {
            let rec = r.to_record();
            vec![key.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "), rec.mu.join(", "), rec.nu.join(", ")]
        })
        .collect();
    Ok(Output::Table { headers, rows })
}

fn cmd_gamma(rep: Option<&str>, spec: Option<&str>, point: Option<&str>, psi: PsiOrder) -> Result<Output> {
    match (rep, spec) {
        (Some(path), None) => {
            let r = load_rep(path)?;
            Ok(Output::Values(vec![entry("rep", &r), entry("dim", r.dim()), gamma_entries("gamma(0)", r.gamma_factor(psi))]))
        }
        (None, Some(s)) => {
            let g = load_group(s)?;
            let r = load_point(&g, point.unwrap_or("principal"))?;
            let mut out = vec![entry("group", &g.name), entry("point", &r), gamma_entries("gamma(0, Ad)", gamma_direct(&g, &r, psi))];
            if is_residual(&g.rrs, &r)?.residual {
                let t = gamma_adjoint_two_routes(&g, &r, psi)?;
                out.push(exact("mu closed form", &t.mu));
                out.push(entry("d", &t.d));
            }
            Ok(Output::Values(out))
        }
        _ => Err(Error::InvalidInput("give exactly one of --rep or --spec".into())),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_mu(g: &GroupContext, point: &str, levi: &str, prefactor: &str, regularized: bool, q_to_one: bool) -> Result<Output> {
    let r = load_point(g, point)?;
    let mut spec = MuSpec::new(g, parse_levi(levi, g.rrs.rank())?, parse_prefactor(prefactor)?);
    let mut out = vec![entry("group", &g.name), entry("point", &r)];
    if q_to_one {
        spec.prefactor = Prefactor::Levi;
        out.push(entry("limit q -> 1", if q_to_one_limit_check(g, &r)? { "1" } else { "not 1" }));
        return Ok(Output::Values(out));
    }
    if regularized {
        out.push(exact("mu (regularized)", &regularized_mu(&spec, &r)));
        return Ok(Output::Values(out));
    }
    out.push(match mu_value(&spec, &r) {
        MuOutcome::Value(v) => exact("mu", &v),
        MuOutcome::Zero(k) => entry("mu", format!("zero of order {k}")),
        MuOutcome::Pole(k) => entry("mu", format!("pole of order {k}")),
        MuOutcome::Indeterminate { zeros, poles } => entry("mu", format!("{zeros} vanishing numerator and {poles} vanishing denominator factors")),
    });
    Ok(Output::Values(out))
}

fn cmd_fdeg(g: &GroupContext, point: &str, dim_rho: u64, s_sharp: &str, d_h: &str, psi: PsiOrder) -> Result<Output> {
    let r = load_point(g, point)?;
    let s = match s_sharp {
        "principal" => SSharp::Principal,
        n => SSharp::Value(n.parse().map_err(|_| Error::InvalidInput(format!("bad --s-sharp {n:?}")))?),
    };
    let d: BigRational = parse_rational(d_h)?;
    let f = formal_degree(g, &r, psi, dim_rho, s)?;
    let h = hecke_formal_degree(g, &r, &d)?;
    Ok(Output::Values(vec![entry("group", &g.name), entry("point", &r), exact("fdeg (gamma route)", &f), exact("fdeg x |S#| (Hecke route)", &h)]))
}

fn cmd_verify(
    suite: &str,
    spec: Option<&str>,
    groups: Option<&str>,
    cfg: SuiteConfig,
) -> Result<(Output, bool)> {
    let suite: Suite = suite.parse()?;
    let mut cfg = cfg;
    if let Some(s) = spec {
        cfg.groups = Some(vec![load_spec(s)?]);
    } else if let Some(list) = groups.filter(|l| *l != "builtin") {
        cfg.groups = Some(list.split(',').map(|n| load_spec(n.trim())).collect::<Result<_>>()?);
    }
    let rep = run_suite(suite, &cfg)?;
    let pass = rep.passed();
    let n = rep.records.len();
    let ok = rep.records.iter().filter(|r| r.verdict).count();
    let summary = format!("{}: {ok}/{n} passed, {} skipped", rep.suite, rep.skipped);
    Ok((Output::Records { records: rep.records, summary }, pass))
}

fn numeric(v: &Factored, q0: f64) -> String {
    match v.eval_numeric(q0) {
        Ok((re, im)) if im.abs() < 1e-12 * re.abs().max(1.0) => format!("{re:.12}"),
        Ok((re, im)) => format!("{re:.12} + {im:.12}i"),
        Err(e) => e.to_string(),
    }
}

fn render(out: &Output, format: Format, q0: Option<f64>) -> String {
    let mut s = String::new();
    match (out, format) {
        (Output::Values(es), Format::Text) => {
            for e in es {
                s.push_str(&format!("{}: {}\n", e.key, e.text));
                if let (Some(v), Some(q)) = (&e.exact, q0) {
                    s.push_str(&format!("{} at q = {q}: {}\n", e.key, numeric(v, q)));
                }
            }
        }
        (Output::Values(es), Format::Records) => {
            let mut m = Map::new();
            for e in es {
                m.insert(e.key.clone(), Value::String(e.text.clone()));
                if let (Some(v), Some(q)) = (&e.exact, q0) {
                    m.insert(format!("{} at q0", e.key), Value::String(numeric(v, q)));
                }
            }
            s.push_str(&Value::Object(m).to_string());
            s.push('\n');
        }
        (Output::Values(es), Format::Latex) => {
            s.push_str("\\begin{tabular}{ll}\n");
            for e in es {
                s.push_str(&format!("{} & ${}$ \\\\\n", e.key, e.text));
            }
            s.push_str("\\end{tabular}\n");
        }
        (Output::Table { headers, rows }, Format::Text) => {
            let widths: Vec<usize> =
                (0..headers.len()).map(|j| rows.iter().map(|r| r[j].chars().count()).chain([headers[j].chars().count()]).max().unwrap_or(0)).collect();
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string() + "\n"
            };
            s.push_str(&line(headers));
            for r in rows {
                s.push_str(&line(r));
            }
        }
        (Output::Table { headers, rows }, Format::Records) => {
            for r in rows {
                let m: Map<String, Value> = headers.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect();
                s.push_str(&Value::Object(m).to_string());
                s.push('\n');
            }
        }
        (Output::Table { headers, rows }, Format::Latex) => {
            s.push_str(&format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(headers.len())));
            s.push_str(&format!("{} \\\\\n\\hline\n", headers.join(" & ")));
            for r in rows {
                s.push_str(&format!("{} \\\\\n", r.join(" & ")));
            }
            s.push_str("\\end{tabular}\n");
        }
        (Output::Records { records, summary }, Format::Text) => {
            for r in records {
                s.push_str(&format!("{} {} {} {} ratio {}\n", if r.verdict { "PASS" } else { "FAIL" }, r.identity, r.group, r.point, r.ratio));
                if !r.verdict {
                    s.push_str(&format!("    lhs = {}\n    rhs = {}\n", r.lhs, r.rhs));
                }
            }
            s.push_str(summary);
            s.push('\n');
        }
        (Output::Records { records, summary }, Format::Records) => {
            for r in records {
                s.push_str(&serde_json::to_string(r).expect("serializable"));
                s.push('\n');
            }
            s.push_str(&json!({ "summary": summary }).to_string());
            s.push('\n');
        }
        (Output::Records { records, .. }, Format::Latex) => s.push_str(&to_latex(records)),
    }
    s
}

/// Run the command line; returns the exit code and the text for stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() });
        }
    };
    match execute(&cli) {
        Ok((out, pass)) => {
            let q0 = match cli.q0.as_deref().map(parse_rational).transpose() {
                Ok(q) => q.and_then(|x| x.to_f64()),
                Err(e) => return (2, String::new(), format!("error: --q0: {e}\n")),
            };
            (if pass { 0 } else { 1 }, render(&out, cli.format, q0), String::new())
        }
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

fn execute(cli: &Cli) -> Result<(Output, bool)> {
    let psi = |p: &PsiArg| PsiOrder::from_int(p.psi);
    let out = match &cli.command {
        Command::Rootdata(g) => cmd_rootdata(&load_group(&g.spec)?),
        Command::Restricted(g) => cmd_restricted(&load_group(&g.spec)?),
        Command::Omega(g) => cmd_omega(&load_group(&g.spec)?)?,
        Command::Orderpoly(g) => cmd_orderpoly(&load_group(&g.spec)?)?,
        Command::Residual { group, bounds } => cmd_residual(&load_group(&group.spec)?, bounds.bounds())?,
        Command::Gamma { rep, spec, point, psi: p } => cmd_gamma(rep.as_deref(), spec.as_deref(), point.as_deref(), psi(p)?)?,
        Command::Mu { group, point, levi, prefactor, regularized, q_to_one } => {
            cmd_mu(&load_group(&group.spec)?, point, levi, prefactor, *regularized, *q_to_one)?
        }
        Command::Fdeg { group, point, dim_rho, s_sharp, d_h, psi: p } => cmd_fdeg(&load_group(&group.spec)?, point, *dim_rho, s_sharp, d_h, psi(p)?)?,
        Command::Verify { suite, spec, groups, cases, seed, samples, bounds, psi: p } => {
            let cfg = SuiteConfig { cases: *cases, seed: *seed, bounds: bounds.bounds(), samples: *samples, psi: psi(p)?, groups: None };
            return cmd_verify(suite, spec.as_deref(), groups.as_deref(), cfg);
        }
    };
    Ok((out, true))
}
