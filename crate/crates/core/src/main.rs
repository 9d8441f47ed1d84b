use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use ncreg::constructions::{
    finite_map_check, quotient_by_normal_element, tensor_product, ConstructionError, FiniteMapCertificate,
};
use ncreg::corealg::{parse_module, parse_poly, parse_presentation, AlgebraPresentation, CoreError, Poly, Side};
use ncreg::gbasis::{cache_dir_from_env, load_or_compute, GbCache, GbError, GbLimits};
use ncreg::regularity::{
    concavity_certificate, inequality_harness, invariant_ring_obstruction, verdict_text, AlgebraArtifacts,
    ArtifactOptions, Assertion, CheckStatus, ConcavityWitness, HarnessCase, RegularityError, RegularityReport,
    ReportOptions, Window, SCHEMA,
};
use ncreg::resolution::{minimal_resolution, resolve_presented, BettiTable, ResolutionError};
use ncreg::series::{stanley_check, HilbertSeries, SeriesError, StanleyVerdict};

#[derive(Parser)]
#[command(name = "ncreg", version, about = "Regularity invariants of connected graded algebras")]
struct Cli {
    /// Largest homological degree resolved.
    #[arg(long = "imax", global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    i_max: u64,
    /// Largest internal degree resolved.
    #[arg(long = "dmax", global = true, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
    d_max: i64,
    /// Gröbner truncation degree (raised to dmax when smaller).
    #[arg(long = "dgb", global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    d_gb: u64,
    /// Override the coefficient field of every input, e.g. Q or F101.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Assert that the algebra is s-Cohen-Macaulay.
    #[arg(long = "cm-degree", global = true, allow_negative_numbers = true)]
    cm_degree: Option<i64>,
    #[arg(long = "assume-noetherian", global = true)]
    noetherian: bool,
    #[arg(long = "assume-balanced", global = true)]
    balanced: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gröbner basis of the relation ideal.
    Gb { algebra: PathBuf },
    /// Hilbert series, rational when the basis is complete.
    Hilbert { algebra: PathBuf },
    /// Betti table of k, or of a module given with --module.
    Resolve {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Resolve the right trivial module instead.
        #[arg(long)]
        right: bool,
    },
    /// Full regularity report.
    Regularity { algebra: PathBuf },
    /// Koszul verdict.
    Koszul { algebra: PathBuf },
    /// Functional equation h(1/t) = ±t^ℓ h(t).
    Stanley { algebra: PathBuf },
    /// Tensor product presentation and its report.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        /// Also compute the product presentation directly.
        #[arg(long)]
        direct: bool,
    },
    /// Quotient by a normal element, with its certificate and report.
    Quotient {
        algebra: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Finiteness of A over T through a map of generators.
    Finitemap {
        source: PathBuf,
        target: PathBuf,
        /// Comma-separated images of the source generators; default maps generators by name.
        #[arg(long)]
        images: Option<String>,
    },
    /// Concavity bound from AS regular witnesses mapping finitely to A.
    Concavity {
        algebra: PathBuf,
        /// Witness algebra; omit to use A itself.
        #[arg(long)]
        witness: Vec<PathBuf>,
        #[arg(long)]
        images: Option<String>,
    },
    /// Obstruction to A being an invariant ring of an AS regular algebra.
    Obstruct {
        algebra: PathBuf,
        #[arg(long)]
        witness: Vec<PathBuf>,
        #[arg(long)]
        images: Option<String>,
        /// Admissible range lo,hi for CMreg of the hypothetical regular algebra.
        #[arg(long = "cmreg-t")]
        cmreg_t: Option<String>,
    },
    /// Inequality checks on modules, normal quotients and tensor products.
    Harness {
        algebra: PathBuf,
        #[arg(long)]
        module: Vec<PathBuf>,
        #[arg(long)]
        quotient: Vec<String>,
        #[arg(long)]
        tensor: Vec<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Certification(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Certification(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Certification(_) => "certification",
            CliError::Resource(_) => "resource",
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::ResourceLimit(_) | GbError::Uncertified { .. } => CliError::Resource(e.to_string()),
            GbError::TruncationTooLow { .. } => CliError::Input(e.to_string()),
            GbError::Cache(_) => CliError::Resource(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Gb(g) => g.into(),
            SeriesError::Incomplete(_) => CliError::Certification(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::Gb(g) => g.into(),
            ResolutionError::Core(c) => c.into(),
            ResolutionError::Invariant(_) => CliError::Certification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RegularityError> for CliError {
    fn from(e: RegularityError) -> Self {
        match e {
            RegularityError::Gb(g) => g.into(),
            RegularityError::Series(s) => s.into(),
            RegularityError::Resolution(r) => r.into(),
            RegularityError::Core(c) => c.into(),
            RegularityError::InconsistentEvidence(_) => CliError::Input(e.to_string()),
            RegularityError::Witness(_) | RegularityError::NotRational => CliError::Certification(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Core(c) => c.into(),
            ConstructionError::Gb(g) => g.into(),
            ConstructionError::Resolution(r) => r.into(),
            ConstructionError::Regularity(r) => r.into(),
            ConstructionError::NotNormal { .. } => CliError::Certification(e.to_string()),
            ConstructionError::Window { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

struct Ctx {
    window: Window,
    field: Option<String>,
    cache: Option<GbCache>,
    format: Format,
    assertions: BTreeSet<Assertion>,
    out: String,
}

impl Ctx {
    fn new(cli: &Cli) -> Ctx {
        let d_max = cli.d_max as i32;
        let window = Window { i_max: cli.i_max as usize, d_max, d_gb: (cli.d_gb as u32).max(d_max as u32) };
        let cache = if cli.no_cache {
            None
        } else {
            Some(GbCache::new(cache_dir_from_env().unwrap_or_else(default_cache_dir)))
        };
        let mut assertions = BTreeSet::new();
        if let Some(s) = cli.cm_degree {
            assertions.insert(Assertion::CohenMacaulay { s });
        }
        if cli.noetherian {
            assertions.insert(Assertion::Noetherian);
        }
        if cli.balanced {
            assertions.insert(Assertion::BalancedDualizingComplex);
        }
        Ctx { window, field: cli.field.clone(), cache, format: cli.format, assertions, out: String::new() }
    }

    fn text(&self) -> bool {
        self.format == Format::Text
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn emit(&mut self, v: &impl serde::Serialize) {
        let s = serde_json::to_string(v).expect("records serialize");
        self.line(s);
    }

    fn record(&mut self, algebra: &str, invariant: &str, kind: &str, value: Value, evidence: Value) {
        let assertions: Vec<String> = self.assertions.iter().map(|a| a.to_string()).collect();
        let r = json!({
            "schema": SCHEMA,
            "algebra": algebra,
            "invariant": invariant,
            "kind": kind,
            "value": value,
            "window": self.window,
            "evidence": evidence,
            "assertions": assertions,
        });
        self.emit(&r);
    }

    fn load(&self, path: &Path) -> Result<Arc<AlgebraPresentation>, CliError> {
        let text = read(path)?;
        let text = match &self.field {
            Some(f) => {
                let kept: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with("field")).collect();
                format!("field {f}\n{}", kept.join("\n"))
            }
            None => text,
        };
        let mut a = parse_presentation(&text)?;
        if a.label().is_empty() {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            a = a.with_label(stem);
        }
        Ok(Arc::new(a))
    }

    fn artifacts(&self, a: &Arc<AlgebraPresentation>) -> Result<AlgebraArtifacts, CliError> {
        let options = ArtifactOptions { window: self.window, limits: GbLimits::default(), cache: self.cache.clone() };
        Ok(AlgebraArtifacts::compute(a.clone(), &options)?)
    }

    fn report_options(&self) -> ReportOptions {
        ReportOptions { assertions: self.assertions.clone(), ..Default::default() }
    }

    fn report(&self, art: &AlgebraArtifacts) -> Result<RegularityReport, CliError> {
        Ok(RegularityReport::build(art, &self.report_options())?)
    }

    fn emit_report(&mut self, r: &RegularityReport) {
        if self.text() {
            let s = r.summary();
            self.out.push_str(&s);
        } else {
            for rec in r.records() {
                self.emit(&rec);
            }
        }
    }
}

fn default_cache_dir() -> PathBuf {
    std::env::temp_dir().join("ncreg-cache")
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_images(src: Option<&str>, t: &AlgebraPresentation, a: &AlgebraPresentation) -> Result<Vec<Poly>, CliError> {
    match src {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            if parts.len() != t.num_gens() {
                return Err(CliError::Input(format!(
                    "{} images given for {} generators of {}",
                    parts.len(),
                    t.num_gens(),
                    t.label()
                )));
            }
            parts.iter().map(|p| parse_poly(p, a).map_err(CliError::from)).collect()
        }
        None => t
            .names()
            .iter()
            .map(|n| {
                if a.gen_index(n).is_none() {
                    return Err(CliError::Input(format!(
                        "generator `{n}` of {} has no namesake in {}; pass --images",
                        t.label(),
                        a.label()
                    )));
                }
                parse_poly(n, a).map_err(CliError::from)
            })
            .collect(),
    }
}

fn betti_out(ctx: &mut Ctx, label: &str, b: &BettiTable) {
    if ctx.text() {
        let status = match b.length() {
            Some(n) => format!("terminated at step {n}"),
            None => format!("{} steps computed", b.steps_known()),
        };
        ctx.line(format!("{label}: {status}"));
        let g = b.grid();
        ctx.out.push_str(&g);
        let ts: Vec<String> = (0..=b.i_max()).map(|i| b.t(i).map_or("-".into(), |t| t.to_string())).collect();
        ctx.line(format!("t_i: {}", ts.join(" ")));
    } else {
        let kind = if b.terminated() { "exact" } else { "at_least" };
        let value = json!({ "entries": b.records(), "length": b.length() });
        ctx.record(label, "betti", kind, value, json!(b.side().to_string()));
    }
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Option<String>, CliError> {
    match &cli.cmd {
        Cmd::Gb { algebra } => {
            let a = ctx.load(algebra)?;
            let gb = load_or_compute(&a, ctx.window.d_gb, &GbLimits::default(), ctx.cache.as_ref())?;
            let complete = gb.is_complete();
            if ctx.text() {
                let status = if complete {
                    "complete".to_string()
                } else {
                    format!("complete through degree {}", gb.truncation())
                };
                ctx.line(format!("{}: {} elements, {status}", a.label(), gb.elements().len()));
                for e in gb.render() {
                    ctx.line(format!("  {e}"));
                }
            } else {
                let kind = if complete { "exact" } else { "at_least" };
                ctx.record(a.label(), "groebner_basis", kind, json!(gb.render()), json!(gb.completeness()));
            }
            Ok(None)
        }
        Cmd::Hilbert { algebra } => {
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let coeffs = art.hilbert().truncated(ctx.window.d_max as u32)?;
            match art.hilbert() {
                HilbertSeries::Rational(r) => {
                    if ctx.text() {
                        ctx.line(format!("{}: h(t) = {r}", a.label()));
                        ctx.line(format!("degree {}", r.degree()));
                        ctx.line(format!("coefficients {coeffs}"));
                    } else {
                        ctx.record(a.label(), "hilbert_series", "exact", r.record(), json!("normal-word automaton"));
                    }
                }
                HilbertSeries::Truncated(_) => {
                    if ctx.text() {
                        ctx.line(format!("{}: Gröbner basis incomplete; truncated series {coeffs}", a.label()));
                    } else {
                        ctx.record(a.label(), "hilbert_series", "at_least", json!(coeffs.coeffs()), json!("truncated"));
                    }
                }
            }
            Ok(None)
        }
        Cmd::Resolve { algebra, module, right } => {
            let a = ctx.load(algebra)?;
            match module {
                None => {
                    let art = ctx.artifacts(&a)?;
                    let (label, b) = if *right {
                        (format!("k_{}", a.label()), art.right_betti()?)
                    } else {
                        (format!("{}_k", a.label()), art.betti())
                    };
                    betti_out(ctx, &label, &b);
                }
                Some(path) => {
                    let m = parse_module(&read(path)?, a.clone())?;
                    let side = m.side();
                    let m = if side == Side::Right { m.as_left() } else { m };
                    let alg = m.algebra().clone();
                    let gb = Arc::new(load_or_compute(&alg, ctx.window.d_gb, &GbLimits::default(), ctx.cache.as_ref())?);
                    let res = minimal_resolution(&gb, &m, ctx.window.i_max, ctx.window.d_max)?;
                    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    betti_out(ctx, &format!("{stem} ({side})"), &res.betti_table());
                }
            }
            Ok(None)
        }
        Cmd::Regularity { algebra } => {
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let r = ctx.report(&art)?;
            ctx.emit_report(&r);
            if ctx.text() {
                betti_out(ctx, &format!("{}_k", a.label()), &r.betti);
            }
            Ok(None)
        }
        Cmd::Koszul { algebra } => {
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let r = ctx.report(&art)?;
            let v = serde_json::to_value(&r.koszul).expect("verdict serializes");
            if ctx.text() {
                ctx.line(format!("{}: {}", a.label(), verdict_text(&v)));
            } else {
                let kind = if r.koszul.is_yes() || r.koszul.is_no() { "exact" } else { "unknown" };
                ctx.record(a.label(), "koszul", kind, v, json!(r.torreg_k.provenance));
            }
            Ok((!r.koszul.is_yes() && !r.koszul.is_no()).then(|| "Koszul verdict undecided in the window".into()))
        }
        Cmd::Stanley { algebra } => {
            let a = ctx.load(algebra)?;
            let gb = load_or_compute(&a, ctx.window.d_gb, &GbLimits::default(), ctx.cache.as_ref())?;
            let h = ncreg::series::hilbert_rational(&gb)?;
            let v = stanley_check(&h);
            if ctx.text() {
                let s = match v {
                    StanleyVerdict::Satisfied { sign, ell } => {
                        format!("satisfied({}1, ℓ = {ell})", if sign > 0 { "+" } else { "-" })
                    }
                    StanleyVerdict::Violated => "violated".into(),
                };
                ctx.line(format!("{}: h(t) = {h}: {s}", a.label()));
            } else {
                ctx.record(a.label(), "stanley", "exact", json!(v), json!(h.record()));
            }
            Ok(None)
        }
        Cmd::Tensor { left, right, direct } => {
            let (a, b) = (ctx.load(left)?, ctx.load(right)?);
            let p = Arc::new(tensor_product(&a, &b)?);
            let (ra, rb) = (ctx.report(&ctx.artifacts(&a)?)?, ctx.report(&ctx.artifacts(&b)?)?);
            let r = ra.tensor(&rb);
            if ctx.text() {
                ctx.out.push_str(&p.to_text());
                ctx.line("");
            } else {
                ctx.record(p.label(), "presentation", "exact", json!(p.to_text()), json!("tensor product"));
            }
            ctx.emit_report(&r);
            if *direct {
                let d = ctx.report(&ctx.artifacts(&p)?)?;
                ctx.emit_report(&d);
                let res = inequality_harness(&[HarnessCase::Tensor {
                    name: p.label().to_string(),
                    left: Arc::new(ra),
                    right: Arc::new(rb),
                    direct: Some(Arc::new(d)),
                }]);
                return harness_out(ctx, &res);
            }
            Ok(None)
        }
        Cmd::Quotient { algebra, element } => {
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let parent = ctx.report(&art)?;
            let omega = parse_poly(element, &a)?;
            let (b, cert) = quotient_by_normal_element(&art, &omega, ctx.window.d_max)?;
            let b = Arc::new(b);
            let mut opts = ctx.report_options();
            opts.evidence = cert.cm_evidence(&parent.cmreg);
            opts.torreg_upper = cert.torreg_upper(&parent.torreg_k);
            let r = RegularityReport::build(&ctx.artifacts(&b)?, &opts)?;
            if ctx.text() {
                ctx.line(format!("element {} of degree {}", cert.element, cert.degree));
                ctx.line(format!("g.Omega = Omega.q_g with q = [{}]", cert.left_witnesses.join(", ")));
                ctx.line(format!("Omega.g = p_g.Omega with p = [{}]", cert.right_witnesses.join(", ")));
                let reg = match cert.regular.first_failure {
                    None => format!("regular through degree {}", cert.regular.up_to),
                    Some(j) => format!("zero divisor: rank deficit in degree {j}"),
                };
                ctx.line(reg);
                ctx.out.push_str(&b.to_text());
                ctx.line("");
            } else {
                let kind = if cert.is_regular() { "exact" } else { "unknown" };
                ctx.record(b.label(), "normal_element", kind, json!(cert), json!(a.label()));
            }
            ctx.emit_report(&r);
            Ok((!cert.is_regular()).then(|| format!("{} is not regular", cert.element)))
        }
        Cmd::Finitemap { source, target, images } => {
            let (t, a) = (ctx.load(source)?, ctx.load(target)?);
            let imgs = parse_images(images.as_deref(), &t, &a)?;
            let cert = finite_map_check(&ctx.artifacts(&t)?, &imgs, &ctx.artifacts(&a)?, ctx.window.d_max)?;
            finite_out(ctx, &cert);
            Ok((!cert.is_finite()).then(|| format!("{} -> {} not certified finite", cert.source, cert.target)))
        }
        Cmd::Concavity { algebra, witness, images } => {
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let r = ctx.report(&art)?;
            let ws = witnesses(ctx, &art, &r, witness, images.as_deref())?;
            let bound = concavity_certificate(&r, &ws);
            if ctx.text() {
                ctx.line(format!("{}: c = {}  c_- = {}", a.label(), bound.c, bound.c_minus));
                ctx.line(format!("  {}", bound.reason));
                if let Some(w) = &bound.witness {
                    ctx.line(format!("  witness {} (-CMreg = {})", w.label, w.value));
                }
            } else {
                let kind = if bound.exact { "exact" } else { "at_least" };
                ctx.record(a.label(), "concavity", kind, json!(bound), json!(bound.reason));
            }
            Ok(None)
        }
        Cmd::Obstruct { algebra, witness, images, cmreg_t } => {
            let range = match cmreg_t {
                None => None,
                Some(s) => {
                    let bad = || CliError::Input(format!("--cmreg-t expects lo,hi, got `{s}`"));
                    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
                    Some((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
                }
            };
            let a = ctx.load(algebra)?;
            let art = ctx.artifacts(&a)?;
            let r = ctx.report(&art)?;
            let ws = witnesses(ctx, &art, &r, witness, images.as_deref())?;
            let bound = concavity_certificate(&r, &ws);
            let v = invariant_ring_obstruction(&r, &bound, range);
            if ctx.text() {
                ctx.line(format!("{}: {}", a.label(), v.detail));
            } else {
                ctx.record(a.label(), "obstruction", "exact", json!(v), json!(bound.reason));
            }
            Ok(None)
        }
        Cmd::Harness { algebra, module, quotient, tensor } => {
            let a = ctx.load(algebra)?;
            let art = Arc::new(ctx.artifacts(&a)?);
            let k = Arc::new(ctx.report(&art)?);
            let mut cases = Vec::new();
            for path in module {
                let m = parse_module(&read(path)?, a.clone())?;
                let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                cases.push(HarnessCase::FiniteModule { name, algebra: art.clone(), k_report: k.clone(), module: m });
            }
            for src in quotient {
                let omega = parse_poly(src, &a)?;
                let (b, cert) = quotient_by_normal_element(&art, &omega, ctx.window.d_max)?;
                let mut opts = ctx.report_options();
                opts.evidence = cert.cm_evidence(&k.cmreg);
                opts.torreg_upper = cert.torreg_upper(&k.torreg_k);
                let b = Arc::new(b);
                let q = RegularityReport::build(&ctx.artifacts(&b)?, &opts)?;
                let module_torreg = quotient_module_torreg(ctx, &art, &b)?;
                cases.push(HarnessCase::NormalQuotient {
                    name: b.label().to_string(),
                    parent: k.clone(),
                    quotient: Arc::new(q),
                    degree: cert.degree,
                    module_torreg,
                });
            }
            for path in tensor {
                let b = ctx.load(path)?;
                let rb = Arc::new(ctx.report(&ctx.artifacts(&b)?)?);
                let p = Arc::new(tensor_product(&a, &b)?);
                let direct = Arc::new(ctx.report(&ctx.artifacts(&p)?)?);
                cases.push(HarnessCase::Tensor {
                    name: p.label().to_string(),
                    left: k.clone(),
                    right: rb,
                    direct: Some(direct),
                });
            }
            let res = inequality_harness(&cases);
            harness_out(ctx, &res)
        }
    }
}

/// Torreg of A/(Ω) as a left A-module, from its cyclic presentation.
fn quotient_module_torreg(
    ctx: &Ctx,
    art: &AlgebraArtifacts,
    b: &AlgebraPresentation,
) -> Result<ncreg::regularity::BoundedValue, CliError> {
    let a = art.presentation();
    let extra = &b.relations()[a.relations().len()..];
    let text = format!(
        "side left\ngens e:0\nrels {}\n",
        extra.iter().map(|p| format!("{}*e", paren(&a.render_relation(p)))).collect::<Vec<_>>().join(", ")
    );
    let m = parse_module(&text, a.clone())?;
    let res = resolve_presented(art.ga(), &m, ctx.window.i_max, ctx.window.d_max)?;
    Ok(ncreg::regularity::tor_regularity(&res.betti_table()))
}

fn paren(s: &str) -> String {
    format!("({s})")
}

fn witnesses(
    ctx: &Ctx,
    art: &AlgebraArtifacts,
    r: &RegularityReport,
    paths: &[PathBuf],
    images: Option<&str>,
) -> Result<Vec<ConcavityWitness>, CliError> {
    if paths.is_empty() {
        return Ok(vec![ConcavityWitness::identity(r)?]);
    }
    if images.is_some() && paths.len() > 1 {
        return Err(CliError::Input("--images applies to a single witness".into()));
    }
    let mut out = Vec::new();
    for p in paths {
        let t = ctx.load(p)?;
        let t_art = ctx.artifacts(&t)?;
        let imgs = parse_images(images, &t, art.presentation())?;
        let cert = finite_map_check(&t_art, &imgs, art, ctx.window.d_max)?;
        out.push(ConcavityWitness::from_map(&ctx.report(&t_art)?, &cert)?);
    }
    Ok(out)
}

fn finite_out(ctx: &mut Ctx, cert: &FiniteMapCertificate) {
    if ctx.text() {
        let list = |c: &[usize]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        ctx.line(format!("{} -> {}: [{}]", cert.source, cert.target, cert.images.join(", ")));
        ctx.line(format!("  A/f(T+)A  {}", list(&cert.left_cokernel)));
        ctx.line(format!("  A/Af(T+)  {}", list(&cert.right_cokernel)));
        ctx.line(format!("  {}", verdict_text(&serde_json::to_value(&cert.verdict).expect("verdict serializes"))));
    } else {
        let kind = if cert.is_finite() { "exact" } else { "unknown" };
        ctx.record(&cert.target, "finite_map", kind, json!(cert), json!(cert.verdict));
    }
}

fn harness_out(ctx: &mut Ctx, res: &[ncreg::regularity::HarnessResult]) -> Result<Option<String>, CliError> {
    let mut failed = 0;
    for r in res {
        if r.status == CheckStatus::Fail {
            failed += 1;
        }
        if ctx.text() {
            let mut s = format!("{:<8} {} / {}: {} vs {}", format!("{:?}", r.status).to_lowercase(), r.case, r.check, r.lhs, r.rhs);
            if !r.note.is_empty() {
                let _ = write!(s, "  ({})", r.note);
            }
            ctx.line(s);
        } else {
            ctx.emit(&json!({ "schema": SCHEMA, "harness": r }));
        }
    }
    Ok((failed > 0).then(|| format!("{failed} harness checks failed")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx::new(&cli);
    let result = run(&cli, &mut ctx);
    print!("{}", ctx.out);
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(why)) => {
            eprintln!("certification failed: {why}");
            ExitCode::from(2)
        }
        Err(e) => {
            if ctx.format == Format::Jsonl {
                println!("{}", json!({ "schema": SCHEMA, "error": e.kind(), "message": e.to_string() }));
            } else {
                eprintln!("error ({}): {e}", e.kind());
            }
            ExitCode::from(e.code())
        }
    }
}
