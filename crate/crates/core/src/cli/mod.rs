//! The `gapdens` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 I/O error.

mod args;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::error::{Error, Result};
use crate::estimators::{density_profile, ProfileConfig, WindowPolicy};
use crate::generators::{parse_kv_line, FamilySpec, Generated, KvMap};
use crate::report::{self, Document};
use crate::series::{bracket_tau, partial_sums, VerdictRule};
use crate::table::{compute_table, table_families};
use crate::textfmt::format_sequence;
use crate::verifier::{
    implied_density_interval, catalog_manifest, read_manifest, run_manifest, CheckKind, ManifestEntry,
    ManifestTarget, DEFAULT_TOL,
};

pub use args::{Cli, Command, FamilyArgs, OutputArgs, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_io() {
        EXIT_IO
    } else {
        EXIT_INVALID
    }
}

/// Resolved settings for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Option<FamilySpec>,
    pub policy: WindowPolicy,
    pub tol: f64,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    /// Keys from the config file, which take precedence over flags.
    pub overrides: KvMap,
}

/// Reads `key=value` lines into one map; later lines win.
pub fn read_config(path: &Path) -> Result<KvMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut map = KvMap::new();
    for (i, line) in text.lines().enumerate() {
        let m = parse_kv_line(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        for (k, v) in m.iter() {
            map.insert(k, v);
        }
    }
    Ok(map)
}

impl RunConfig {
    fn resolve(family: &FamilyArgs, out: &OutputArgs, tail_fraction: f64, spread_tol: f64, tol: f64) -> Result<Self> {
        let overrides = match &family.config {
            Some(p) => read_config(p)?,
            None => KvMap::new(),
        };
        let mut kv = family.to_kv();
        for (k, v) in overrides.iter() {
            kv.insert(k, v);
        }
        let family_spec = if kv.contains("family") {
            Some(kv.to_family_spec()?)
        } else {
            None
        };
        let policy = WindowPolicy {
            tail_fraction: overrides.real("tail_fraction")?.unwrap_or(tail_fraction),
            spread_tol: overrides.real("spread_tol")?.unwrap_or(spread_tol),
        };
        policy.validate()?;
        let tol = overrides.real("tol")?.unwrap_or(tol);
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::param("tol must be non-negative"));
        }
        let format = match overrides.get("format") {
            Some(f) => Some(OutputFormat::parse(f)?),
            None => out.format,
        };
        let output = overrides.get("output").map(PathBuf::from).or_else(|| out.output.clone());
        Ok(RunConfig {
            family: family_spec,
            policy,
            tol,
            format,
            output,
            overrides,
        })
    }

    fn require_family(&self) -> Result<&FamilySpec> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::param("a family is required (--family or --file)"))
    }

    fn emit(&self, doc: &Document) -> Result<()> {
        let text = match self.format.unwrap_or(OutputFormat::Pretty) {
            OutputFormat::Json => doc.to_json() + "\n",
            OutputFormat::Csv => report::to_csv(doc),
            OutputFormat::Pretty => report::render_pretty(doc),
        };
        self.write(&text)
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::io("<stdout>", e))
            }
        }
    }
}

pub fn cmd_generate(cfg: &RunConfig) -> Result<i32> {
    match cfg.require_family()?.generate()? {
        Generated::Finite(r) => cfg.emit(&report::finite_set_document(&r))?,
        Generated::Prefix(p) => match cfg.format {
            None => cfg.write(&format_sequence(&p))?,
            Some(_) => cfg.emit(&report::sequence_document(&p))?,
        },
    }
    Ok(EXIT_OK)
}

pub fn cmd_profile(cfg: &RunConfig) -> Result<i32> {
    let prefix = match cfg.require_family()?.generate()? {
        Generated::Finite(r) => {
            cfg.emit(&report::finite_set_document(&r))?;
            return Ok(EXIT_OK);
        }
        Generated::Prefix(p) => p,
    };
    let profile = density_profile(&prefix, &ProfileConfig { policy: cfg.policy.clone() })?;
    let implied = implied_density_interval(&profile, cfg.tol);
    cfg.emit(&report::profile_document(&profile, Some(&implied)))?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(cfg: &RunConfig, manifest: Option<&Path>, catalog_n: Option<usize>, check: &str) -> Result<i32> {
    let mut entries: Vec<ManifestEntry> = Vec::new();
    if let Some(p) = manifest {
        entries.extend(read_manifest(p)?);
    }
    if let Some(n) = catalog_n {
        entries.extend(catalog_manifest(n).into_iter().map(|mut e| {
            e.tol = cfg.tol;
            e
        }));
    }
    let check = CheckKind::parse(cfg.overrides.get("check").unwrap_or(check))?;
    if let Some(f) = &cfg.family {
        entries.push(ManifestEntry {
            target: ManifestTarget::Family(f.clone()),
            check,
            tol: cfg.tol,
        });
    } else if check == CheckKind::Analytic {
        entries.push(ManifestEntry {
            target: ManifestTarget::Grid(Default::default()),
            check,
            tol: cfg.tol,
        });
    }
    if entries.is_empty() {
        return Err(Error::param("nothing to verify: give --manifest, --catalog, a family or --check analytic"));
    }
    let reports = run_manifest(&entries)?;
    cfg.emit(&report::checks_document(&reports))?;
    Ok(if reports.iter().any(|r| r.status.is_fail()) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

pub fn cmd_table(cfg: &RunConfig, n: usize, union_n: usize) -> Result<i32> {
    let n = cfg.overrides.parse_or("n", n)?;
    let union_n = cfg.overrides.parse_or("union_n", union_n)?;
    let rows = compute_table(&table_families(n, union_n))?;
    cfg.emit(&report::table_document(&rows))?;
    Ok(EXIT_OK)
}

pub struct ProbeOptions {
    pub sigma: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub steps: usize,
    pub rule: VerdictRule,
}

pub fn cmd_probe(cfg: &RunConfig, opts: &ProbeOptions) -> Result<i32> {
    let spec = cfg.require_family()?;
    let o = &cfg.overrides;
    let sigma = o.real("sigma")?.or(opts.sigma);
    let bracket = match (o.real("bracket_lo")?, o.real("bracket_hi")?) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => opts.bracket,
    };
    let steps = o.parse_or("steps", opts.steps)?;
    opts.rule.validate()?;
    if let Some(s) = sigma {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidSigma(s));
        }
    }
    let mut doc = Document::new(if bracket.is_some() {
        report::DocKind::Bracket
    } else {
        report::DocKind::Series
    });
    match (sigma, bracket) {
        (None, None) => return Err(Error::param("give --sigma or --bracket")),
        (_, Some((lo, hi))) => {
            let b = bracket_tau(spec, lo, hi, steps, spec.length, opts.rule)?;
            doc.extend(report::bracket_document(&b, &spec.label()));
            if let Some(s) = sigma {
                let prefix = spec.generate_prefix()?;
                doc.extend(report::series_document(&partial_sums(&prefix, s, opts.rule)?, &spec.label()));
            }
        }
        (Some(s), None) => {
            let prefix = spec.generate_prefix()?;
            doc.extend(report::series_document(&partial_sums(&prefix, s, opts.rule)?, &spec.label()));
        }
    }
    cfg.emit(&doc)?;
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Generate { family, out } => {
            cmd_generate(&RunConfig::resolve(family, out, 0.5, 0.05, DEFAULT_TOL)?)
        }
        Command::Profile {
            family,
            out,
            tail_fraction,
            spread_tol,
            tol,
        } => cmd_profile(&RunConfig::resolve(family, out, *tail_fraction, *spread_tol, *tol)?),
        Command::Verify {
            family,
            out,
            manifest,
            catalog,
            check,
            tol,
        } => {
            let cfg = RunConfig::resolve(family, out, 0.5, 0.05, *tol)?;
            cmd_verify(&cfg, manifest.as_deref(), *catalog, check)
        }
        Command::Table {
            out,
            n,
            union_n,
            config,
        } => {
            let family = FamilyArgs {
                config: config.clone(),
                ..FamilyArgs::default()
            };
            cmd_table(&RunConfig::resolve(&family, out, 0.5, 0.05, DEFAULT_TOL)?, *n, *union_n)
        }
        Command::Probe {
            family,
            out,
            sigma,
            bracket,
            steps,
            rule,
        } => {
            let cfg = RunConfig::resolve(family, out, 0.5, 0.05, DEFAULT_TOL)?;
            let opts = ProbeOptions {
                sigma: *sigma,
                bracket: bracket.as_ref().map(|b| (b[0], b[1])),
                steps: *steps,
                rule: rule.to_rule()?,
            };
            cmd_probe(&cfg, &opts)
        }
        Command::Schema { out } => {
            let cfg = RunConfig::resolve(&FamilyArgs::default(), out, 0.5, 0.05, DEFAULT_TOL)?;
            cfg.write(report::SCHEMA)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
