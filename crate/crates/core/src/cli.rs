//! Command-line front end.

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::algebra::field::NumberField;
use crate::algebra::poly::X;
use crate::error::{Error, Result};
use crate::germ::{classify_preliminary, image_curve_equation, GermClass, MapPair, Preliminary};
use crate::oracle::{check_tree, forward_reachability, OracleConfig};
use crate::parse::{parse_curve_with, parse_map_with, parse_with, Context};
use crate::puiseux::Ratio;
use crate::query::{member, witness_map, CurveGerm, Witness};
use crate::render::{render, Format, RenderOptions};
use crate::tree::{build_tree, coord_string, format_trace, BuildOptions, Built, DEFAULT_MAX_DEPTH};

#[derive(Parser, Debug)]
#[command(name = "blossom", version, about = "Images of plane map germs (f, g): (C^2, 0) -> (C^2, 0)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format for trees.
    #[arg(long, global = true, default_value = "ascii")]
    pub format: Format,
    /// Maximal number of blow-ups along a branch.
    #[arg(long, global = true, env = "BLOSSOM_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
    /// Seed of the oracle.
    #[arg(long, global = true, default_value_t = OracleConfig::default().seed)]
    pub seed: u64,
    /// Oracle evaluations per radius shell.
    #[arg(long, global = true, default_value_t = OracleConfig::default().samples)]
    pub samples: usize,
    /// Draw thin and thick divisors with circle glyphs.
    #[arg(long, global = true)]
    pub unicode: bool,
    /// Print the per-step chart data as well.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Minimal polynomial in `a` of a coefficient extension, e.g. "a^2-2";
    /// `a` may then appear in the input.
    #[arg(long, global = true)]
    pub field: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the image of the germ and print its tree.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Decide whether the curve germ "p(t), q(t)" lies in the image.
    Member {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        curve: String,
    },
    /// A polynomial map with the same tree, for thin chains.
    Witness {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Compare the tree with forward sampling.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Per-step chart data of the blow-up.
    Trace {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
}

fn contexts(c: &Common) -> Result<(Context, Context)> {
    let (mut src, mut curve) = (Context::source(), Context::curve());
    if let Some(m) = &c.field {
        let p = parse_with(m, &Context { vars: vec![("a".into(), X)], generator: None }, 0)?;
        let coeffs = p.to_univariate(X).and_then(|u| u.to_rationals()).ok_or_else(|| Error::Parse {
            column: 1,
            message: "field polynomial must have rational coefficients".into(),
        })?;
        let a = NumberField::new(coeffs)?.generator();
        src = src.with_generator("a", a.clone());
        curve = curve.with_generator("a", a);
    }
    Ok((src, curve))
}

fn build(m: &MapPair, c: &Common) -> Result<Built> {
    build_tree(m, &BuildOptions { max_depth: c.max_depth, ..Default::default() })
}

fn curve_equation(m: &MapPair) -> Result<String> {
    Ok(image_curve_equation(m)?.to_string_with(&["u", "v"]))
}

fn analyze(m: &MapPair, c: &Common, out: &mut dyn Write) -> Result<()> {
    let opts = RenderOptions { format: c.format, unicode: c.unicode, orbit_polys: true };
    let mut built = None;
    let class = match classify_preliminary(m) {
        Preliminary::Constant => GermClass::Constant,
        Preliminary::Open => GermClass::Open,
        Preliminary::CurveImage => GermClass::CurveImage(image_curve_equation(m)?),
        Preliminary::NeedsTree => {
            let b = build(m, c)?;
            let class = if b.root_pruned { GermClass::Open } else { GermClass::NotWellDefined(b.tree.clone()) };
            built = Some(b);
            class
        }
    };
    let equation = match &class {
        GermClass::CurveImage(e) => Some(e.to_string_with(&["u", "v"])),
        _ => None,
    };
    match c.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("class".into(), class.name().into());
            if let Some(e) = &equation {
                doc.insert("equation".into(), e.clone().into());
            }
            if let GermClass::NotWellDefined(t) = &class {
                let tree: serde_json::Value = serde_json::from_str(&render(t, &opts)?).expect("renderer emits JSON");
                doc.insert("tree".into(), tree);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).ok();
        }
        Format::Dot => {
            writeln!(out, "// {}", class.name()).ok();
            if let GermClass::NotWellDefined(t) = &class {
                write!(out, "{}", render(t, &opts)?).ok();
            }
        }
        Format::Ascii => {
            match &equation {
                Some(e) => writeln!(out, "{}: {} = 0", class.name(), e).ok(),
                None => writeln!(out, "{}", class.name()).ok(),
            };
            if let GermClass::NotWellDefined(t) = &class {
                write!(out, "{}", render(t, &opts)?).ok();
            }
        }
    }
    if c.trace {
        if let Some(b) = &built {
            write!(out, "{}", format_trace(&b.trace)).ok();
        }
    }
    Ok(())
}

fn member_cmd(m: &MapPair, k: &CurveGerm, c: &Common, out: &mut dyn Write) -> Result<()> {
    let answer = match classify_preliminary(m) {
        Preliminary::Constant => *k == CurveGerm::Degenerate,
        Preliminary::Open => true,
        Preliminary::CurveImage => match k {
            CurveGerm::Degenerate => true,
            CurveGerm::Param(p, q) => {
                let eq = image_curve_equation(m)?;
                writeln!(out, "image curve {} = 0", eq.to_string_with(&["u", "v"])).ok();
                eq.substitute(&[p.clone(), q.clone()]).is_zero()
            }
        },
        Preliminary::NeedsTree => {
            let b = build(m, c)?;
            if b.root_pruned {
                true
            } else {
                let r = member(k, &b.tree)?;
                writeln!(out, "{}", r.member).ok();
                for l in &r.trace {
                    writeln!(out, "  {}", l).ok();
                }
                return Ok(());
            }
        }
    };
    writeln!(out, "{}", answer).ok();
    Ok(())
}

fn witness_cmd(m: &MapPair, c: &Common, out: &mut dyn Write) -> Result<()> {
    if classify_preliminary(m) != Preliminary::NeedsTree {
        writeln!(out, "unsupported: the germ has no blow-up tree").ok();
        return Ok(());
    }
    let b = build(m, c)?;
    match witness_map(&b.tree)? {
        Witness::Unsupported(why) => {
            writeln!(out, "unsupported: {}", why).ok();
        }
        Witness::Map(g) => {
            let again = build(&g, c)?;
            if !again.tree.same_shape(&b.tree) {
                return Err(Error::InternalDisagreement(format!("witness {} has a different tree", g)));
            }
            writeln!(out, "G = ({}, {})", g.f.to_string_with(&["a", "b"]), g.g.to_string_with(&["a", "b"])).ok();
        }
    }
    Ok(())
}

fn oracle_cmd(m: &MapPair, c: &Common, out: &mut dyn Write) -> Result<()> {
    let cfg = OracleConfig { seed: c.seed, samples: c.samples, ..Default::default() };
    cfg.validate().map_err(|e| Error::Parse { column: 1, message: e })?;
    let checks: Vec<(String, String, f64, bool)> = match classify_preliminary(m) {
        Preliminary::NeedsTree => {
            let b = build(m, c)?;
            check_tree(m, &b.tree, &cfg)
                .into_iter()
                .map(|p| (format!("E{} {}", p.step, coord_string(&p.point)), p.expected.as_str().to_string(), p.estimate.value, p.agrees))
                .collect()
        }
        Preliminary::Open => [1i64, -2, 0]
            .iter()
            .map(|&v| Ratio::Finite(v.into()))
            .chain([Ratio::Infinity])
            .map(|p| {
                let e = forward_reachability(m, &[], &p, &cfg);
                (format!("E1 {}", coord_string(&p)), "full".to_string(), e.value, e.value >= cfg.full_threshold)
            })
            .collect(),
        _ => {
            writeln!(out, "no exceptional points to sample").ok();
            return Ok(());
        }
    };
    let ok = checks.iter().filter(|c| c.3).count();
    for (at, class, v, agrees) in &checks {
        writeln!(out, "{} {} estimate {:.3} {}", at, class, v, if *agrees { "ok" } else { "DISAGREE" }).ok();
    }
    writeln!(out, "agreement: {}/{}", ok, checks.len()).ok();
    if ok < checks.len() {
        return Err(Error::InternalDisagreement(format!("oracle disagrees on {} points", checks.len() - ok)));
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let c = &cli.common;
    let (src, curve) = contexts(c)?;
    match &cli.command {
        Command::Analyze { map } => analyze(&parse_map_with(map, &src)?, c, out),
        Command::Member { map, curve: k } => {
            let m = parse_map_with(map, &src)?;
            member_cmd(&m, &parse_curve_with(k, &curve)?, c, out)
        }
        Command::Witness { map } => witness_cmd(&parse_map_with(map, &src)?, c, out),
        Command::Oracle { map } => oracle_cmd(&parse_map_with(map, &src)?, c, out),
        Command::Trace { map } => {
            let m = parse_map_with(map, &src)?;
            match classify_preliminary(&m) {
                Preliminary::NeedsTree => write!(out, "{}", format_trace(&build(&m, c)?.trace)).ok(),
                Preliminary::CurveImage => writeln!(out, "Jacobian vanishes; image curve {} = 0", curve_equation(&m)?).ok(),
                p => writeln!(out, "no blow-up needed ({:?})", p).ok(),
            };
            Ok(())
        }
    }
}

/// Runs one command; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(err, "error: {}", e).ok();
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first) and runs.
pub fn run_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                write!(out, "{}", e.render()).ok();
            } else {
                write!(err, "{}", e.render()).ok();
            }
            code
        }
    }
}
