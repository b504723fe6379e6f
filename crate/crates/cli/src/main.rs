mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use atilde::notation::{format_artin_word, parse_artin_word};
use atilde::oracle;
use atilde::{elementary_factors, CoxeterSystem, Error, PeriodicPermutation};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::render::{render_svg, RenderSpec};

#[derive(Parser)]
#[command(name = "atilde", version, about = "Dual Garside structure on affine braid groups of type A~")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coxeter element as an order of s_1..s_n, e.g. 2,1,4,3 (default: 1,2,...,n).
    #[arg(long, global = true, value_delimiter = ',', conflicts_with = "x_side")]
    order: Option<Vec<usize>>,
    /// Coxeter element by its X residues, e.g. 1,2.
    #[arg(long = "x-side", global = true, value_delimiter = ',')]
    x_side: Option<Vec<i64>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection length of a permutation.
    Length { n: usize, perm: String },
    /// Whether p left-divides q for reflection length.
    Divides { n: usize, p: String, q: String },
    /// Left-greedy normal form of a monoid element, e.g. "(2,3)·(2,3)".
    Nf { n: usize, element: String },
    /// Canonical form of an Artin word, or compare two words.
    Solve {
        n: usize,
        word: String,
        other: Option<String>,
        /// Also print the coprime fraction a^-1 b.
        #[arg(long)]
        fraction: bool,
    },
    /// Classified atoms (x, y) with x in 1..=n and y within K periods.
    Atoms {
        n: usize,
        #[arg(long, default_value_t = 1)]
        window: i64,
    },
    /// Least common multiple of two simples.
    Lcm { n: usize, p: String, q: String },
    /// Greatest common divisor of two simples.
    Gcd { n: usize, p: String, q: String },
    /// Centralizer generators of c^h and their relation checks.
    Centralizer { n: usize, h: i64 },
    /// SVG drawing of a divisor of c in the annulus.
    Render {
        n: usize,
        perm: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 200.0)]
        outer: f64,
        #[arg(long, default_value_t = 80.0)]
        inner: f64,
        #[arg(long, default_value_t = 2.5)]
        stroke: f64,
    },
    /// Run the brute-force checks.
    Selfcheck {
        n: usize,
        #[arg(long, default_value_t = 2)]
        periods: i64,
    },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

fn max_window() -> i64 {
    std::env::var("GARSIDE_MAX_WINDOW")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&k: &i64| k >= 1)
        .unwrap_or(3)
}

fn capped(requested: i64) -> i64 {
    let cap = max_window();
    if requested > cap {
        eprintln!("window of {requested} periods capped to {cap} (GARSIDE_MAX_WINDOW)");
        cap
    } else {
        requested
    }
}

fn system(cli: &Cli, n: usize) -> Result<CoxeterSystem, Error> {
    if n == 0 {
        return Err(Error::ZeroPeriod);
    }
    match (&cli.order, &cli.x_side) {
        (Some(order), _) => {
            if order.len() != n {
                return Err(Error::MalformedOrder(format!(
                    "order has {} entries, expected {n}",
                    order.len()
                )));
            }
            CoxeterSystem::from_word(order)
        }
        (None, Some(x)) => CoxeterSystem::from_sides(n, x),
        (None, None) => CoxeterSystem::standard(n),
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Length { n, perm } => {
            let p = PeriodicPermutation::parse(*n, perm)?;
            let l = p.reflection_length()?;
            Ok(Output::new(
                l.to_string(),
                json!({ "perm": p.to_string(), "window": p.window(), "nu": p.nu(), "kappa": p.kappa()?, "length": l }),
            ))
        }
        Command::Divides { n, p, q } => {
            let p = PeriodicPermutation::parse(*n, p)?;
            let q = PeriodicPermutation::parse(*n, q)?;
            let d = p.divides(&q)?;
            Ok(Output::new(
                d.to_string(),
                json!({ "p": p.to_string(), "q": q.to_string(), "divides": d }),
            ))
        }
        Command::Nf { n, element } => {
            let sys = system(cli, *n)?;
            let u = sys.parse_element(element)?;
            let factors: Vec<String> = u.factors().iter().map(|f| f.to_string()).collect();
            Ok(Output::new(
                u.to_string(),
                json!({ "factors": factors, "length": u.length() }),
            ))
        }
        Command::Solve {
            n,
            word,
            other,
            fraction,
        } => {
            let sys = system(cli, *n)?;
            let w = parse_artin_word(word)?;
            let g = sys.from_artin_word(&w)?;
            let describe = |g: &atilde::GroupElement| {
                json!({
                    "delta_power": g.delta_power(),
                    "positive": g.positive().factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "text": g.to_string(),
                })
            };
            match other {
                Some(other) => {
                    let h = sys.from_artin_word(&parse_artin_word(other)?)?;
                    let equal = g == h;
                    Ok(Output::new(
                        if equal { "EQUAL" } else { "UNEQUAL" },
                        json!({ "equal": equal, "left": describe(&g), "right": describe(&h) }),
                    ))
                }
                None => {
                    let mut text = g.to_string();
                    let mut value = describe(&g);
                    if *fraction {
                        let f = sys.to_fraction(&g);
                        text.push_str(&format!("\n{f}"));
                        value["fraction"] = json!({
                            "denominator": f.denominator.to_string(),
                            "numerator": f.numerator.to_string(),
                        });
                    }
                    value["word"] = json!(format_artin_word(&w));
                    Ok(Output::new(text, value))
                }
            }
        }
        Command::Atoms { n, window } => {
            let sys = system(cli, *n)?;
            let k = capped(*window).max(0);
            let nn = *n as i64;
            let atoms = sys.atoms_in_window(1 - k * nn, (k + 1) * nn);
            let text = atoms
                .iter()
                .map(|a| format!("({},{}) {}", a.x, a.y, a.kind))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(text, json!({ "c": sys.c().to_string(), "atoms": atoms })))
        }
        Command::Lcm { n, p, q } | Command::Gcd { n, p, q } => {
            let sys = system(cli, *n)?;
            let a = sys.parse_simple(p)?;
            let b = sys.parse_simple(q)?;
            let (name, r) = if matches!(cli.command, Command::Lcm { .. }) {
                ("lcm", sys.join(&a, &b)?)
            } else {
                ("gcd", sys.meet(&a, &b)?)
            };
            Ok(Output::new(
                r.to_string(),
                json!({ name: r.to_string(), "length": r.length() }),
            ))
        }
        Command::Centralizer { n, h } => {
            let sys = system(cli, *n)?;
            let pres = sys.centralizer_generators(*h)?;
            let report = sys.check_type_b_relations(&pres)?;
            let mut lines = vec![format!("type B{} generators of the centralizer of c^{h}:", pres.rank)];
            for (i, g) in pres.generators.iter().enumerate() {
                lines.push(format!(
                    "  g{} = {g}  commutes with c^{h}: {}",
                    i + 1,
                    report.commutes_with_power[i]
                ));
            }
            for r in &report.relations {
                lines.push(format!(
                    "  g{} g{} length {}: {}",
                    r.left + 1,
                    r.right + 1,
                    r.length,
                    if r.holds { "holds" } else { "FAILS" }
                ));
            }
            lines.push(format!("all relations hold: {}", report.all_hold()));
            let mut out = Output::new(
                lines.join("\n"),
                json!({
                    "h": pres.h,
                    "rank": pres.rank,
                    "generators": pres.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "relations": report.relations,
                    "commutes_with_power": report.commutes_with_power,
                    "all_hold": report.all_hold(),
                }),
            );
            out.ok = report.all_hold();
            Ok(out)
        }
        Command::Render {
            n,
            perm,
            output,
            outer,
            inner,
            stroke,
        } => {
            let spec = RenderSpec::new(*outer, *inner, *stroke).map_err(Error::InvalidArgument)?;
            let sys = system(cli, *n)?;
            let p = PeriodicPermutation::parse(*n, perm)?;
            let factors = elementary_factors(&sys, &p)?;
            let svg = render_svg(&sys, &factors, &spec);
            let names: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            match output {
                Some(path) => {
                    std::fs::write(path, &svg)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    Ok(Output::new(
                        format!("wrote {} ({} factors)", path.display(), factors.len()),
                        json!({ "path": path, "factors": names }),
                    ))
                }
                None => Ok(Output::new(svg.trim_end(), json!({ "svg": svg, "factors": names }))),
            }
        }
        Command::Selfcheck { n, periods } => {
            let periods = capped(*periods);
            let records = oracle::run_all(*n, periods)?;
            let ok = records.iter().all(|r| r.passed());
            let text = records
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            let mut out = Output::new(text, json!({ "records": records, "ok": ok }));
            out.ok = ok;
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if e.is_parse_error() { 2 } else { 1 };
            if cli.json {
                let mut v = json!({ "error": e.to_string(), "kind": if code == 2 { "parse" } else { "math" } });
                match &e {
                    Error::NoLcm { witnesses } => v["witnesses"] = json!(witnesses),
                    Error::NoUniqueMeet { candidates } => v["candidates"] = json!(candidates),
                    _ => {}
                }
                println!("{v}");
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
