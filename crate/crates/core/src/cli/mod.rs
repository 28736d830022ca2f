//! Command-line front end.

mod document;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use document::SeriesDocument;

use crate::curve_quot::{z_curve_numeric, CurveSpec, KClass, Twist};
use crate::error::{Error, Result};
use crate::exact_algebra::{MPoly, Rat};
use crate::kawai_yoshioka::ky_table;
use crate::localization_oracle::{oracle_euler, oracle_general_type, oracle_segre, WeightVector};
use crate::power_series::Series;
use crate::root_calculus::u_palindromic;
use crate::surface_quot::{
    blowup_series, chi_y_virtual, euler_dim0, general_type_z, k3_reduced_hilb, k3_reduced_quot, sw_value,
    topological_euler, z_surface, z_xm, EulerKind, SurfaceClass, SurfaceSpec,
};
use crate::tree_combinatorics::{catalan_csv, signed_binomial_count, fuss_catalan, weighted_count, TreeType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quotseries", version, about = "Exact generating series for Quot schemes")]
pub struct Cli {
    /// Highest power of q to compute.
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Oracle weights, comma separated fractions.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    /// Worker threads for the parallel sums.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segre series of a Quot scheme of a curve.
    #[command(allow_negative_numbers = true)]
    Curve {
        #[arg(long)]
        genus: i64,
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        /// RANK:DEGREE[:TWIST], repeatable.
        #[arg(long = "class", allow_hyphen_values = true)]
        classes: Vec<String>,
    },
    /// Surface series.
    Surface(SurfaceArgs),
    /// Virtual Euler characteristics in dimension 0.
    #[command(allow_negative_numbers = true)]
    Euler {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 1)]
        ksq: i64,
        /// Print the rational function instead of the expansion.
        #[arg(long)]
        ratfunc: bool,
    },
    /// Surfaces of general type with a canonical divisor class.
    #[command(allow_negative_numbers = true)]
    Gentype {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        chi: i64,
    },
    /// Table of Kawai–Yoshioka numbers.
    Ky {
        #[arg(long, default_value_t = 3)]
        gmax: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Weighted counts of colored trees.
    Catalan {
        /// Edge counts per color, e.g. 2,1.
        #[arg(long = "type", value_delimiter = ',')]
        counts: Option<Vec<usize>>,
        /// Tabulate every type with this many colors instead.
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Brute-force torus localization.
    Oracle(OracleArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "fast")]
        suite: String,
    },
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[command(subcommand)]
    kind: SurfaceCommand,
}

#[derive(Debug, Subcommand)]
#[command(allow_negative_numbers = true)]
enum SurfaceCommand {
    /// Transfer of the curve series to a surface.
    Series {
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        #[arg(long)]
        ksq: i64,
        #[arg(long, default_value_t = 1)]
        chi: i64,
        /// RANK:PAIRING[:TWIST], repeatable; PAIRING is c1·K.
        #[arg(long = "class", allow_hyphen_values = true)]
        classes: Vec<String>,
    },
    /// Virtual χ_{-y} genera; without --y the coefficients are polynomials in y.
    ChiY {
        #[arg(long)]
        ksq: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Series of a surface with a divisor M.
    Xm {
        #[arg(long)]
        msq: i64,
        #[arg(long)]
        mk: i64,
    },
    /// Blowup of a rational surface.
    Blowup {
        #[arg(long)]
        ksq: i64,
    },
    /// Seiberg–Witten value of the canonical class.
    Sw {
        #[arg(long)]
        chi: i64,
    },
    /// Topological Euler characteristics.
    Topological {
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        /// Genus of a curve.
        #[arg(long, conflicts_with = "chi_top")]
        genus: Option<i64>,
        /// Topological Euler characteristic of a surface.
        #[arg(long)]
        chi_top: Option<i64>,
    },
    /// Reduced series of the Hilbert schemes of a K3.
    K3Hilb,
    /// Reduced Euler characteristic of a K3 Quot scheme.
    K3Quot {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: i64,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(subcommand)]
    kind: OracleCommand,
}

#[derive(Debug, Subcommand)]
#[command(allow_negative_numbers = true)]
enum OracleCommand {
    /// Segre series of `L_1 ⊕ … ⊕ L_r` on the projective line.
    Segre {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Vec<i64>,
    },
    /// Virtual Euler characteristics in dimension 0.
    Euler {
        #[arg(long = "N")]
        n: usize,
    },
    /// General type series.
    Gentype {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        chi: i64,
    },
}

enum Output {
    Series(Series<Rat>),
    Poly(Series<MPoly>),
    Number(Rat),
    Text(String),
    Catalan(Vec<(TreeType, Rat, Rat, Rat)>),
    Table(String, serde_json::Value),
    Report(verify::VerifyReport),
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{flag}: {msg}"))
}

fn parse_rat(flag: &str, s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| usage(flag, e))
}

fn parse_class(s: &str) -> Result<(i64, i64, Rat)> {
    let parts: Vec<&str> = s.split(':').collect();
    let int = |p: &str| p.trim().parse::<i64>().map_err(|e| usage("--class", format!("{s:?}: {e}")));
    match parts.as_slice() {
        [r, d] => Ok((int(r)?, int(d)?, Rat::one())),
        [r, d, x] => Ok((int(r)?, int(d)?, parse_rat("--class", x)?)),
        _ => Err(usage("--class", format!("{s:?} is not RANK:DEGREE[:TWIST]"))),
    }
}

fn weights(cli: &Cli, n: usize) -> Result<WeightVector> {
    match &cli.weights {
        None => Ok(WeightVector::standard(n)),
        Some(ws) => {
            let v = ws.iter().map(|w| parse_rat("--weights", w)).collect::<Result<Vec<_>>>()?;
            if v.len() != n {
                return Err(usage("--weights", format!("{} weights given, {n} needed", v.len())));
            }
            WeightVector::new(v).map_err(|e| usage("--weights", e))
        }
    }
}

/// `U_N^{K²}` in factored form.
fn u_power_factored(n: u32, ksq: i64) -> Result<String> {
    if ksq == 0 {
        return Ok("1".into());
    }
    let p = u_palindromic(n)?;
    let k = ksq.abs();
    let pow = |base: String, e: i64| if e == 1 { format!("({base})") } else { format!("({base})^{e}") };
    let mut top = vec![pow("1 - q".into(), 2 * k)];
    if p.degree() != Some(0) {
        top.push(pow(p.display_var("q"), k));
    }
    let bottom = vec![pow(format!("1 - {}q", Rat::int(2).pow(n as i64)), n as i64 * k)];
    let (num, den) = if ksq > 0 { (top, bottom) } else { (bottom, top) };
    Ok(format!("{}/{}", num.concat(), den.concat()))
}

fn execute(cli: &Cli) -> Result<Output> {
    let k = cli.order;
    Ok(match &cli.command {
        Command::Curve { genus, n, classes } => {
            let classes = classes
                .iter()
                .map(|c| parse_class(c).map(|(r, d, x)| KClass::new(r, d, Twist::Value(x))))
                .collect::<Result<Vec<_>>>()?;
            let spec = CurveSpec { genus: *genus, n: *n, classes };
            Output::Series(z_curve_numeric(&spec, k)?)
        }
        Command::Surface(SurfaceArgs { kind }) => match kind {
            SurfaceCommand::Series { n, ksq, chi, classes } => {
                let classes = classes
                    .iter()
                    .map(|c| {
                        parse_class(c).map(|(rank, pairing, x)| SurfaceClass { rank, pairing, twist: Twist::Value(x) })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let spec = SurfaceSpec { ksq: *ksq, chi: *chi, classes };
                let z = z_surface(&spec, *n, k)?;
                Output::Series(z.map_coeffs(|c| c.as_constant().expect("numeric twists give constants")))
            }
            SurfaceCommand::ChiY { ksq, y } => {
                let s = chi_y_virtual(*ksq, k)?;
                match y {
                    Some(y) => {
                        let y = parse_rat("--y", y)?;
                        Output::Series(s.map_coeffs(|c| c.eval(std::slice::from_ref(&y))))
                    }
                    None => Output::Poly(s),
                }
            }
            SurfaceCommand::Xm { msq, mk } => Output::Series(z_xm(*msq, *mk, k)?),
            SurfaceCommand::Blowup { ksq } => Output::Series(blowup_series(*ksq, k)?),
            SurfaceCommand::Sw { chi } => Output::Number(sw_value(*chi)),
            SurfaceCommand::Topological { n, genus, chi_top } => {
                let kind = match (genus, chi_top) {
                    (Some(g), None) => EulerKind::Curve { n: *n, genus: *g },
                    (None, Some(c)) => EulerKind::Surface { n: *n, chi_top: *c },
                    _ => return Err(usage("--genus/--chi-top", "give exactly one")),
                };
                Output::Series(topological_euler(kind, k)?)
            }
            SurfaceCommand::K3Hilb => Output::Series(k3_reduced_hilb(k)?),
            SurfaceCommand::K3Quot { g, n } => Output::Number(k3_reduced_quot(*g, *n)?),
        },
        Command::Euler { n, ksq, ratfunc } => {
            if *ratfunc {
                Output::Text(u_power_factored(*n, *ksq)?)
            } else {
                Output::Series(euler_dim0(*n, *ksq, k)?)
            }
        }
        Command::Gentype { n, l, g, chi } => Output::Series(general_type_z(*n, *l, *g, *chi, k as i64)?),
        Command::Ky { gmax, nmax } => {
            let t = ky_table(*gmax, *nmax)?;
            let rows: Vec<_> = t
                .entries()
                .map(|(g, n, v)| json!({"g": g, "n": n, "N": v.to_string()}))
                .collect();
            Output::Table(t.to_csv(), serde_json::Value::Array(rows))
        }
        Command::Catalan { counts, colors, max_n } => {
            let types = match (counts, colors) {
                (Some(c), None) => vec![TreeType::new(c.clone())],
                (None, Some(k)) => TreeType::all(*k, *max_n),
                _ => return Err(usage("--type/--colors", "give exactly one")),
            };
            let rows = types
                .into_iter()
                .map(|t| {
                    let w = weighted_count(&t)?;
                    let (c, d) = (fuss_catalan(&t), signed_binomial_count(&t));
                    Ok((t, w, c, d))
                })
                .collect::<Result<Vec<_>>>()?;
            Output::Catalan(rows)
        }
        Command::Oracle(OracleArgs { kind }) => match kind {
            OracleCommand::Segre { n, degrees } => {
                Output::Series(oracle_segre(*n, degrees, k, &weights(cli, *n)?)?)
            }
            OracleCommand::Euler { n } => Output::Series(oracle_euler(*n, k, &weights(cli, *n)?)?),
            OracleCommand::Gentype { n, l, g, chi } => {
                Output::Series(oracle_general_type(*n, *l, *g, *chi, k as i64, &weights(cli, *n)?)?)
            }
        },
        Command::Verify { suite } => match verify::run_suite(suite) {
            Some(r) => Output::Report(r),
            None => return Err(usage("--suite", format!("unknown suite {suite:?}; use fast or all"))),
        },
    })
}

fn render(out: &Output, format: Format, meta: &[String]) -> Result<String> {
    let text = match (out, format) {
        (Output::Series(s), Format::Text) => format!("{s}\n"),
        (Output::Series(s), Format::Json) => SeriesDocument::from_series(s, meta.to_vec())?.to_json() + "\n",
        (Output::Series(s), Format::Csv) => SeriesDocument::from_series(s, meta.to_vec())?.to_csv(),
        (Output::Poly(s), Format::Text) => format!("{}\n", s.render(|c| c.display_with(&["y"]))),
        (Output::Poly(s), f) => {
            let last = s.prec() - 1;
            let coeffs: Vec<String> = s
                .coeff_range(s.val().min(last + 1), last + 1)?
                .iter()
                .map(|c| c.display_with(&["y"]))
                .collect();
            if f == Format::Json {
                let v = json!({
                    "variable": s.var(),
                    "valuation": s.val().min(last + 1),
                    "coefficients": coeffs,
                    "precision": last,
                    "meta": meta,
                });
                serde_json::to_string_pretty(&v).expect("plain data") + "\n"
            } else {
                let mut o = String::from("exponent,coefficient\n");
                for (i, c) in coeffs.iter().enumerate() {
                    o.push_str(&format!("{},\"{c}\"\n", s.val().min(last + 1) + i as i64));
                }
                o
            }
        }
        (Output::Number(r), Format::Text) => format!("{r}\n"),
        (Output::Number(r), Format::Json) => {
            serde_json::to_string_pretty(&json!({"value": r.to_string(), "meta": meta})).expect("plain data") + "\n"
        }
        (Output::Number(r), Format::Csv) => format!("value\n{r}\n"),
        (Output::Text(t), Format::Json) => {
            serde_json::to_string_pretty(&json!({"value": t, "meta": meta})).expect("plain data") + "\n"
        }
        (Output::Text(t), _) => format!("{t}\n"),
        (Output::Table(csv, _), Format::Text | Format::Csv) => csv.clone(),
        (Output::Table(_, v), Format::Json) => serde_json::to_string_pretty(v).expect("plain data") + "\n",
        (Output::Catalan(rows), Format::Text) => {
            let mut o = String::new();
            for (t, w, c, d) in rows {
                o.push_str(&format!("type {:?}: weighted count {w}, closed form {c}, signed binomial form {d}\n", t.counts));
            }
            o
        }
        (Output::Catalan(rows), Format::Csv) => {
            let types: Vec<TreeType> = rows.iter().map(|r| r.0.clone()).collect();
            catalan_csv(&types)?
        }
        (Output::Catalan(rows), Format::Json) => {
            let v: Vec<_> = rows
                .iter()
                .map(|(t, w, c, d)| {
                    json!({"type": t.counts, "weighted_count": w.to_string(), "closed_form": c.to_string(), "signed_binomial_form": d.to_string()})
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("plain data") + "\n"
        }
        (Output::Report(r), Format::Text) => r.to_text(),
        (Output::Report(r), Format::Csv) => r.to_csv(),
        (Output::Report(r), Format::Json) => serde_json::to_string_pretty(r).expect("plain data") + "\n",
    };
    Ok(text)
}

/// Runs the command line and returns `(exit code, stdout, stderr)`.
pub fn run_capture<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (2, String::new(), msg) };
        }
    };
    let meta: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let compute = || execute(&cli).and_then(|o| render(&o, cli.format, &meta).map(|t| (o, t)));
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(compute),
            Err(e) => return (2, String::new(), format!("error: --threads: {e}\n")),
        },
        None => compute(),
    };
    let (output, text) = match result {
        Ok(v) => v,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    let code = match &output {
        Output::Report(r) if !r.passed() => 1,
        _ => 0,
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (code, String::new(), String::new()),
            Err(e) => (2, String::new(), format!("error: --out {}: {e}\n", path.display())),
        },
        None => (code, text, String::new()),
    }
}

/// Runs the command line against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_capture(args);
    print!("{out}");
    eprint!("{err}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &str) -> (i32, String, String) {
        run_capture(std::iter::once("quotseries").chain(args.split_whitespace()))
    }

    #[test]
    fn euler_ratfunc() {
        let (code, out, _) = cli("euler --N 2 --ksq 1 --order 6 --ratfunc");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(1 - q)^2(1 - 6q + q^2)/(1 - 4q)^2");
        assert_eq!(cli("euler --N 1 --ksq 2 --ratfunc").1.trim(), "(1 - q)^4/(1 - 2q)^2");
        assert_eq!(cli("euler --N 1 --ksq -1 --ratfunc").1.trim(), "(1 - 2q)/(1 - q)^2");
    }

    #[test]
    fn catalan_output() {
        let (code, out, _) = cli("catalan --type 2");
        assert_eq!(code, 0);
        assert!(out.contains("weighted count 2, closed form 2"), "{out}");
        let (_, csv, _) = cli("catalan --type 1,1 --format csv");
        assert_eq!(csv, "type,weighted_count,closed_form\n(1 1),3,3\n");
    }

    #[test]
    fn json_documents_round_trip() {
        for args in [
            "euler --N 1 --ksq 1 --order 5 --format json",
            "surface topological --chi-top 24 --order 3 --format json",
            "gentype --N 2 --l 1 --g 3 --chi 1 --order 4 --format json",
            "curve --genus 2 --class 1:3 --class -1:2:1/2 --order 4 --format json",
        ] {
            let (code, out, err) = cli(args);
            assert_eq!(code, 0, "{args}: {err}");
            let doc = SeriesDocument::from_json(&out).unwrap();
            let s = doc.to_series().unwrap();
            assert_eq!(SeriesDocument::from_series(&s, doc.meta.clone()).unwrap(), doc);
            assert_eq!(doc.coefficients.len() as i64, doc.precision - doc.valuation + 1);
        }
        let (_, out, _) = cli("surface topological --chi-top 24 --order 3 --format json");
        let doc = SeriesDocument::from_json(&out).unwrap();
        assert_eq!(doc.coefficients, vec!["1", "24", "324", "3200"]);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = cli("euler --ksq 1");
        assert_eq!(code, 2);
        assert!(err.contains("--N"), "{err}");
        let (code, _, err) = cli("oracle euler --N 2 --weights 1,2");
        assert_eq!(code, 2);
        assert!(err.contains("--weights"), "{err}");
        let (code, _, err) = cli("curve --genus 1 --class 1:x");
        assert_eq!(code, 2);
        assert!(err.contains("--class"), "{err}");
        assert_eq!(cli("verify --suite nope").0, 2);
        assert_eq!(cli("frobnicate").0, 2);
    }

    #[test]
    fn oracle_weights_override() {
        let (code, a, _) = cli("oracle euler --N 2 --order 4");
        assert_eq!(code, 0);
        let (_, b, _) = cli("oracle euler --N 2 --order 4 --weights 1/3,7");
        assert_eq!(a, b);
        assert!(a.starts_with("1 + 2*q^2 + 24*q^3 + "), "{a}");
    }

    #[test]
    fn surface_outputs() {
        assert_eq!(cli("surface sw --chi 1").1.trim(), "-1");
        assert_eq!(cli("surface k3-quot --g 1 --n 5").1.trim(), "120");
        assert_eq!(cli("surface blowup --ksq 0 --order 4").1.trim(), "q + q^3 + 2*q^4 + O(q^5)");
        let (_, y, _) = cli("surface chi-y --ksq 1 --order 3");
        assert_eq!(y.trim(), "1 + y*q^2 + (y^2 + y)*q^3 + O(q^4)");
        let (_, ky, _) = cli("ky --gmax 1 --nmax 2");
        assert_eq!(ky, "g,n,N\n0,1,1\n0,2,2\n1,0,2\n1,1,24\n1,2,48\n");
        let (_, t1, _) = cli("surface series --ksq 1 --class 1:2 --order 5");
        let (_, t2, _) = cli("surface series --ksq 1 --class 1:2 --order 5 --threads 1");
        assert_eq!(t1, t2);
    }

    #[test]
    fn out_file_sink() {
        let dir = std::env::temp_dir().join(format!("quotseries-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("u.txt");
        let args = format!("euler --N 1 --ksq 1 --order 3 --out {}", path.display());
        let (code, out, _) = cli(&args);
        assert_eq!((code, out.as_str()), (0, ""));
        assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "1 + q^2 + 2*q^3 + O(q^4)");
        std::fs::remove_dir_all(dir).unwrap();
    }
}
