//! Argument handling and rendering for the `ctheta` binary.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ctheta::arith::rational::{format_rational, RationalJson};
use ctheta::characters::fundamental_part;
use ctheta::formulas::{self, Verdict, VerifyReport};
use ctheta::solver::{assemble_default, solve_theta, SolveReport, DEFAULT_VERIFY_TO};
use ctheta::theta::{expected_space, theta_series};
use ctheta::{
    CongruenceClass, Error, EtaProduct, QuadraticForm, RealDirichletCharacter, SpaceDescriptor,
    SphericalPoly,
};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_FORM: u8 = 3;
pub const EXIT_CHARACTERS: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ctheta",
    version,
    about = "Representation numbers of quadratic forms under congruence conditions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gram matrix, discriminant and level of a form.
    Inspect {
        #[arg(short, long)]
        form: String,
    },
    /// Coefficients of the theta series for x ≡ u (mod m).
    Theta {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
    },
    /// Representation numbers r(n) for 0 ≤ n ≤ nmax.
    Count {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
    /// Eisenstein and eta-product basis of M_k(Γ0(N), χ).
    Basis {
        /// `N:k:chi`, e.g. `36:1:chi_-4` or `16:2:triv`.
        #[arg(long)]
        space: String,
        /// Additional cusp generators such as `eta(6)^4`.
        #[arg(long)]
        cusp: Vec<String>,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
    },
    /// Express the theta series in the basis of its space.
    Solve {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        cusp: Vec<String>,
        /// Coefficients compared after solving.
        #[arg(long, default_value_t = DEFAULT_VERIFY_TO)]
        prec: u64,
    },
    /// Check catalog formulas against enumeration.
    Verify {
        /// `all`, a group such as `form:m` or `jacobi`, a form alias, or an entry id.
        #[arg(default_value = "all")]
        selector: String,
        #[arg(long, default_value_t = 200)]
        nmax: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// Alias or upper-triangular coefficients a_11,a_12,…,a_1n,a_22,…,a_nn.
    #[arg(short, long)]
    pub form: String,
    /// Comma-separated residue vector; omitted means no condition.
    #[arg(short = 'u', long, allow_hyphen_values = true)]
    pub residue: Option<String>,
    #[arg(short, long, default_value_t = 1)]
    pub modulus: u64,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Output already rendered before the failure was known.
    pub output: Option<String>,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NotTriangular(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidEta(_) => EXIT_PARSE,
            Error::NotPositiveDefinite | Error::OddDimension(_) => EXIT_FORM,
            Error::NonRealCharacters(_) | Error::ComplexPairsPossible { .. } => EXIT_CHARACTERS,
            _ => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
        }
    }
}

type Outcome = Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Inspect { form } => inspect(&parse_form(form)?, fmt),
        Command::Theta { class, prec } => theta(class, *prec, fmt),
        Command::Count { class, nmax } => count(class, *nmax, fmt),
        Command::Basis { space, cusp, prec } => basis(space, cusp, *prec, fmt),
        Command::Solve { class, cusp, prec } => solve(class, cusp, *prec, fmt),
        Command::Verify {
            selector,
            nmax,
            workers,
        } => verify(selector, *nmax, *workers, fmt),
    }
}

fn parse_form(s: &str) -> Result<QuadraticForm, Failure> {
    Ok(s.parse()?)
}

fn parse_class(args: &ClassArgs) -> Result<(QuadraticForm, CongruenceClass), Failure> {
    let q = parse_form(&args.form)?;
    let cls = match &args.residue {
        None => {
            if args.modulus != 1 {
                return Err(Failure::parse("--modulus needs --residue"));
            }
            CongruenceClass::full(q.dim())
        }
        Some(u) => {
            let u = u
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::parse(format!("bad residue `{u}`")))?;
            if u.len() != q.dim() {
                return Err(Failure::parse(format!(
                    "residue has {} entries, form has {} variables",
                    u.len(),
                    q.dim()
                )));
            }
            CongruenceClass::new(&u, args.modulus)?
        }
    };
    Ok((q, cls))
}

pub fn parse_space(s: &str) -> Result<SpaceDescriptor, Failure> {
    let parts: Vec<&str> = s.splitn(3, ':').collect();
    let [n, k, chi] = parts[..] else {
        return Err(Failure::parse(format!("space `{s}` is not N:k:chi")));
    };
    let n: u64 = n
        .trim()
        .parse()
        .map_err(|_| Failure::parse(format!("bad level in `{s}`")))?;
    let k: u32 = k
        .trim()
        .parse()
        .map_err(|_| Failure::parse(format!("bad weight in `{s}`")))?;
    let chi: RealDirichletCharacter = chi.parse()?;
    Ok(SpaceDescriptor::gamma0(k, n, chi.primitive_part())?)
}

fn parse_etas(cusp: &[String]) -> Result<Vec<EtaProduct>, Failure> {
    cusp.iter().map(|c| Ok(c.parse::<EtaProduct>()?)).collect()
}

fn to_json_string(v: &Value) -> String {
    // serde_json's default map is ordered by key, which makes this canonical.
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn rational_value(r: &ctheta::Rational) -> Value {
    serde_json::to_value(RationalJson::from(r)).expect("serializable")
}

fn residue_string(cls: &CongruenceClass) -> String {
    cls.residue()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn inspect(q: &QuadraticForm, fmt: Format) -> Outcome {
    let disc = q.discriminant();
    let fund = fundamental_part(disc)?;
    let level = q.level()?;
    Ok(match fmt {
        Format::Json => to_json_string(&json!({
            "form": q.to_string(),
            "n": q.dim(),
            "gram": q.gram_matrix(),
            "discriminant": disc,
            "fundamental_part": fund,
            "level": level,
        })),
        Format::Csv => {
            let gram = q
                .gram_matrix()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join(";");
            format!("key,value\nn,{}\ngram,{gram}\ndiscriminant,{disc}\nfundamental_part,{fund}\nlevel,{level}\n", q.dim())
        }
        Format::Plain => {
            let mut s = format!("Q = {q}\nn = {}\nGram matrix:\n", q.dim());
            for row in q.gram_matrix() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
                writeln!(s, "  {}", cells.join("")).unwrap();
            }
            writeln!(s, "D_Q = {disc}\nfundamental part = {fund}\nN_Q = {level}").unwrap();
            s
        }
    })
}

fn series_output(header: Value, values: &[(u64, Value, String)], fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut h = header;
            h["coefficients"] = Value::Array(values.iter().map(|(_, v, _)| v.clone()).collect());
            to_json_string(&h)
        }
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, _, v) in values {
                writeln!(s, "{n},{v}").unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for (n, _, v) in values {
                writeln!(s, "{n:>5}  {v}").unwrap();
            }
            s
        }
    }
}

fn theta(args: &ClassArgs, prec: u64, fmt: Format) -> Outcome {
    let (q, cls) = parse_class(args)?;
    let f = theta_series(&q, &SphericalPoly::one(), &cls, prec)?;
    let space = expected_space(&q, &SphericalPoly::one(), &cls)?;
    let values: Vec<_> = (0..=prec)
        .map(|n| {
            let c = f.coefficient(n);
            (n, rational_value(&c), format_rational(&c))
        })
        .collect();
    let header = json!({
        "form": q.to_string(),
        "residue": cls.residue(),
        "modulus": cls.modulus(),
        "precision": prec,
        "space": space.to_json(),
    });
    Ok(series_output(header, &values, fmt))
}

fn count(args: &ClassArgs, nmax: u64, fmt: Format) -> Outcome {
    let (q, cls) = parse_class(args)?;
    let counts = q.representation_counts(&cls, nmax)?;
    let values: Vec<_> = counts
        .iter()
        .enumerate()
        .map(|(n, c)| (n as u64, json!(c), c.to_string()))
        .collect();
    let header = json!({
        "form": q.to_string(),
        "residue": cls.residue(),
        "modulus": cls.modulus(),
        "nmax": nmax,
    });
    Ok(series_output(header, &values, fmt))
}

fn basis(space: &str, cusp: &[String], prec: u64, fmt: Format) -> Outcome {
    let descriptor = parse_space(space)?;
    let basis = assemble_default(&descriptor, &parse_etas(cusp)?)?;
    let mut rows = vec![];
    for g in &basis.elements {
        let s = g.expand(prec)?;
        rows.push((g.label(), s.to_dense()));
    }
    let leading = 6.min(prec as usize + 1);
    Ok(match fmt {
        Format::Json => to_json_string(&json!({
            "space": descriptor.to_json(),
            "precision": prec,
            "elements": rows
                .iter()
                .map(|(label, c)| json!({
                    "label": label,
                    "coefficients": c.iter().map(rational_value).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("label,n,value\n");
            for (label, c) in &rows {
                for (n, v) in c.iter().enumerate() {
                    writeln!(s, "\"{label}\",{n},{}", format_rational(v)).unwrap();
                }
            }
            s
        }
        Format::Plain => {
            let mut s = format!("{descriptor}: {} generators\n", rows.len());
            for (label, c) in &rows {
                let head: Vec<String> = c[..leading].iter().map(format_rational).collect();
                writeln!(s, "  {label:<34} {} ...", head.join(", ")).unwrap();
            }
            s
        }
    })
}

fn solve(args: &ClassArgs, cusp: &[String], verify_to: u64, fmt: Format) -> Outcome {
    let (q, cls) = parse_class(args)?;
    let extra = parse_etas(cusp)?;
    let comps = solve_theta(&q, &cls, verify_to, &extra)?;
    let formula = {
        let mut terms = vec![];
        for c in &comps {
            terms.extend(c.formula.terms().iter().cloned());
        }
        ctheta::Formula::new(terms).normalize()
    };
    Ok(match fmt {
        Format::Json => to_json_string(&json!({
            "form": q.to_string(),
            "residue": cls.residue(),
            "modulus": cls.modulus(),
            "components": comps
                .iter()
                .map(|c| json!({
                    "character": c.character.to_string(),
                    "report": serde_json::to_value(SolveReport::new(&c.basis, &c.combination)).expect("serializable"),
                    "formula": c.formula.to_string(),
                }))
                .collect::<Vec<_>>(),
            "formula": formula.to_string(),
        })),
        Format::Csv => {
            let mut s = String::from("character,label,num,den\n");
            for c in &comps {
                for (label, r) in &c.combination.coefficients {
                    writeln!(s, "{},\"{label}\",{},{}", c.character, r.numer(), r.denom()).unwrap();
                }
            }
            s
        }
        Format::Plain => {
            let mut s = format!(
                "r^{{{};{}}}_Q for Q = {q}\n",
                residue_string(&cls),
                cls.modulus()
            );
            for c in &comps {
                writeln!(s, "component {} in {}:", c.character, c.basis.descriptor).unwrap();
                for (label, r) in &c.combination.coefficients {
                    writeln!(s, "  {:>8} * {label}", format_rational(r)).unwrap();
                }
                writeln!(s, "  verified to n = {}", c.combination.verified_to).unwrap();
            }
            writeln!(s, "r(n) = {formula}").unwrap();
            s
        }
    })
}

fn verify(selector: &str, nmax: u64, workers: Option<usize>, fmt: Format) -> Outcome {
    let entries = formulas::select(selector).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: e.to_string(),
        output: None,
    })?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Failure::parse("--workers must be at least 1"));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Failure {
        code: EXIT_VERIFY,
        message: e.to_string(),
        output: None,
    })?;
    let reports: Vec<VerifyReport> = pool.install(|| {
        use rayon::prelude::*;
        entries
            .par_iter()
            .map(|e| formulas::verify_formula(e, nmax))
            .collect::<ctheta::Result<Vec<_>>>()
    })?;
    let passed = reports
        .iter()
        .filter(|r| r.verdict() == Verdict::Pass)
        .count();
    let out = match fmt {
        Format::Json => to_json_string(&json!({
            "selector": selector,
            "nmax": nmax,
            "passed": passed,
            "total": reports.len(),
            "results": reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    v["verdict"] = serde_json::to_value(r.verdict()).expect("serializable");
                    v
                })
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("id,group,verdict,mismatches,first_mismatch\n");
            for r in &reports {
                let first = r
                    .mismatches
                    .first()
                    .map(|m| m.n.to_string())
                    .unwrap_or_default();
                writeln!(
                    s,
                    "\"{}\",{},{},{},{first}",
                    r.id,
                    r.group,
                    verdict_word(r.verdict()),
                    r.mismatches.len()
                )
                .unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &reports {
                writeln!(
                    s,
                    "{:<8} {:<32} {}",
                    verdict_word(r.verdict()),
                    r.id,
                    r.formula
                )
                .unwrap();
                if let Some(m) = r.mismatches.first() {
                    let f = m
                        .formula
                        .to_rational()
                        .map(|x| format_rational(&x))
                        .unwrap_or_default();
                    writeln!(
                        s,
                        "         first mismatch n = {}: formula {f}, count {}",
                        m.n, m.count
                    )
                    .unwrap();
                }
                if let (Verdict::VariantPasses, Some(v)) = (r.verdict(), &r.variant) {
                    writeln!(
                        s,
                        "         variant passes: {} ({})",
                        v.description, v.formula
                    )
                    .unwrap();
                }
            }
            writeln!(s, "{passed}/{} formulas pass for n ≤ {nmax}", reports.len()).unwrap();
            s
        }
    };
    if passed == reports.len() {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!(
                "{} of {} formulas failed",
                reports.len() - passed,
                reports.len()
            ),
            output: Some(out),
        })
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::VariantPasses => "flagged",
        Verdict::Fail => "FAIL",
    }
}
