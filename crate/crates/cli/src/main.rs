use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use vmcat::bracket::{bracket_master, nth_product};
use vmcat::k0sigma::{self, lambda_bracket_k0, phi_sigma, phi_sigma_inv};
use vmcat::nilcox::{phi_n, phi_n_g0, phi_n_inv};
use vmcat::util::factorial;
use vmcat::verify::{self, Bounds};
use vmcat::weyl::{i_map, psi1, psi2};
use vmcat::zhu::{q_map, zhu_h};
use vmcat::{text, AlgebraCtx, DiffPoly, Error, G0NElem, K0NElem, K0SigmaElem, Partition, XPoly};

mod output;

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

use output::Output;

/// Exact λ-bracket and K-theory computations for the Virasoro-Magri PVA.
///
/// Operands are auto-detected: `L^2 d1L` is a differential polynomial,
/// `2*[3,1] - [2,2]` a class in K₀(Σ), `[N3]` / `[L3]` nil-Coxeter classes,
/// and `x^2 + 1` a polynomial in x.
#[derive(Parser)]
#[command(name = "vmcat", version)]
struct Cli {
    /// Central charge c in {L_λ L} = (∂ + 2λ)L + cλ³.
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true)]
    charge: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// λ-bracket {a_λ b}
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// n-th product a₍ₙ₎b
    Nprod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        n: u32,
    },
    /// Product in the algebra the operands belong to
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// ∂ (∇ on K₀(Σ), d/dx on ℤ[x])
    Der {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// P^j Ind: insert a row of j boxes
    Pjind {
        #[arg(allow_hyphen_values = true)]
        e: String,
        j: u32,
    },
    /// ∇ on K₀(Σ)
    Nabla {
        #[arg(allow_hyphen_values = true)]
        e: String,
    },
    /// Induction on K₀(Σ), K₀(N) or G₀(N)
    Ind {
        #[arg(allow_hyphen_values = true)]
        e: String,
    },
    /// Restriction on K₀(Σ), K₀(N) or G₀(N)
    Res {
        #[arg(allow_hyphen_values = true)]
        e: String,
    },
    /// Zhu_H projection (L ↦ x); on K₀(Σ) lands in K₀(N)
    Zhu {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Quotient by (∂L - 1); on K₀(Σ) lands in K₀(N)
    Qmap {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Normal-ordered Weyl operator of a monomial (c = 0 only)
    Quantize {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// φ_Σ, φ_N or their inverses, by operand kind
    Phi {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Number of standard Young tableaux of a shape
    CountSyt { partition: String },
    /// Run identity sweeps
    Verify {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        max_j: Option<u32>,
        #[arg(long)]
        max_deg: Option<u32>,
        /// List suite names and exit
        #[arg(long)]
        list: bool,
    },
}

impl Cmd {
    fn verb(&self) -> &'static str {
        match self {
            Cmd::Bracket { .. } => "bracket",
            Cmd::Nprod { .. } => "nprod",
            Cmd::Mul { .. } => "mul",
            Cmd::Der { .. } => "der",
            Cmd::Pjind { .. } => "pjind",
            Cmd::Nabla { .. } => "nabla",
            Cmd::Ind { .. } => "ind",
            Cmd::Res { .. } => "res",
            Cmd::Zhu { .. } => "zhu",
            Cmd::Qmap { .. } => "qmap",
            Cmd::Quantize { .. } => "quantize",
            Cmd::Phi { .. } => "phi",
            Cmd::CountSyt { .. } => "count-syt",
            Cmd::Verify { .. } => "verify",
        }
    }
}

enum Value {
    Poly(DiffPoly),
    K0(K0SigmaElem),
    K0N(K0NElem),
    G0N(G0NElem),
    X(XPoly),
}

/// A parse error tied to the operand text it came from.
struct Failure {
    error: Error,
    input: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, input: None }
    }
}

type Outcome = Result<Output, Failure>;

fn operand(s: &str) -> Result<Value, Failure> {
    let parsed = if s.contains("[N") {
        text::parse_k0n(s).map(Value::K0N)
    } else if s.contains("[L") {
        text::parse_g0n(s).map(Value::G0N)
    } else if text::looks_like_k0sigma(s) {
        text::parse_k0sigma(s).map(Value::K0)
    } else if s.contains('x') {
        text::parse_xpoly(s).map(Value::X)
    } else {
        text::parse_diffpoly(s).map(Value::Poly)
    };
    parsed.map_err(|error| Failure { error, input: Some(s.to_string()) })
}

fn unsupported(verb: &str, what: &str) -> Failure {
    Error::Domain(format!("{verb} is not defined on {what}")).into()
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Poly(_) => "differential polynomials",
        Value::K0(_) => "K0(Sigma) classes",
        Value::K0N(_) => "K0(N) classes",
        Value::G0N(_) => "G0(N) classes",
        Value::X(_) => "polynomials in x",
    }
}

fn run(cmd: &Cmd, ctx: &AlgebraCtx) -> Outcome {
    let verb = cmd.verb();
    match cmd {
        Cmd::Bracket { a, b } => match (operand(a)?, operand(b)?) {
            (Value::Poly(f), Value::Poly(g)) => Ok(Output::Lambda(bracket_master(&f, &g, ctx))),
            (Value::K0(x), Value::K0(y)) => Ok(Output::K0Lambda(lambda_bracket_k0(&x, &y, ctx))),
            (x, _) => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Nprod { a, b, n } => match (operand(a)?, operand(b)?) {
            (Value::Poly(f), Value::Poly(g)) => Ok(Output::Poly(nth_product(&f, &g, *n, ctx))),
            (Value::K0(x), Value::K0(y)) => {
                let c = lambda_bracket_k0(&x, &y, ctx).coeff(*n);
                Ok(Output::K0(c.scale(&factorial(*n))))
            }
            (x, _) => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Mul { a, b } => match (operand(a)?, operand(b)?) {
            (Value::Poly(f), Value::Poly(g)) => Ok(Output::Poly(f.mul(&g))),
            (Value::K0(x), Value::K0(y)) => Ok(Output::K0(k0sigma::product(&x, &y))),
            (Value::K0N(x), Value::K0N(y)) => Ok(Output::K0N(x.mul(&y))),
            (Value::G0N(x), Value::G0N(y)) => Ok(Output::G0N(x.mul(&y))),
            (Value::X(x), Value::X(y)) => Ok(Output::X(x.mul(&y))),
            (x, y) => Err(Error::Domain(format!(
                "mul needs two operands of the same kind, got {} and {}",
                kind(&x),
                kind(&y)
            ))
            .into()),
        },
        Cmd::Der { a } => match operand(a)? {
            Value::Poly(f) => Ok(Output::Poly(f.derive())),
            Value::K0(e) => Ok(Output::K0(k0sigma::nabla(&e))),
            Value::X(p) => Ok(Output::X(p.derivative())),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Pjind { e, j } => match operand(e)? {
            Value::K0(e) => Ok(Output::K0(k0sigma::pj_ind(&e, *j)?)),
            Value::Poly(f) => Ok(Output::K0(k0sigma::pj_ind(&phi_sigma_inv(&f), *j)?)),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Nabla { e } => match operand(e)? {
            Value::K0(e) => Ok(Output::K0(k0sigma::nabla(&e))),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Ind { e } => match operand(e)? {
            Value::K0(e) => Ok(Output::K0(k0sigma::ind(&e))),
            Value::K0N(e) => Ok(Output::K0N(e.ind())),
            Value::G0N(e) => Ok(Output::G0N(e.ind())),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Res { e } => match operand(e)? {
            Value::K0(e) => Ok(Output::K0(k0sigma::res(&e))),
            Value::K0N(e) => Ok(Output::K0N(e.res())),
            Value::G0N(e) => Ok(Output::G0N(e.res())),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Zhu { a } => match operand(a)? {
            Value::Poly(f) => Ok(Output::X(zhu_h(&f))),
            Value::K0(e) => Ok(Output::K0N(phi_n_inv(&zhu_h(&phi_sigma(&e))))),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Qmap { a } => match operand(a)? {
            Value::Poly(f) => Ok(Output::X(q_map(&f))),
            Value::K0(e) => Ok(Output::K0N(phi_n_inv(&q_map(&phi_sigma(&e))))),
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Quantize { a } => match operand(a)? {
            Value::Poly(f) => Ok(Output::Weyl(psi2(&f, ctx)?)),
            Value::K0(e) => {
                let words = psi1(&e, ctx)?;
                let weyl = i_map(&words);
                Ok(Output::Quantized { words, weyl })
            }
            x => Err(unsupported(verb, kind(&x))),
        },
        Cmd::Phi { a } => match operand(a)? {
            Value::Poly(f) => Ok(Output::K0(phi_sigma_inv(&f))),
            Value::K0(e) => Ok(Output::Poly(phi_sigma(&e))),
            Value::K0N(e) => Ok(Output::X(phi_n(&e))),
            Value::G0N(e) => Ok(Output::Q(phi_n_g0(&e))),
            Value::X(p) => Ok(Output::K0N(phi_n_inv(&p))),
        },
        Cmd::CountSyt { partition } => {
            let p: Partition = text::parse_partition(partition)
                .map_err(|error| Failure { error, input: Some(partition.clone()) })?;
            Ok(Output::Count(p.standard_tableaux_count()))
        }
        Cmd::Verify { suite, max_n, max_j, max_deg, .. } => {
            let bounds = Bounds { max_n: *max_n, max_j: *max_j, max_deg: *max_deg };
            Ok(Output::Report(verify::run_suite(suite, &bounds, ctx)?))
        }
    }
}

fn list_suites(format: Format) {
    match format {
        Format::Text => {
            for s in verify::SUITES {
                out!("{:<30} {:<11} {}", s.name, s.module, s.summary);
            }
        }
        Format::Json => {
            let v: Vec<_> = verify::SUITES
                .iter()
                .map(|s| json!({"name": s.name, "module": s.module, "summary": s.summary}))
                .collect();
            out!("{}", serde_json::Value::from(v));
        }
    }
}

fn report_failure(f: &Failure, verb: &str, charge: i64, format: Format) -> ExitCode {
    let code = match f.error {
        Error::Parse { .. } => 2,
        Error::Domain(_) => 3,
    };
    match format {
        Format::Text => {
            eprintln!("error: {}", f.error);
            if let (Error::Parse { pos, .. }, Some(input)) = (&f.error, &f.input) {
                let col = input.get(..*pos).map_or(*pos, |s| s.chars().count());
                eprintln!("  {input}");
                eprintln!("  {}^", " ".repeat(col));
            }
        }
        Format::Json => {
            let error = match &f.error {
                Error::Parse { pos, msg } => {
                    json!({"kind": "parse", "pos": pos, "message": msg, "input": f.input})
                }
                Error::Domain(msg) => json!({"kind": "domain", "message": msg}),
            };
            out!("{}", json!({"verb": verb, "charge": charge, "error": error}));
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Cmd::Verify { list: true, .. } = cli.cmd {
        list_suites(cli.format);
        return ExitCode::SUCCESS;
    }
    let ctx = AlgebraCtx::new(cli.charge);
    let verb = cli.cmd.verb();
    match run(&cli.cmd, &ctx) {
        Err(f) => report_failure(&f, verb, cli.charge, cli.format),
        Ok(out) => {
            match cli.format {
                Format::Text => out!("{}", out.text()),
                Format::Json => out!(
                    "{}",
                    json!({"verb": verb, "charge": cli.charge, "result": out.json()})
                ),
            }
            match &out {
                Output::Report(r) if !r.passed() => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
    }
}
