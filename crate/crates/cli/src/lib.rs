//! Command-line front end: argument parsing, command dispatch and reports.
//!
//! Exit codes: 0 when the property holds or the construction succeeds,
//! 1 when the property fails, 2 on input or precondition errors.

pub mod input;
pub mod report;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use polyid_core::algebra::{Element, StructureAlgebra};
use polyid_core::identity::{
    is_central_polynomial, is_identity, identity_space, min_multilinear_identity_degree, CheckOptions,
    Counterexample, IdentityCheck, IdentityError,
};
use polyid_core::kaplansky::{basis_pair_expansion, finite_rank_witness, is_central_simple, verify_martindale, KaplanskyError};
use polyid_core::linalg;
use polyid_core::linearize::multilinearize;
use polyid_core::multalg::mult_algebra_dim;
use polyid_core::ncpoly::NcPolynomial;
use polyid_core::posner::{
    central_quotient_form, central_value_operator, ideal_center_witness, ideal_generated, parse_int_matrix,
    parse_rational_matrix, scalar_matrix, trace, IdealOfMnZ, MatrixDisplay, PosnerError,
};

pub use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "polyid", version, about = "Exact polynomial identities of finite-dimensional algebras over Q")]
struct Cli {
    /// Worker threads for basis-tuple enumeration (output does not depend on it).
    #[arg(long, global = true, default_value_t = 1, value_parser = parse_threads)]
    threads: usize,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Scan all basis tuples even for alternating polynomials.
    #[arg(long, global = true)]
    no_alternating: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("'{s}' is not a positive integer")),
    }
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// matn:K, quaternion, zeromult:K, uppertri:K, quadratic:D or file:PATH.
    #[arg(long)]
    algebra: String,
}

#[derive(Args, Debug)]
struct AlgebraPoly {
    #[command(flatten)]
    algebra: AlgebraArg,
    /// Polynomial in x1, x2, ... (St(m) and [a,b] are accepted).
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a polynomial is an identity of the algebra.
    CheckIdentity(AlgebraPoly),
    /// Multilinearize a polynomial.
    Multilinearize {
        #[arg(long)]
        poly: String,
    },
    /// Dimension of the multiplication algebra.
    Multdim(AlgebraArg),
    /// Decide whether a unital algebra is central simple.
    CentralSimple(AlgebraArg),
    /// Decide whether a polynomial is central (central values, not an identity).
    CentralPoly(AlgebraPoly),
    /// Basis of the multilinear identities of a given degree.
    IdentitySpace {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: usize,
    },
    /// Least degree of a multilinear identity.
    MinDegree {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Largest degree to try (default dim^2 + 1).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check the independence theorem on sum L_a R_b = sum L_c R_d.
    Ljerry {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Pairs `a1:b1; a2:b2` with independent a_i.
        #[arg(long)]
        lhs: String,
        /// Pairs `c1:d1; ...` (default: the basis-pair expansion of the left side).
        #[arg(long)]
        rhs: Option<String>,
    },
    /// Build a nonzero finite-rank operator from an identity.
    Witness(AlgebraPoly),
    /// Ideals, central values and quotients in M_n(Z).
    Posner {
        #[command(subcommand)]
        command: PosnerCommand,
    },
}

#[derive(Subcommand, Debug)]
enum PosnerCommand {
    /// Ideal of M_n(Z) generated by integer matrices.
    Ideal {
        #[arg(long)]
        n: usize,
        /// Generator `[[a,b],[c,d]]` (repeatable).
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
    },
    /// Nonzero central element of the ideal M_n(kZ).
    Center {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: BigInt,
    },
    /// Apply the trace operator sum L_{e_ij} R_{e_ji}.
    Trace {
        #[arg(long)]
        matrix: String,
    },
    /// Write a rational matrix as z^-1 r with r integral.
    Quotient {
        #[arg(long)]
        matrix: String,
    },
}

/// Exit code and output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, report: &Report, format: Format) -> Self {
        Outcome {
            code,
            stdout: report.render(format),
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        let message = message.to_string();
        let line = message.lines().next().unwrap_or("").trim();
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {line}\n"),
        }
    }
}

/// A failure that ends the command: exit code plus one-line diagnostic.
struct Failure(i32, String);

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn identity_failure(e: IdentityError) -> Failure {
    match e {
        IdentityError::DegreeCapExceeded { .. } => Failure(1, e.to_string()),
        other => Failure(2, other.to_string()),
    }
}

fn kaplansky_failure(e: KaplanskyError) -> Failure {
    match e {
        KaplanskyError::TheoremViolated { .. } | KaplanskyError::Internal(_) | KaplanskyError::NoSeparatingElement => {
            Failure(1, e.to_string())
        }
        other => Failure(2, other.to_string()),
    }
}

fn posner_failure(e: PosnerError) -> Failure {
    match e {
        PosnerError::Internal(_) => Failure(1, e.to_string()),
        other => Failure(2, other.to_string()),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
                    Outcome::error(2, first)
                }
            };
        }
    };
    let opts = CheckOptions {
        threads: cli.threads,
        alternating_fast_path: !cli.no_alternating,
    };
    match execute(&cli.command, &opts) {
        Ok((code, report)) => Outcome::report(code, &report, cli.format),
        Err(Failure(code, message)) => Outcome::error(code, message),
    }
}

fn algebra(arg: &AlgebraArg) -> Result<StructureAlgebra, Failure> {
    input::parse_algebra(&arg.algebra).map_err(input_error)
}

fn algebra_poly(arg: &AlgebraPoly) -> Result<(StructureAlgebra, NcPolynomial), Failure> {
    let alg = algebra(&arg.algebra)?;
    let f = input::parse_polynomial(&arg.poly).map_err(input_error)?;
    Ok((alg, f))
}

fn execute(command: &Command, opts: &CheckOptions) -> Result<(i32, Report), Failure> {
    match command {
        Command::CheckIdentity(arg) => {
            let (alg, f) = algebra_poly(arg)?;
            let check = is_identity(&alg, &f, opts).map_err(identity_failure)?;
            Ok(identity_report(&alg, &check))
        }
        Command::Multilinearize { poly } => {
            let f = input::parse_polynomial(poly).map_err(input_error)?;
            let g = multilinearize(&f).map_err(input_error)?;
            let mut r = Report::untitled();
            r.bare_field("polynomial", &g);
            Ok((0, r))
        }
        Command::Multdim(arg) => {
            let alg = algebra(arg)?;
            let mut r = Report::untitled();
            r.field("dim", alg.dim()).field("mult_dim", mult_algebra_dim(&alg));
            Ok((0, r))
        }
        Command::CentralSimple(arg) => {
            let alg = algebra(arg)?;
            let cs = is_central_simple(&alg).map_err(kaplansky_failure)?;
            let mut r = Report::new(if cs { "CENTRAL SIMPLE" } else { "NOT CENTRAL SIMPLE" });
            r.field("dim", alg.dim()).field("mult_dim", mult_algebra_dim(&alg));
            Ok((if cs { 0 } else { 1 }, r))
        }
        Command::CentralPoly(arg) => {
            let (alg, f) = algebra_poly(arg)?;
            let check = is_central_polynomial(&alg, &f, opts).map_err(identity_failure)?;
            let holds = check.holds();
            let mut r = Report::new(if holds { "CENTRAL" } else { "NOT CENTRAL" });
            r.field("values_central", yes_no(check.values_central()))
                .field("identity", yes_no(check.is_identity()));
            if let Some(failure) = check.commutator_check.as_ref().and_then(|c| c.failure.as_ref()) {
                r.field("commutator", &check.commutator);
                counterexample_fields(&mut r, &alg, &failure.counterexample);
            } else if let Some(failure) = &check.identity_check.failure {
                r.assignment(
                    "nonzero_value_at",
                    &alg,
                    failure.witness.iter().flat_map(|(w, _)| w.iter().map(|(v, e)| (*v, e))),
                );
            }
            Ok((if holds { 0 } else { 1 }, r))
        }
        Command::IdentitySpace { algebra: arg, degree } => {
            let alg = algebra(arg)?;
            let basis = identity_space(&alg, *degree).map_err(identity_failure)?;
            let mut r = Report::untitled();
            r.field("degree", degree).field("dimension", basis.len());
            for (i, b) in basis.iter().enumerate() {
                r.field(format!("basis.{}", i + 1), b);
            }
            Ok((0, r))
        }
        Command::MinDegree { algebra: arg, cap } => {
            let alg = algebra(arg)?;
            let (m, basis) = min_multilinear_identity_degree(&alg, *cap).map_err(identity_failure)?;
            let mut r = Report::untitled();
            r.field("degree", m).field("dimension", basis.len());
            if let Some(first) = basis.first() {
                r.field("identity", first);
            }
            Ok((0, r))
        }
        Command::Ljerry { algebra: arg, lhs, rhs } => {
            let alg = algebra(arg)?;
            let lhs = input::parse_pairs(&alg, lhs).map_err(input_error)?;
            let rhs = match rhs {
                Some(text) => input::parse_pairs(&alg, text).map_err(input_error)?,
                None => basis_pair_expansion(&alg, &lhs).map_err(kaplansky_failure)?,
            };
            let report = verify_martindale(&alg, &lhs, &rhs).map_err(kaplansky_failure)?;
            let mut r = Report::new("VERIFIED");
            r.field("lhs_terms", lhs.len()).field("rhs_terms", rhs.len());
            for (j, (c, d)) in rhs.iter().enumerate() {
                r.element(format!("c.{}", j + 1), &alg, c)
                    .element(format!("d.{}", j + 1), &alg, d);
            }
            for (i, coefficients) in report.coefficients.iter().enumerate() {
                let text = combination(coefficients, "d");
                let machine = coefficients.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                r.split_field(format!("b.{}", i + 1), text, format!("[{machine}]"));
            }
            Ok((0, r))
        }
        Command::Witness(arg) => {
            let (alg, f) = algebra_poly(arg)?;
            let w = finite_rank_witness(&alg, &f, opts).map_err(kaplansky_failure)?;
            Ok((0, witness_report(&alg, &w)?))
        }
        Command::Posner { command } => posner(command),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `2*d1 - 1/2*d3`, or `0`.
fn combination(coefficients: &[polyid_core::Rational], symbol: &str) -> String {
    use num_traits::{One, Signed, Zero};
    let mut s = String::new();
    for (j, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !c.abs().is_one() {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&format!("{symbol}{}", j + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn counterexample_fields(r: &mut Report, alg: &StructureAlgebra, c: &Counterexample) {
    let elements: Vec<(u32, Element)> = c.assignment.iter().map(|(v, i)| (*v, alg.basis(*i))).collect();
    r.assignment("counterexample", alg, elements.iter().map(|(v, e)| (*v, e)));
    r.element("value", alg, &c.value);
}

fn identity_report(alg: &StructureAlgebra, check: &IdentityCheck) -> (i32, Report) {
    let Some(failure) = &check.failure else {
        let mut r = Report::new("IDENTITY");
        r.field("components", check.components);
        return (0, r);
    };
    let mut r = Report::new("NOT IDENTITY");
    r.field("components", check.components)
        .field("component", &failure.component)
        .field("linearized", &failure.linearized);
    counterexample_fields(&mut r, alg, &failure.counterexample);
    if let Some((assignment, value)) = &failure.witness {
        r.assignment("witness", alg, assignment.iter().map(|(v, e)| (*v, e)));
        r.element("witness_value", alg, value);
    }
    (1, r)
}

fn witness_report(alg: &StructureAlgebra, w: &polyid_core::kaplansky::FiniteRankWitness) -> Result<Report, Failure> {
    let d = w.d();
    let d_coords: Vec<Vec<polyid_core::Rational>> = d.iter().map(|e| e.coords().to_vec()).collect();
    let span_d = linalg::rank_of(&d_coords, alg.dim());
    let matrix = w.v.matrix();
    let mut with_range = d_coords.clone();
    with_range.extend((0..matrix.ncols()).map(|c| matrix.column(c)));
    let range_in_span = linalg::rank_of(&with_range, alg.dim()) == span_d;
    let rank = w.v.rank();
    if w.v.is_zero() || !range_in_span || rank > d.len() {
        return Err(Failure(1, "internal error: witness fails its own postconditions".to_string()));
    }
    let mut r = Report::new("CONSTRUCTED");
    r.field("polynomial", &w.polynomial);
    let descent = w.descent.iter().map(|(i, j)| format!("(x{i},x{j})")).collect::<Vec<_>>().join(" ");
    r.field("descent", if descent.is_empty() { "none".to_string() } else { descent })
        .field("pair", format!("(x{},x{})", w.pair.0, w.pair.1));
    let elements: Vec<(u32, Element)> = w.assignment.iter().map(|(v, i)| (*v, alg.basis(*i))).collect();
    r.assignment("assignment", alg, elements.iter().map(|(v, e)| (*v, e)));
    for (i, (a, _)) in w.lefts.iter().enumerate() {
        r.element(format!("a.{}", i + 1), alg, a);
    }
    for (j, e) in d.iter().enumerate() {
        r.element(format!("d.{}", j + 1), alg, e);
    }
    r.field("rank_v", rank)
        .field("span_d", span_d)
        .field("v_nonzero", "yes")
        .field("range_in_span_d", "yes");
    Ok(r)
}

fn posner(command: &PosnerCommand) -> Result<(i32, Report), Failure> {
    let mut r = Report::untitled();
    match command {
        PosnerCommand::Ideal { n, generators } => {
            let gens = generators
                .iter()
                .map(|g| parse_int_matrix(g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(posner_failure)?;
            let ideal = ideal_generated(*n, &gens).map_err(posner_failure)?;
            r.field("n", n)
                .field("k", ideal.k())
                .split_field("ideal", format!("M_{n}({}Z)", ideal.k()), ideal.k());
        }
        PosnerCommand::Center { n, k } => {
            let ideal = IdealOfMnZ::new(*n, k.clone()).map_err(posner_failure)?;
            let w = ideal_center_witness(&ideal).map_err(posner_failure)?;
            r.field("k", ideal.k()).field("central_element", MatrixDisplay(&w));
        }
        PosnerCommand::Trace { matrix } => {
            let x = parse_int_matrix(matrix).map_err(posner_failure)?;
            let t = central_value_operator(x.len()).map_err(posner_failure)?;
            let image = t.apply(&x).map_err(posner_failure)?;
            let tr = trace(&x);
            if image != scalar_matrix(x.len(), &tr) {
                return Err(Failure(1, "internal error: T(x) differs from tr(x)*I".to_string()));
            }
            r.field("trace", &tr).field("image", MatrixDisplay(&image));
        }
        PosnerCommand::Quotient { matrix } => {
            let q = parse_rational_matrix(matrix).map_err(posner_failure)?;
            let (z, rm) = central_quotient_form(&q);
            r.field("z", &z).field("r", MatrixDisplay(&rm));
        }
    }
    Ok((0, r))
}
