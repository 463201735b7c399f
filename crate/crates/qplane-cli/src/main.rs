//! Command-line front-end for the quantum-plane algebra library.
//!
//! Every command prints one result document to stdout: plain text by
//! default, or one line of JSON with `--format json`.  JSON maps are
//! key-sorted, so identical requests produce byte-identical output.
//! Failures print `{"code": "...", "message": "..."}` to stderr and exit
//! nonzero, with the stable codes E_PARSE, E_MODE, E_KIND, and
//! E_INCOMPATIBLE.

mod parser;

use clap::{Parser as _, Subcommand, ValueEnum};
use qplane::classify::{decompose, Decomposition, FlipDecomposition, ToricDecomposition};
use qplane::isotropy::{isotropy, member, FlipCondition, IsotropyDescriptor};
use qplane::qalgebra::AutKind;
use qplane::{
    Automorphism, Error, FieldElem, FieldMode, FlipPart, QElem, SigmaDerivation,
    TwistedCenterShape,
};
use serde_json::{json, Value};

#[derive(clap::Parser)]
#[command(name = "qplane", version, about = "Exact computer algebra for the quantum plane k_q[x, y]")]
struct Cli {
    /// Coefficient field: `generic`, or `cyclotomic:<t>` for q a primitive
    /// t-th root of unity (t >= 2).
    #[arg(long, global = true, default_value = "generic")]
    field: String,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

const SIGMA_HELP: &str = "Twisting automorphism: toric:<mu1>,<mu2> or flip:<mu1>,<mu2>";

#[derive(Subcommand)]
enum Command {
    /// Print the canonical normal form of an element.
    Normalize {
        /// Element expression; `-` reads it from stdin.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiply two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Check a pair of generator images for twisted-Leibniz compatibility.
    Validate {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        /// Proposed image of x.
        #[arg(allow_hyphen_values = true)]
        dx: String,
        /// Proposed image of y.
        #[arg(allow_hyphen_values = true)]
        dy: String,
    },
    /// Apply the derivation with the given generator images to an element.
    Apply {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        #[arg(allow_hyphen_values = true)]
        dx: String,
        #[arg(allow_hyphen_values = true)]
        dy: String,
        /// Element to apply the derivation to.
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Print the generator images of the inner derivation of a witness.
    Inner {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        /// Witness element w of b -> w*sigma(b) - b*w.
        #[arg(allow_hyphen_values = true)]
        witness: String,
    },
    /// Decide innerness; prints a witness when one exists.
    #[command(name = "is_inner")]
    IsInner {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        #[arg(allow_hyphen_values = true)]
        dx: String,
        #[arg(allow_hyphen_values = true)]
        dy: String,
    },
    /// Split a derivation into its canonical components.
    Decompose {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        #[arg(allow_hyphen_values = true)]
        dx: String,
        #[arg(allow_hyphen_values = true)]
        dy: String,
    },
    /// Describe the isotropy group of a derivation inside the automorphism
    /// group.
    Isotropy {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        #[arg(allow_hyphen_values = true)]
        dx: String,
        #[arg(allow_hyphen_values = true)]
        dy: String,
    },
    /// Decide whether an automorphism fixes a derivation under conjugation.
    Member {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
        /// Automorphism to test, same literal form as --sigma.
        #[arg(long)]
        rho: String,
        #[arg(allow_hyphen_values = true)]
        dx: String,
        #[arg(allow_hyphen_values = true)]
        dy: String,
    },
    /// Describe the centralizer of the twist in the automorphism group.
    Centralizer {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
    },
    /// Describe the twisted center associated with the twist.
    #[command(name = "twisted_center")]
    TwistedCenter {
        #[arg(long, default_value = "toric:1,1", help = SIGMA_HELP)]
        sigma: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("{}", json!({ "code": e.code, "message": e.message }));
            std::process::exit(1);
        }
    }
}

/// A failure carrying one of the stable machine-readable codes.
struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: "E_PARSE", message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DivisionByZero | Error::ZeroQPower | Error::ZeroScalar => "E_PARSE",
            Error::InvalidOrder(_) | Error::WrongMode(_) | Error::ModeMismatch(..) => "E_MODE",
            Error::WrongSigmaKind { .. } => "E_KIND",
            Error::IncompatibleImages { .. } => "E_INCOMPATIBLE",
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<parser::ParseError> for CliError {
    fn from(e: parser::ParseError) -> Self {
        CliError::parse(format!("syntax error at byte {}: {}", e.pos, e.msg))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mode = parse_field(&cli.field)?;
    let mut inputs = Inputs { stdin_taken: false };
    let mut expr = |src: &String| -> Result<QElem, CliError> {
        Ok(parser::parse_expr(&inputs.resolve(src)?, mode)?)
    };

    let (text, value) = match &cli.command {
        Command::Normalize { expr: src } => element_doc(&expr(src)?),
        Command::Mul { lhs, rhs } => element_doc(&expr(lhs)?.mul(&expr(rhs)?)),
        Command::Validate { sigma, dx, dy } => {
            let sigma = parse_automorphism(sigma, mode)?;
            match SigmaDerivation::new(sigma, expr(dx)?, expr(dy)?) {
                Ok(_) => ("valid".to_string(), json!({ "residual": Value::Null, "valid": true })),
                Err(Error::IncompatibleImages { residual }) => (
                    format!("invalid: residual = {residual}"),
                    json!({ "residual": residual.to_string(), "valid": false }),
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Apply { sigma, dx, dy, target } => {
            let d = derivation(sigma, &expr(dx)?, &expr(dy)?, mode)?;
            element_doc(&d.apply(&expr(target)?))
        }
        Command::Inner { sigma, witness } => {
            let sigma = parse_automorphism(sigma, mode)?;
            let d = SigmaDerivation::inner_from(&expr(witness)?, &sigma);
            (
                format!("dx = {}\ndy = {}", d.dx(), d.dy()),
                json!({ "dx": d.dx().to_string(), "dy": d.dy().to_string() }),
            )
        }
        Command::IsInner { sigma, dx, dy } => {
            let d = derivation(sigma, &expr(dx)?, &expr(dy)?, mode)?;
            match d.is_inner() {
                Some(w) => (
                    format!("inner, witness = {w}"),
                    json!({ "inner": true, "witness": w.to_string() }),
                ),
                None => ("not inner".to_string(), json!({ "inner": false, "witness": Value::Null })),
            }
        }
        Command::Decompose { sigma, dx, dy } => {
            let d = derivation(sigma, &expr(dx)?, &expr(dy)?, mode)?;
            match decompose(&d) {
                Decomposition::Toric(dec) => toric_decomposition_doc(&dec, mode),
                Decomposition::Flip(dec) => flip_decomposition_doc(&dec, mode),
            }
        }
        Command::Isotropy { sigma, dx, dy } => {
            let d = derivation(sigma, &expr(dx)?, &expr(dy)?, mode)?;
            isotropy_doc(&isotropy(&d), mode)
        }
        Command::Member { sigma, rho, dx, dy } => {
            let d = derivation(sigma, &expr(dx)?, &expr(dy)?, mode)?;
            let rho = parse_automorphism(rho, mode)?;
            let is_member = member(&rho, &d);
            (format!("member = {is_member}"), json!({ "member": is_member }))
        }
        Command::Centralizer { sigma } => centralizer_doc(&parse_automorphism(sigma, mode)?, mode),
        Command::TwistedCenter { sigma } => {
            twisted_center_doc(&parse_automorphism(sigma, mode)?, mode)
        }
    };

    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
    Ok(())
}

/// Resolves expression arguments, reading stdin (at most once) for `-`.
struct Inputs {
    stdin_taken: bool,
}

impl Inputs {
    fn resolve(&mut self, arg: &str) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_taken {
            return Err(CliError::parse("stdin can stand in for only one expression"));
        }
        self.stdin_taken = true;
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::parse(format!("failed to read stdin: {e}")))?;
        Ok(s.trim().to_string())
    }
}

fn parse_field(s: &str) -> Result<FieldMode, CliError> {
    if s == "generic" {
        return Ok(FieldMode::GenericQ);
    }
    match s.strip_prefix("cyclotomic:") {
        Some(t) => {
            let t: u32 = t
                .parse()
                .map_err(|_| CliError::parse(format!("invalid cyclotomic order '{t}'")))?;
            Ok(FieldMode::root_of_unity(t)?)
        }
        None => Err(CliError::parse(format!(
            "unknown field mode '{s}'; use 'generic' or 'cyclotomic:<t>'"
        ))),
    }
}

fn parse_automorphism(literal: &str, mode: FieldMode) -> Result<Automorphism, CliError> {
    let bad_shape = || {
        CliError::parse(format!(
            "automorphism literal '{literal}' must look like 'toric:<mu1>,<mu2>' or 'flip:<mu1>,<mu2>'"
        ))
    };
    let (kind, rest) = literal.split_once(':').ok_or_else(bad_shape)?;
    let (a, b) = rest.split_once(',').ok_or_else(bad_shape)?;
    let mu1 = parse_scalar(a, mode)?;
    let mu2 = parse_scalar(b, mode)?;
    match kind {
        "toric" => Ok(Automorphism::toric(mode, mu1, mu2)?),
        "flip" => Ok(Automorphism::flip(mode, mu1, mu2)?),
        other => Err(CliError::parse(format!("unknown automorphism kind '{other}'"))),
    }
}

fn parse_scalar(src: &str, mode: FieldMode) -> Result<FieldElem, CliError> {
    let e = parser::parse_expr(src, mode)?;
    as_scalar(&e).ok_or_else(|| CliError::parse(format!("'{src}' is not a scalar")))
}

/// The coefficient of an x- and y-degree-zero element.
fn as_scalar(e: &QElem) -> Option<FieldElem> {
    if e.terms().all(|(i, j, _)| (i, j) == (0, 0)) {
        Some(e.coeff(0, 0))
    } else {
        None
    }
}

fn derivation(
    sigma: &str,
    dx: &QElem,
    dy: &QElem,
    mode: FieldMode,
) -> Result<SigmaDerivation, CliError> {
    let sigma = parse_automorphism(sigma, mode)?;
    Ok(SigmaDerivation::new(sigma, dx.clone(), dy.clone())?)
}

type Doc = (String, Value);

fn element_doc(e: &QElem) -> Doc {
    (e.to_string(), json!({ "element": e.to_string() }))
}

fn toric_decomposition_doc(dec: &ToricDecomposition, mode: FieldMode) -> Doc {
    let a: Vec<String> = dec.a_poly().iter().map(|c| mode.text(c)).collect();
    let b: Vec<String> = dec.b_poly().iter().map(|c| mode.text(c)).collect();
    let mn_text = match dec.mn() {
        Some((m, n)) => format!("({m}, {n})"),
        None => "none".to_string(),
    };
    let text = format!(
        "w = {}\na_poly = [{}]\nb_poly = [{}]\nmn = {}\nlambda1 = {}\nlambda2 = {}",
        dec.w(),
        a.join(", "),
        b.join(", "),
        mn_text,
        dec.lambda1(),
        dec.lambda2(),
    );
    let value = json!({
        "a_poly": a,
        "b_poly": b,
        "lambda1": dec.lambda1().to_string(),
        "lambda2": dec.lambda2().to_string(),
        "mn": dec.mn().map(|(m, n)| json!([m, n])).unwrap_or(Value::Null),
        "w": dec.w().to_string(),
    });
    (text, value)
}

fn flip_decomposition_doc(dec: &FlipDecomposition, mode: FieldMode) -> Doc {
    let mut lines = vec![format!("w = {}", dec.w())];
    if dec.slices().is_empty() {
        lines.push("slices = none".to_string());
    }
    for s in dec.slices() {
        lines.push(format!("slice k={}: b0 = {}", s.degree, mode.text(&s.leading)));
    }
    let slices: Vec<Value> = dec
        .slices()
        .iter()
        .map(|s| json!({ "b0": mode.text(&s.leading), "k": s.degree }))
        .collect();
    (lines.join("\n"), json!({ "slices": slices, "w": dec.w().to_string() }))
}

fn flip_part_doc(part: &FlipPart, mode: FieldMode) -> (String, Value) {
    let cond_text = |c: &FlipCondition| match c {
        FlipCondition::UvMonomial { u_exp, v_exp, rhs } => {
            format!("u^{u_exp}*v^{v_exp} = {}", mode.text(rhs))
        }
        FlipCondition::MuMonomial { exp, rhs } => format!("mu^{exp} = {}", mode.text(rhs)),
    };
    let cond_value = |c: &FlipCondition| match c {
        FlipCondition::UvMonomial { u_exp, v_exp, rhs } => {
            json!({ "kind": "uv", "rhs": mode.text(rhs), "u_exp": u_exp, "v_exp": v_exp })
        }
        FlipCondition::MuMonomial { exp, rhs } => {
            json!({ "exp": exp, "kind": "mu", "rhs": mode.text(rhs) })
        }
    };
    match part {
        FlipPart::NotApplicable => ("none".to_string(), Value::Null),
        FlipPart::Empty => ("empty".to_string(), json!({ "empty": true })),
        FlipPart::Conditions(cs) if cs.is_empty() => {
            ("unconstrained".to_string(), json!({ "conditions": [] }))
        }
        FlipPart::Conditions(cs) => {
            let texts: Vec<String> = cs.iter().map(cond_text).collect();
            let values: Vec<Value> = cs.iter().map(cond_value).collect();
            (format!("conditions: {}", texts.join("; ")), json!({ "conditions": values }))
        }
    }
}

fn isotropy_doc(desc: &IsotropyDescriptor, mode: FieldMode) -> Doc {
    let (flip_text, flip_value) = flip_part_doc(desc.flip_part(), mode);
    let mut lines = Vec::new();
    if let Some(part) = desc.toric() {
        let vectors: Vec<String> =
            part.lattice.vectors().map(|(u, v)| format!("({u}, {v})")).collect();
        lines.push(format!("lattice = {{{}}}", vectors.join(", ")));
        let (d1, d2) = part.structure.invariant_factors;
        lines.push(format!("invariant_factors = ({d1}, {d2})"));
        lines.push(format!("is_finite = {}", part.structure.is_finite));
        match part.structure.order {
            Some(o) => lines.push(format!("order = {o}")),
            None => lines.push("order = infinite".to_string()),
        }
    }
    if let Some(diag) = desc.diagonal() {
        let exps: Vec<String> = diag.exponents.iter().map(u64::to_string).collect();
        lines.push(format!("diagonal_exponents = [{}]", exps.join(", ")));
        lines.push(format!("diagonal_order = {}", diag.order));
    }
    lines.push(format!("flip_part = {flip_text}"));
    let value = json!({
        "diagonal": desc
            .diagonal()
            .map(|d| json!({ "exponents": &d.exponents, "order": d.order }))
            .unwrap_or(Value::Null),
        "flip_part": flip_value,
        "invariant_factors": desc
            .toric()
            .map(|t| json!([t.structure.invariant_factors.0, t.structure.invariant_factors.1]))
            .unwrap_or(Value::Null),
        "is_finite": desc.toric().map(|t| json!(t.structure.is_finite)).unwrap_or(Value::Null),
        "lattice": desc
            .toric()
            .map(|t| Value::Array(t.lattice.vectors().map(|(u, v)| json!([u, v])).collect()))
            .unwrap_or(Value::Null),
        "order": desc
            .toric()
            .and_then(|t| t.structure.order)
            .map(|o| json!(o))
            .unwrap_or(Value::Null),
    });
    (lines.join("\n"), value)
}

fn centralizer_doc(sigma: &Automorphism, mode: FieldMode) -> Doc {
    match sigma.kind() {
        AutKind::Toric => {
            let flips_too = mode.t() == 2 && sigma.mu1() == sigma.mu2();
            let flip_line =
                if flips_too { "flip part: all flip automorphisms" } else { "flip part: none" };
            let text = format!("toric part: all diagonal automorphisms\n{flip_line}");
            let value = json!({
                "flip": if flips_too { "all" } else { "none" },
                "toric": "all",
            });
            (text, value)
        }
        AutKind::Flip => {
            let ratio = sigma.mu2().div(sigma.mu1()).expect("nonzero factors");
            let r = mode.text(&ratio);
            let text = format!(
                "toric part: the diagonal family (mu, mu)\nflip part: the family (mu, r*mu) with r = {r}"
            );
            let value = json!({ "flip": { "ratio": r }, "toric": "diagonal" });
            (text, value)
        }
    }
}

fn twisted_center_doc(sigma: &Automorphism, mode: FieldMode) -> Doc {
    let center = match mode {
        FieldMode::GenericQ => "k".to_string(),
        FieldMode::RootOfUnity { t } => format!("k[x^{t}, y^{t}]"),
    };
    match sigma.twisted_center().shape() {
        TwistedCenterShape::Zero => {
            ("0".to_string(), json!({ "monomial": Value::Null, "shape": "zero" }))
        }
        TwistedCenterShape::FullPolynomialCenter => {
            (center, json!({ "monomial": Value::Null, "shape": "center" }))
        }
        TwistedCenterShape::CenterTimesMonomial { x_exp, y_exp } => (
            format!("{center}*{}", monomial_text(x_exp, y_exp)),
            json!({ "monomial": [x_exp, y_exp], "shape": "center_times_monomial" }),
        ),
    }
}

/// `y^j*x^i` in the y-before-x display convention.
fn monomial_text(x_exp: u32, y_exp: u32) -> String {
    let mut parts = Vec::new();
    match y_exp {
        0 => {}
        1 => parts.push("y".to_string()),
        j => parts.push(format!("y^{j}")),
    }
    match x_exp {
        0 => {}
        1 => parts.push("x".to_string()),
        i => parts.push(format!("x^{i}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
