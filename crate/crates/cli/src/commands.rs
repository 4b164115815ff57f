//! Argument parsing and the four subcommands.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walshcode_core::code::{validate, CodeInstance, CodeKind, Domain};
use walshcode_core::enumerators::{certify_against, predict_general};
use walshcode_core::families::{
    self, gcd, integer_conditions, series6_conditions, series6_h_for, Family, QuadraticShape,
};
use walshcode_core::{Error, WalshSpectrum};

use crate::descriptor::{self, FamilyParams, FunctionDescriptor, Resolved};
use crate::emit::{self, EnumeratorDocument};
use crate::error::{CliError, Result};
use crate::parallel;
use crate::report::{self, CertifyDocument, ConditionDoc, FamilyParamsDoc, FamilyReport, WalshDocument};

/// Full Walsh vectors are printed only up to this degree unless forced.
const DUMP_MAX_N: u32 = 20;

#[derive(Debug, Parser)]
#[command(name = "walshcode", version, about = "Linear codes over GF(2^t) from Boolean functions on GF(2^n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walsh spectrum, classification and admissible subfields
    Walsh(WalshArgs),
    /// Codeword stream, generator matrix or weight enumerator of a code
    Build(BuildArgs),
    /// Closed-form enumerators against exhaustive enumeration
    Certify(CertifyArgs),
    /// Construction families and their conditions
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InlineKind {
    Monomial,
    Quadratic,
    Raw,
    Family,
}

/// Where the function comes from: a descriptor document or inline flags.
#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// JSON descriptor file
    #[arg(long, value_name = "FILE", conflicts_with_all = ["spec", "kind"])]
    pub descriptor: Option<PathBuf>,
    /// JSON descriptor text
    #[arg(long, value_name = "JSON", conflicts_with = "kind")]
    pub spec: Option<String>,
    #[arg(long, value_enum)]
    pub kind: Option<InlineKind>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Monomial exponent
    #[arg(long)]
    pub d: Option<u64>,
    /// Monomial or family coefficient
    #[arg(long, value_name = "HEX")]
    pub alpha: Option<String>,
    /// Quadratic coefficients of Tr(x^(1+2^i)) for i = 1, 2, ...
    #[arg(long, value_name = "HEX,...", value_delimiter = ',')]
    pub coeffs: Vec<String>,
    /// Coefficient of the half-trace term
    #[arg(long, value_name = "HEX")]
    pub half: Option<String>,
    /// Quadratic shape name (see `families list`)
    #[arg(long, default_value = "other")]
    pub shape: String,
    /// Truth table
    #[arg(long, value_name = "HEX")]
    pub table: Option<String>,
    /// Family name
    #[arg(long)]
    pub name: Option<String>,
    /// Family parameter h
    #[arg(long)]
    pub h: Option<u32>,
    /// Field polynomial including the leading term, e.g. 25 for x^5 + x^2 + 1
    #[arg(long, value_name = "HEX")]
    pub poly: Option<String>,
}

fn required<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.clone().ok_or_else(|| CliError::Usage(format!("--{flag} is required for --kind {kind}")))
}

impl FunctionArgs {
    pub fn descriptor(&self) -> Result<FunctionDescriptor> {
        if let Some(path) = &self.descriptor {
            return FunctionDescriptor::parse(&fs::read_to_string(path)?);
        }
        if let Some(text) = &self.spec {
            return FunctionDescriptor::parse(text);
        }
        let Some(kind) = self.kind else {
            return Err(CliError::Usage("give --descriptor, --spec or --kind".into()));
        };
        Ok(match kind {
            InlineKind::Monomial => FunctionDescriptor::Monomial {
                n: required(&self.n, "n", "monomial")?,
                d: required(&self.d, "d", "monomial")?,
                alpha_hex: self.alpha.clone().unwrap_or_else(|| "1".into()),
                poly_hex: None,
            },
            InlineKind::Quadratic => FunctionDescriptor::Quadratic {
                n: required(&self.n, "n", "quadratic")?,
                shape: self.shape.clone(),
                coeffs_hex: self.coeffs.clone(),
                half_hex: self.half.clone(),
                poly_hex: None,
            },
            InlineKind::Raw => FunctionDescriptor::Raw {
                n: required(&self.n, "n", "raw")?,
                truth_table_hex: required(&self.table, "table", "raw")?,
                poly_hex: None,
            },
            InlineKind::Family => FunctionDescriptor::Family {
                name: required(&self.name, "name", "family")?,
                params: FamilyParams {
                    n: required(&self.n, "n", "family")?,
                    h: self.h,
                    alpha_hex: self.alpha.clone(),
                    poly_hex: None,
                },
            },
        })
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let poly = self.poly.as_deref().map(|p| descriptor::parse_poly(p, 31)).transpose()?;
        self.descriptor()?.resolve(poly)
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Args)]
pub struct WalshArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub json: bool,
    /// Also print every Walsh value, indexed by y
    #[arg(long)]
    pub dump: bool,
    /// Allow --dump above n = 20
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
    Genmatrix,
    Json,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Degree of the symbol field GF(2^t)
    #[arg(long)]
    pub t: u32,
    /// Code indexed by all zeros of f (default)
    #[arg(long, conflicts_with = "reduced")]
    pub full: bool,
    /// Code indexed by one representative per subfield coset
    #[arg(long)]
    pub reduced: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub emit: Emit,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub t: u32,
    /// Print the full comparison document as JSON
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    /// Descriptor file whose spectrum supplies the prediction instead
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FamiliesAction {
    /// Families, exponents, conditions and quadratic shapes
    List,
    /// Evaluate a family's conditions for one parameter tuple
    Conditions(ConditionsArgs),
}

#[derive(Debug, Args)]
pub struct ConditionsArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long, conflicts_with = "l")]
    pub h: Option<u64>,
    /// series6 only: h = 30 l + 21
    #[arg(long)]
    pub l: Option<u64>,
    /// Symbol field degree to check invariance against
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long, value_name = "HEX")]
    pub alpha: Option<String>,
    #[arg(long, value_name = "HEX")]
    pub poly: Option<String>,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Walsh(a) => walsh(a, out),
        Command::Build(a) => build(a, out),
        Command::Certify(a) => certify(a, out, err),
        Command::Families { action: FamiliesAction::List } => list_families(out),
        Command::Families { action: FamiliesAction::Conditions(a) } => conditions(a, out),
    }
}

fn degrees(domain: &Domain) -> Vec<u32> {
    match domain {
        Domain::Single(f) => vec![f.n()],
        Domain::Product(p) => {
            let (a, b) = p.factors();
            vec![a.n(), b.n()]
        }
    }
}

fn admissible(domain: &Domain) -> Vec<u32> {
    let g = degrees(domain).into_iter().fold(0u64, |g, n| gcd(g, n as u64)) as u32;
    let invariant = |t: u32| match domain {
        Domain::Single(f) => f.is_coset_invariant(t).unwrap_or(false),
        Domain::Product(p) => {
            let (a, b) = p.factors();
            a.is_coset_invariant(t).unwrap_or(false) && b.is_coset_invariant(t).unwrap_or(false)
        }
    };
    (1..=g).filter(|&t| g % t == 0 && invariant(t) && validate(domain, t).passed()).collect()
}

fn walsh_vector(domain: &Domain) -> Vec<i64> {
    match domain {
        Domain::Single(f) => f.walsh_full(),
        Domain::Product(p) => {
            let (a, b) = p.factors();
            let (wa, wb) = (a.walsh_full(), b.walsh_full());
            wa.iter().flat_map(|x| wb.iter().map(move |y| x * y)).collect()
        }
    }
}

fn walsh(a: &WalshArgs, out: &mut dyn Write) -> Result<()> {
    let resolved = a.function.resolve()?;
    let domain = &resolved.domain;
    let n = domain.degree();
    if a.dump && n > DUMP_MAX_N && !a.force {
        return Err(CliError::Usage(format!("--dump is limited to n <= {DUMP_MAX_N}; add --force")));
    }
    let spectrum: WalshSpectrum = domain.spectrum();
    let doc = WalshDocument {
        n: degrees(domain),
        q: domain.order(),
        f_at_zero: domain.f_at_zero(),
        w_at_zero: spectrum.at_zero(),
        spectrum: report::spectrum_entries(&spectrum),
        class: report::classify(&spectrum, n),
        admissible_t: admissible(domain),
        truth_table_hex: match domain {
            Domain::Single(f) if n <= DUMP_MAX_N => Some(crate::hex::encode_table(f)),
            _ => None,
        },
        family: resolved.family.as_ref().map(FamilyReport::from_descriptor),
        walsh: a.dump.then(|| walsh_vector(domain)),
    };
    if a.json {
        writeln!(out, "{}", emit::to_json(&doc))?;
    } else {
        out.write_all(doc.render(&spectrum).as_bytes())?;
    }
    Ok(())
}

/// Validates first so that a failure reports every hypothesis.
fn instance(resolved: &Resolved, t: u32) -> Result<CodeInstance> {
    let report = validate(&resolved.domain, t);
    if !report.passed() {
        return Err(CliError::Validation(report.to_string()));
    }
    Ok(CodeInstance::build(resolved.domain.clone(), t)?)
}

fn build(a: &BuildArgs, out: &mut dyn Write) -> Result<()> {
    let resolved = a.function.resolve()?;
    let inst = instance(&resolved, a.t)?;
    let kind = if a.reduced { CodeKind::Reduced } else { CodeKind::Full };
    match a.emit {
        Emit::Csv => emit::write_csv(out, &inst, kind, a.workers)?,
        Emit::Genmatrix => emit::write_genmatrix(out, &inst, kind)?,
        Emit::Json => {
            let brute = parallel::bruteforce(&inst, a.workers);
            let dim = emit::dimension_of(brute.distinct_codewords(), a.t);
            let doc = match kind {
                CodeKind::Full => EnumeratorDocument::new(&brute.full_we, dim, "bruteforce").with_cwe(&brute.full_cwe),
                CodeKind::Reduced => EnumeratorDocument::new(&brute.reduced_we, dim, "bruteforce"),
            };
            writeln!(out, "{}", emit::to_json(&doc))?;
        }
    }
    Ok(())
}

fn certify(a: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let resolved = a.function.resolve()?;
    let inst = instance(&resolved, a.t)?;
    let prediction = match &a.reference {
        None => predict_general(inst.spectrum(), a.t, inst.f_at_zero()),
        Some(path) => {
            let reference = FunctionDescriptor::parse(&fs::read_to_string(path)?)?.resolve(None)?.domain;
            predict_general(&reference.spectrum(), a.t, reference.f_at_zero())
        }
    };
    let start = Instant::now();
    let brute = parallel::bruteforce(&inst, a.workers);
    let report = certify_against(&inst, brute, prediction);
    let secs = start.elapsed().as_secs_f64();
    if a.json {
        writeln!(out, "{}", emit::to_json(&CertifyDocument::new(&report)))?;
    } else {
        writeln!(out, "{report}")?;
    }
    writeln!(err, "q = {}, N = {}, wall time {secs:.3} s", inst.order(), inst.full_length())?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(CliError::Mismatch(match &c.detail {
            Some(d) => format!("{}: {d}", c.name),
            None => format!("{}: predicted {} observed {}", c.name, c.predicted, c.observed),
        })),
    }
}

fn list_families(out: &mut dyn Write) -> Result<()> {
    writeln!(out, "bent monomials Tr(alpha x^d), n = 2m")?;
    for f in Family::ALL.iter().filter(|f| f.is_bent()) {
        writeln!(out, "  {:<9} d = {:<25} {}", f.name(), f.exponent_formula(), f.conditions_text())?;
    }
    writeln!(out, "three-valued monomials Tr(x^d), values {{0, ±A}}")?;
    for f in Family::ALL.iter().filter(|f| !f.is_bent()) {
        writeln!(
            out,
            "  {:<9} d = {:<25} {:<16} A = {}",
            f.name(),
            f.exponent_formula(),
            f.conditions_text(),
            f.amplitude_formula()
        )?;
    }
    writeln!(out, "quadratic shapes")?;
    for s in QuadraticShape::ALL {
        writeln!(out, "  {:<18} {}", s.name(), s.describe())?;
    }
    Ok(())
}

fn conditions(a: &ConditionsArgs, out: &mut dyn Write) -> Result<()> {
    let family = Family::from_name(&a.name).ok_or_else(|| CliError::UnknownFamily(a.name.clone()))?;
    let h = match (a.h, a.l) {
        (_, Some(l)) if family == Family::Series6 => Some(series6_h_for(l)),
        (_, Some(_)) => return Err(CliError::Usage("--l applies to series6 only".into())),
        (h, None) => h,
    };
    let mut doc = FamilyReport {
        kind: "family",
        name: family.name().into(),
        params: FamilyParamsDoc { n: a.n, h, l: a.l, t: a.t, alpha_hex: a.alpha.clone() },
        exponent_formula: family.exponent_formula().into(),
        d: None,
        conditions: Vec::new(),
        certification: None,
        note: None,
    };
    let small_h = h.map(u32::try_from).transpose().ok().flatten();
    if family == Family::Series6 {
        let h = h.ok_or_else(|| Error::BadParams("series6 needs --h or --l".into()))?;
        let t = a.t.unwrap_or(5);
        doc.params.t = Some(t);
        doc.conditions = series6_conditions(h, a.n as u64, t).iter().map(ConditionDoc::from).collect();
    } else {
        if h.is_some() && small_h.is_none() {
            return Err(Error::BadParams("h does not fit in 32 bits".into()).into());
        }
        doc.conditions = integer_conditions(family, a.n, small_h, a.t)?.iter().map(ConditionDoc::from).collect();
    }
    if (2..=24).contains(&a.n) && (family != Family::Series6 || small_h.is_some_and(|h| h <= 39)) {
        let poly = a.poly.as_deref().map(|p| descriptor::parse_poly(p, a.n)).transpose()?;
        let field = descriptor::field(a.n, None, poly)?;
        let alpha = a
            .alpha
            .as_deref()
            .map(|s| crate::hex::parse_element(s, a.n).map_err(|e| CliError::hex("alpha", e)))
            .transpose()?;
        let built = if family.is_bent() {
            families::monomial_bent(field, family, small_h, alpha.unwrap_or(1))
        } else {
            families::semibent_monomial(field, family, small_h)
        };
        match built {
            Ok(inst) => {
                let desc = inst.descriptor;
                doc.d = Some(desc.d.to_string());
                for c in doc.conditions.iter_mut().filter(|c| c.holds.is_none()) {
                    if let Some(found) = desc.conditions.iter().find(|k| k.text == c.text) {
                        *c = ConditionDoc::from(found);
                    }
                }
                doc.certification =
                    Some(report::certification_doc(desc.certification.claim, &desc.certification.spectrum, desc.certification.passed));
            }
            Err(e) => doc.note = Some(format!("function not built: {e}")),
        }
    } else {
        doc.note = Some(format!("field not built (n = {})", a.n));
    }
    if a.json {
        writeln!(out, "{}", emit::to_json(&doc))?;
    } else {
        out.write_all(doc.render().as_bytes())?;
    }
    Ok(())
}
