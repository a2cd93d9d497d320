//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::adjoint::{nu_adjoint, table1_row, valid_m, Method};
use crate::arith::CycNum;
use crate::constructors::{book_hopf, group_algebra, BookHopfParams, GroupPresentation};
use crate::hopf::HopfAlgebra;
use crate::interchange::{algebra_from_json, algebra_to_json, module_from_json};
use crate::linalg::SparseVec;
use crate::modules::{jedwab_mu, mu_n, HModule, IndicatorReport};

/// Above this dimension `kmn --n -1` reads the value off the integral.
const KMN_INTEGRAL_DIM: usize = 1000;

#[derive(Parser, Debug)]
#[command(name = "hopf-fs", version, about = "Exact Frobenius-Schur indicators of Hopf algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Fail if a value is not rational.
    #[arg(long, global = true)]
    pub rational_only: bool,
    /// Worker threads for sweeps (0 = rayon default).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    /// No progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Hopf algebra axioms.
    Verify {
        algebra: AlgebraSpec,
        /// Refuse algebras above this dimension.
        #[arg(long, default_value_t = 256)]
        max_dim: usize,
    },
    /// KMN indicators Tr(S ∘ id^{*(n-1)}).
    Kmn {
        algebra: AlgebraSpec,
        #[arg(long, allow_hyphen_values = true)]
        n: Range,
    },
    /// Left integral, ε(Λ), S²(Λ) = cΛ and the dual integral.
    Integrals { algebra: AlgebraSpec },
    /// Basis of the center.
    Center {
        algebra: AlgebraSpec,
        /// Print at most this many basis vectors.
        #[arg(long, default_value_t = 64)]
        max_print: usize,
    },
    /// ν_{n,r} of the adjoint object.
    NuAdj {
        algebra: AlgebraSpec,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: Range,
        /// fast (n = 1 only), general, semisimple or group.
        #[arg(long)]
        method: Option<Method>,
    },
    /// ν_{n,r} of a module from a file, with φ found automatically.
    NuModule {
        algebra: AlgebraSpec,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, allow_hyphen_values = true)]
        n: Range,
        #[arg(long, allow_hyphen_values = true)]
        r: Range,
    },
    /// μ(V) from the annihilator and μ_2(V) from the indicator.
    Jedwab {
        algebra: AlgebraSpec,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// ν_{1,r}(ω_N, m) for every valid m, with both readings of e.
    Table1 {
        #[arg(long, default_value_t = 27)]
        order: usize,
        #[arg(long, default_value = "1,3,9", allow_hyphen_values = true)]
        r: Range,
    },
    /// Write an algebra in the interchange format.
    Export {
        algebra: AlgebraSpec,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct ModuleArg {
    /// Module file (interchange format).
    #[arg(long = "module")]
    pub path: PathBuf,
}

/// `group:NAME[,N]`, `cayley:PATH[,N]`, `book:N,m[,s]` or `file:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Group { name: String, order: usize },
    Cayley { path: PathBuf, order: usize },
    Book { n: usize, m: usize, s: usize },
    File(PathBuf),
}

impl FromStr for AlgebraSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("{s:?}: expected KIND:ARGS"))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a number"));
        let with_order = |rest: &str| -> Result<(String, usize), String> {
            match rest.rsplit_once(',') {
                Some((a, b)) if b.trim().parse::<usize>().is_ok() => Ok((a.to_string(), num(b)?)),
                _ => Ok((rest.to_string(), 1)),
            }
        };
        match kind {
            "group" => {
                let (name, order) = with_order(rest)?;
                Ok(AlgebraSpec::Group { name, order })
            }
            "cayley" => {
                let (path, order) = with_order(rest)?;
                Ok(AlgebraSpec::Cayley { path: path.into(), order })
            }
            "book" => {
                let parts = rest.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
                match parts[..] {
                    [n, m] => Ok(AlgebraSpec::Book { n, m, s: 1 }),
                    [n, m, s] => Ok(AlgebraSpec::Book { n, m, s }),
                    _ => Err(format!("{s:?}: expected book:N,m[,s]")),
                }
            }
            "file" => Ok(AlgebraSpec::File(rest.into())),
            _ => Err(format!("unknown algebra kind {kind:?} (group, cayley, book, file)")),
        }
    }
}

/// Integers: `5`, `-2..3` (inclusive), `1,3,9`, or a mix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range(pub Vec<i64>);

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("{t:?} is not an integer"));
            // "a..b" with a possibly negative: split on the first ".." not at position 0
            match part.find("..") {
                Some(i) => {
                    let (a, b) = (&part[..i], part[i + 2..].trim_start_matches('='));
                    let (a, b) = (int(a)?, int(b)?);
                    if a > b {
                        return Err(format!("empty range {part:?}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(int(part)?),
            }
        }
        Ok(Range(out))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{kind}: {message}")]
    Compute { kind: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn compute<E: std::fmt::Debug + std::fmt::Display>(family: &str, e: E) -> CliError {
        let debug = format!("{e:?}");
        // variant path, e.g. "Hopf(NotSemisimple)"
        let mut head: String = debug.chars().take_while(|c| c.is_alphanumeric() || *c == '_' || *c == '(').collect();
        while head.ends_with('(') {
            head.pop();
        }
        let open = head.matches('(').count();
        head.extend(std::iter::repeat_n(')', open));
        CliError::Compute { kind: format!("{family}::{head}"), message: e.to_string() }
    }
}

macro_rules! impl_from_compute {
    ($($t:ty => $name:literal),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::compute($name, e)
            }
        }
    )*};
}

impl_from_compute!(
    crate::hopf::HopfError => "HopfError",
    crate::modules::ModuleError => "ModuleError",
    crate::interchange::InterchangeError => "InterchangeError",
    crate::constructors::ConstructError => "ConstructError",
    crate::arith::ArithError => "ArithError"
);

pub struct Resolved {
    pub hopf: Arc<HopfAlgebra>,
    pub group: Option<GroupPresentation>,
}

#[derive(serde::Deserialize)]
struct CayleyFile {
    name: String,
    cayley: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

pub fn resolve(spec: &AlgebraSpec) -> Result<Resolved, CliError> {
    let from_group = |g: GroupPresentation, order: usize| Resolved {
        hopf: Arc::new(group_algebra(&g, order)),
        group: Some(g),
    };
    Ok(match spec {
        AlgebraSpec::Group { name, order } => from_group(GroupPresentation::builtin(name)?, *order),
        AlgebraSpec::Cayley { path, order } => {
            let file: CayleyFile = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            from_group(GroupPresentation::new(file.name, file.cayley, file.names)?, *order)
        }
        AlgebraSpec::Book { n, m, s } => Resolved {
            hopf: Arc::new(book_hopf(BookHopfParams::new(*n, *m, *s)?)),
            group: None,
        },
        AlgebraSpec::File(path) => Resolved {
            hopf: Arc::new(algebra_from_json(&std::fs::read_to_string(path)?)?),
            group: None,
        },
    })
}

fn load_module(alg: &Resolved, arg: &ModuleArg) -> Result<HModule, CliError> {
    let text = std::fs::read_to_string(&arg.path)?;
    Ok(module_from_json(alg.hopf.clone(), alg.group.as_ref(), &text)?)
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Text(String),
    Num(CycNum),
    Bool(bool),
    Missing,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Num(c) => c.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Num(c) => Value::from(c.to_string()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

/// Rows of named cells plus free-form notes.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<(String, String)>,
}

impl Output {
    fn new(columns: &[&str]) -> Output {
        Output { columns: columns.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    fn check_rational(&self) -> Result<(), CliError> {
        for row in &self.rows {
            for cell in row {
                if let Cell::Num(c) = cell {
                    if c.as_rational().is_none() {
                        return Err(CliError::Usage(format!("value {c} is not rational")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders in the requested format. JSON is one object per line; notes
    /// come first as a `{"note": …}` object when present.
    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Human => {
                for (k, v) in &self.notes {
                    writeln!(s, "# {k}: {v}").unwrap();
                }
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([self.columns[j].len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: Vec<&str>| {
                    let padded: Vec<String> = items.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(s, "{}", line(self.columns.iter().map(String::as_str).collect())).unwrap();
                for r in &cells {
                    writeln!(s, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
                }
            }
            Format::Json => {
                if !self.notes.is_empty() {
                    let notes: Map<String, Value> = self.notes.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect();
                    writeln!(s, "{}", serde_json::json!({ "note": notes })).unwrap();
                }
                for r in &self.rows {
                    let obj: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    writeln!(s, "{}", Value::Object(obj)).unwrap();
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).unwrap();
                for r in &self.rows {
                    w.write_record(r.iter().map(Cell::render)).unwrap();
                }
                s = String::from_utf8(w.into_inner().unwrap()).unwrap();
            }
        }
        s
    }
}

fn element_string(h: &HopfAlgebra, v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| {
            let name = h.basis_name(*i);
            if c.is_one() {
                name
            } else if c.as_rational().is_some() || c.as_root_of_unity_multiple().is_some() {
                format!("{c}*{name}")
            } else {
                format!("({c})*{name}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn report_rows(out: &mut Output, reports: Vec<IndicatorReport>) {
    for rep in reports {
        out.push(vec![
            Cell::Int(rep.n),
            Cell::Int(rep.r),
            Cell::Num(rep.value),
            Cell::Int(rep.invariant_dim as i64),
            rep.e_matrix_order.map_or(Cell::Missing, |o| Cell::Int(o as i64)),
            Cell::Text(rep.method),
        ]);
    }
}

const REPORT_COLUMNS: [&str; 6] = ["n", "r", "value", "invariant_dim", "e_order", "method"];

/// Runs one command; the boolean is false when a check failed.
pub fn execute(cli: &Cli, progress: &(dyn Fn(&str) + Sync)) -> Result<(Output, bool), CliError> {
    let mut ok = true;
    let out = match &cli.command {
        Command::Verify { algebra, max_dim } => {
            let alg = resolve(algebra)?;
            if alg.hopf.dim() > *max_dim {
                return Err(CliError::Usage(format!(
                    "dimension {} exceeds --max-dim {max_dim}",
                    alg.hopf.dim()
                )));
            }
            let report = alg.hopf.verify_axioms();
            let mut out = Output::new(&["axiom", "passed", "witness"]);
            out.note("algebra", alg.hopf.label());
            for c in &report.checks {
                let witness = c.witness.as_ref().map_or(Cell::Missing, |w| {
                    Cell::Text(w.iter().map(|&i| alg.hopf.basis_name(i)).collect::<Vec<_>>().join(","))
                });
                out.push(vec![Cell::Text(c.name.into()), Cell::Bool(c.passed), witness]);
            }
            ok = report.all_passed();
            out
        }
        Command::Kmn { algebra, n } => {
            let alg = resolve(algebra)?;
            let h = &alg.hopf;
            let mut out = Output::new(&["n", "value", "method"]);
            for &k in &n.0 {
                progress(&format!("kmn n={k}"));
                let (value, method) = if k == -1 && h.dim() > KMN_INTEGRAL_DIM {
                    (h.integral_scalar()?, "integral")
                } else {
                    (h.kmn_indicator(k)?, "convolution")
                };
                out.push(vec![Cell::Int(k), Cell::Num(value), Cell::Text(method.into())]);
            }
            out
        }
        Command::Integrals { algebra } => {
            let alg = resolve(algebra)?;
            let h = &alg.hopf;
            let big = h.left_integral()?;
            let eps = h.counit_of(&big);
            let mut out = Output::new(&["quantity", "value"]);
            out.push(vec![Cell::Text("left_integral".into()), Cell::Text(element_string(h, &big))]);
            out.push(vec![Cell::Text("counit_of_integral".into()), Cell::Num(eps.clone())]);
            out.push(vec![Cell::Text("s2_scalar".into()), Cell::Num(h.integral_scalar()?)]);
            out.push(vec![Cell::Text("semisimple".into()), Cell::Bool(!eps.is_zero())]);
            if !eps.is_zero() {
                let normalized = h.normalized_left_integral()?;
                let lambda = h.dual_right_integral(&normalized)?;
                let dual = SparseVec::from_dense(&lambda);
                out.push(vec![Cell::Text("dual_integral".into()), Cell::Text(element_string(h, &dual))]);
            }
            out
        }
        Command::Center { algebra, max_print } => {
            let alg = resolve(algebra)?;
            let h = &alg.hopf;
            let center = h.center_basis();
            let mut out = Output::new(&["index", "element"]);
            out.note("algebra", h.label());
            out.note("dimension", center.len().to_string());
            if center.len() > *max_print {
                out.note("basis", format!("suppressed (more than {max_print} vectors)"));
            } else {
                for (i, v) in center.iter().enumerate() {
                    out.push(vec![Cell::Int(i as i64), Cell::Text(element_string(h, v))]);
                }
            }
            out
        }
        Command::NuAdj { algebra, n, r, method } => {
            let alg = resolve(algebra)?;
            let method = method.unwrap_or(if *n == 1 { Method::Fast } else { Method::General });
            progress(&format!("nu-adj {} n={n} ({method:?})", alg.hopf.label()));
            let mut out = Output::new(&REPORT_COLUMNS);
            report_rows(&mut out, nu_adjoint(&alg.hopf, alg.group.as_ref(), *n, &r.0, method)?);
            out
        }
        Command::NuModule { algebra, module, n, r } => {
            let alg = resolve(algebra)?;
            let v = load_module(&alg, module)?;
            let piv = v.find_pivotal()?.ok_or_else(|| {
                CliError::compute("ModuleError", crate::modules::ModuleError::NoPivotalIso)
            })?;
            let mut out = Output::new(&REPORT_COLUMNS);
            for &k in &n.0 {
                progress(&format!("nu-module n={k}"));
                report_rows(&mut out, piv.nu_sweep(k, &r.0)?);
            }
            out
        }
        Command::Jedwab { algebra, module } => {
            let alg = resolve(algebra)?;
            let v = load_module(&alg, module)?;
            let mut out = Output::new(&["quantity", "value"]);
            out.push(vec![Cell::Text("mu".into()), Cell::Num(jedwab_mu(&v)?)]);
            out.push(vec![Cell::Text("mu_2".into()), Cell::Num(mu_n(&v, 2)?)]);
            out
        }
        Command::Table1 { order, r } => table1(*order, &r.0, cli.format, progress)?,
        Command::Export { algebra, output } => {
            let alg = resolve(algebra)?;
            let json = algebra_to_json(&alg.hopf)?;
            match output {
                Some(path) => std::fs::write(path, json + "\n")?,
                None => println!("{json}"),
            }
            Output::default()
        }
    };
    if cli.rational_only {
        out.check_rational()?;
    }
    Ok((out, ok))
}

fn table1(order: usize, rs: &[i64], format: Format, progress: &(dyn Fn(&str) + Sync)) -> Result<Output, CliError> {
    let ms = valid_m(order);
    let total = ms.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let rows = ms
        .par_iter()
        .map(|&m| {
            let row = table1_row(order, m, rs)?;
            let k = done.fetch_add(1, std::sync::atomic::Ordering::SeqCst) + 1;
            progress(&format!("table1 N={order}: m={m} done ({k}/{total})"));
            Ok(row)
        })
        .collect::<Result<Vec<_>, crate::modules::ModuleError>>()?;
    let mut columns = vec!["m".to_string()];
    columns.extend(rs.iter().map(|r| format!("nu_1_{r}")));
    columns.extend(["e_table_reading".into(), "e_text_reading".into()]);
    let with_measured = format != Format::Csv;
    if with_measured {
        columns.extend(["e_measured".into(), "center_dim".into()]);
    }
    let mut out = Output { columns, ..Default::default() };
    for row in rows {
        let mut cells = vec![Cell::Int(row.m as i64)];
        cells.extend(row.values.into_iter().map(|(_, v)| Cell::Num(v)));
        cells.push(Cell::Int(row.e_table_reading as i64));
        cells.push(Cell::Int(row.e_text_reading as i64));
        if with_measured {
            cells.push(row.e_measured.map_or(Cell::Missing, |e| Cell::Int(e as i64)));
            cells.push(Cell::Int(row.center_dim as i64));
        }
        out.push(cells);
    }
    if with_measured {
        out.note("e_table_reading", "(m^2 - 1) mod N");
        out.note("e_text_reading", "(1 - m^2) mod N");
        out.note("e_measured", "e with S^2(Lambda) = zeta^e Lambda, i.e. the KMN indicator at n = -1");
    }
    Ok(out)
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let quiet = cli.quiet;
    let progress = move |msg: &str| {
        if !quiet {
            eprintln!("[hopf-fs] {msg}");
        }
    };
    match execute(&cli, &progress) {
        Ok((out, ok)) => {
            if !out.columns.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(out.render(cli.format).as_bytes());
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("5".parse::<Range>().unwrap().0, vec![5]);
        assert_eq!("-2..1".parse::<Range>().unwrap().0, vec![-2, -1, 0, 1]);
        assert_eq!("-3..=-2,7".parse::<Range>().unwrap().0, vec![-3, -2, 7]);
        assert_eq!("1,3,9".parse::<Range>().unwrap().0, vec![1, 3, 9]);
        assert!("3..1".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
    }

    #[test]
    fn parses_algebra_specs() {
        assert_eq!(
            "book:27,2".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::Book { n: 27, m: 2, s: 1 }
        );
        assert_eq!(
            "group:Q8,4".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::Group { name: "Q8".into(), order: 4 }
        );
        assert_eq!(
            "group:Z/4".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::Group { name: "Z/4".into(), order: 1 }
        );
        assert!("book:3".parse::<AlgebraSpec>().is_err());
        assert!("ring:3".parse::<AlgebraSpec>().is_err());
    }
}
