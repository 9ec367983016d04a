//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so it can be driven from tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::data;
use crate::error::Error;
use crate::graph::{labeling_polynomial, validate_graph, LabeledGraph};
use crate::membership::{build_constraint_system, check_membership, image_dimension};
use crate::milnor::{milnor_fixed_polynomial, search_orbit_hits, SubsetFamily};
use crate::orbit::{orbit, span_dimension};
use crate::rep::{parse_polynomial_detailed, Polynomial};
use crate::report::reproduce_paper;
use crate::small_cover::{
    fixed_polynomial, format_vertex, is_admissible, parse_subgroup, restricted_polynomial,
    tangent_reps, validate_characteristic, CharacteristicFunction, ProductOfSimplices,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "z2k",
    version,
    about = "GF(2) fixed-point data of (Z/2)^k-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a polynomial file is the fixed-point data of an action.
    Check {
        file: PathBuf,
        /// Print the full decomposition certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Dimension of the degree-n image at rank k.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also print the monomial and constraint counts.
        #[arg(long)]
        details: bool,
    },
    /// Orbit size and stabilizer of a polynomial under GL(k, 2).
    Orbit {
        file: PathBuf,
        /// Also print the stabilizer matrices.
        #[arg(long)]
        stabilizer: bool,
    },
    /// GF(2) dimension of the span of the given polynomials.
    Span {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Replace each polynomial by its whole GL(k, 2) orbit.
        #[arg(long)]
        orbits: bool,
    },
    /// Check the structural properties of a labeled graph file.
    GraphValidate { file: PathBuf },
    /// Tangent data of a small cover over a product of simplices.
    Smallcover {
        /// Factor dimensions, e.g. `1x4`.
        #[arg(long)]
        polytope: String,
        #[arg(long)]
        lambda: PathBuf,
        /// Basis file of a subgroup to restrict to.
        #[arg(long)]
        subgroup: Option<PathBuf>,
    },
    /// Fixed-point polynomial of H_{m,n} for a subset family.
    Milnor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Sets as digit strings separated by `;`, e.g. `2;12;23;123`.
        #[arg(long)]
        sets: String,
    },
    /// Search every subset family for hits on the orbits of f1..f4.
    MilnorSearch {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Recompute every reference value and report.
    ReproducePaper {
        /// Print `name=expected:computed:PASS|FAIL` lines.
        #[arg(long)]
        machine: bool,
        /// Write the embedded inputs to this directory first.
        #[arg(long, value_name = "DIR")]
        emit_data: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn status(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { EXIT_OK } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Input problem, reported with exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

fn in_file(path: &Path) -> impl Fn(Error) -> InputError + '_ {
    move |e| InputError(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_polynomial(path: &Path) -> Result<Polynomial, InputError> {
    let text = read(path)?;
    Ok(parse_polynomial_detailed(&text)
        .map_err(in_file(path))?
        .polynomial)
}

fn notation_lines(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    p.iter().map(|m| format!("{}\n", m.to_notation())).collect()
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => Outcome::usage(e.to_string()),
            }
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(InputError(msg)) => Outcome::usage(format!("error: {msg}\n")),
    }
}

fn dispatch(command: Command) -> Result<Outcome, InputError> {
    match command {
        Command::Check { file, certificate } => {
            let p = read_polynomial(&file)?;
            let cert = check_membership(&p).map_err(in_file(&file))?;
            let out = if certificate {
                cert.render()
            } else {
                match &cert.violation {
                    None => "accepted\n".to_string(),
                    Some(v) => format!("rejected\n{v}\n"),
                }
            };
            Ok(Outcome::status(cert.is_accepted(), out))
        }
        Command::Dim { n, k, details } => {
            if !details {
                return Ok(Outcome::ok(format!("{}\n", image_dimension(n, k)?)));
            }
            let system = build_constraint_system(n, k)?;
            Ok(Outcome::ok(format!(
                "n={n} k={k} faithful_monomials={} constraints={} dimension={}\n",
                system.monomials.len(),
                system.constraint_count(),
                system.dimension()
            )))
        }
        Command::Orbit { file, stabilizer } => {
            let p = read_polynomial(&file)?;
            let o = orbit(&p, p.rank()).map_err(in_file(&file))?;
            let mut out = format!(
                "orbit_size={}\nstabilizer_order={}\n",
                o.len(),
                o.stabilizer.len()
            );
            if stabilizer {
                for a in &o.stabilizer {
                    out.push_str(&format!("\n{a}"));
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Span { files, orbits } => {
            let mut ps = Vec::new();
            for f in &files {
                let p = read_polynomial(f)?;
                if orbits {
                    ps.extend(orbit(&p, p.rank()).map_err(in_file(f))?.elements);
                } else {
                    ps.push(p);
                }
            }
            let d = span_dimension(ps.iter())?;
            Ok(Outcome::ok(format!("{d}\n")))
        }
        Command::GraphValidate { file } => {
            let g = LabeledGraph::parse(&read(&file)?).map_err(in_file(&file))?;
            let report = validate_graph(&g);
            let mut out = String::new();
            if report.is_valid() {
                out.push_str("valid\n");
                out.push_str(&notation_lines(&labeling_polynomial(&g)?));
            } else {
                out.push_str("invalid\n");
                for v in &report.violations {
                    out.push_str(&format!("{v}\n"));
                }
            }
            Ok(Outcome::status(report.is_valid(), out))
        }
        Command::Smallcover {
            polytope,
            lambda,
            subgroup,
        } => {
            let expected = ProductOfSimplices::from_name(&polytope)?;
            let cf = CharacteristicFunction::parse(&read(&lambda)?).map_err(in_file(&lambda))?;
            if cf.polytope() != &expected {
                return Err(InputError(format!(
                    "{}: header describes {}, but --polytope is {}",
                    lambda.display(),
                    cf.polytope().name(),
                    expected.name()
                )));
            }
            if !validate_characteristic(&cf) {
                return Ok(Outcome::status(
                    false,
                    "invalid characteristic function\n".into(),
                ));
            }
            let mut out = String::new();
            for (v, m) in tangent_reps(&cf)? {
                out.push_str(&format!("{} {}\n", format_vertex(&v), m.to_notation()));
            }
            let p = fixed_polynomial(&cf)?;
            let cert = check_membership(&p)?;
            out.push_str(&format!(
                "fixed polynomial: {} terms, {}\n",
                p.len(),
                if cert.is_accepted() {
                    "accepted"
                } else {
                    "rejected"
                }
            ));
            let mut pass = cert.is_accepted();
            if let Some(path) = subgroup {
                let (h, basis) = parse_subgroup(&read(&path)?, cf.polytope().dimension())
                    .map_err(in_file(&path))?;
                let admissible = is_admissible(&cf, &h);
                out.push_str(&format!("subgroup admissible: {admissible}\n"));
                match restricted_polynomial(&cf, &h, &basis) {
                    Ok(r) => {
                        let cert = check_membership(&r)?;
                        out.push_str(&format!(
                            "restricted polynomial ({}):\n",
                            if cert.is_accepted() {
                                "accepted"
                            } else {
                                "rejected"
                            }
                        ));
                        out.push_str(&notation_lines(&r));
                        pass &= admissible && cert.is_accepted();
                    }
                    Err(e @ Error::NonIsolated { .. }) => {
                        out.push_str(&format!("{e}\n"));
                        pass = false;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Outcome::status(pass, out))
        }
        Command::Milnor { m, n, r, sets } => {
            let family = SubsetFamily::parse(r, &sets)?;
            match milnor_fixed_polynomial(m, n, &family) {
                Ok(p) => Ok(Outcome::ok(notation_lines(&p))),
                Err(e @ Error::NonIsolated { .. }) => Ok(Outcome::status(false, format!("{e}\n"))),
                Err(e) => Err(e.into()),
            }
        }
        Command::MilnorSearch { m, n, r } => {
            if r != 3 {
                return Err(InputError(
                    "the reference orbits f1..f4 live at rank 3; use --r 3".into(),
                ));
            }
            let orbits = data::seeds()
                .iter()
                .map(|f| orbit(f, 3))
                .collect::<crate::Result<Vec<_>>>()?;
            let report = search_orbit_hits(m, n, r, &orbits)?;
            Ok(Outcome::ok(report.render_named(&["f1", "f2", "f3", "f4"])))
        }
        Command::ReproducePaper { machine, emit_data } => {
            let mut out = String::new();
            if let Some(dir) = emit_data {
                let names = data::emit_data(&dir)
                    .map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
                if !machine {
                    out.push_str(&format!(
                        "wrote {} files to {}\n",
                        names.len(),
                        dir.display()
                    ));
                }
            }
            let report = reproduce_paper()?;
            out.push_str(&if machine {
                report.render_machine()
            } else {
                report.render_human()
            });
            let mut o = Outcome::status(report.all_pass(), out);
            if let Some(f) = report.first_failure() {
                o.stderr = format!("first failing checkpoint: {}\n", f.name);
            }
            Ok(o)
        }
    }
}
