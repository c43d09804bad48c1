//! Command-line frontend.
//!
//! Exit codes: 0 on success, 1 when a mathematical verification fails,
//! 2 on invalid input (bad flags, parse errors, precondition violations).
//! Structured results go to stdout as JSON; progress and verification
//! diagnostics go to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qmat::document::{
    document_to_element, element_to_document, read_document, torus_to_document, write_document,
    AnyElement, ElementDocument,
};
use qmat::expr::parse_poly;
use qmat::minors::quantum_minor;
use qmat::pbw::q_normal_check;
use qmat::restoration::{restore_generators, verify_b_monomials, verify_embedding};
use qmat::spectrum::{
    build_u, height_one_catalog, is_primitive, spectrum_report, stratum_dim, PrimitivityMethod,
};
use qmat::torus::center_basis;
use qmat::verify::{run_suite, Suite};
use qmat::{Error, Result, Shape};

#[derive(Parser)]
#[command(
    name = "qmat",
    version,
    about = "Exact computations in quantum matrix algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the zero ideal is primitive
    Primitivity {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// formula, rank, or both (cross-checked)
        #[arg(long, default_value = "both")]
        method: String,
        /// Emit the full report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Print the dimension of the zero stratum
    StratumDim {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// List the height-one staircase generators
    BGens {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Also print each generator expanded in normal form
        #[arg(long)]
        expand: bool,
        /// Emit the catalog as JSON
        #[arg(long)]
        json: bool,
    },
    /// Expand a quantum minor as an element document
    Minor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated row indices, e.g. 1,2
        #[arg(long)]
        rows: String,
        /// Comma-separated column indices, e.g. 1,3
        #[arg(long)]
        cols: String,
    },
    /// Multiply two element documents of the same kind and shape
    Mul {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Report the per-generator q-commutation ratios of an element
    NormalCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rebuild the matrix generators inside the quantum torus
    Restore {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Also verify the defining relations and staircase monomials
        #[arg(long)]
        verify: bool,
    },
    /// Print the central torus monomial exponents with their certificate
    Center {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Build the normal element attached to a polynomial in X1..Xd
    Hprime {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: String,
    },
    /// Run the named verification suite over all shapes with m*n <= max-size
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn parse_index_list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                Error::InvalidInput(format!("bad {what} list {s:?}: {part:?} is not a number"))
            })
        })
        .collect()
}

#[derive(Serialize)]
struct BGenRecord {
    index: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    element: Option<ElementDocument>,
}

#[derive(Serialize)]
struct BGensOutput {
    m: usize,
    n: usize,
    complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra_family: Option<qmat::spectrum::StratumParams>,
    generators: Vec<BGenRecord>,
}

#[derive(Serialize)]
struct CenterOutput {
    m: usize,
    n: usize,
    dim: usize,
    vectors: Vec<Vec<i64>>,
    certified: bool,
}

#[derive(Serialize)]
struct HprimeOutput {
    element: ElementDocument,
    ratios: Vec<String>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Primitivity { m, n, method, json } => {
            let method = match method.as_str() {
                "formula" => PrimitivityMethod::Formula,
                "rank" => PrimitivityMethod::Rank,
                "both" => PrimitivityMethod::Both,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown method {other:?} (expected formula, rank, or both)"
                    )))
                }
            };
            let primitive = is_primitive(m, n, method)?;
            if json {
                let report = spectrum_report(m, n)?;
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("primitive: {primitive}");
            }
        }
        Command::StratumDim { m, n } => {
            Shape::new(m, n)?;
            println!("{}", stratum_dim(m, n));
        }
        Command::BGens { m, n, expand, json } => {
            let catalog = height_one_catalog(m, n)?;
            if json {
                let out = BGensOutput {
                    m,
                    n,
                    complete: catalog.complete,
                    extra_family: catalog.extra_family,
                    generators: catalog
                        .gens
                        .iter()
                        .map(|g| BGenRecord {
                            index: g.index,
                            rows: g.rows.clone(),
                            cols: g.cols.clone(),
                            element: expand.then(|| {
                                qmat::document::pbw_to_document(&g.element)
                            }),
                        })
                        .collect(),
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                for g in &catalog.gens {
                    if expand {
                        println!(
                            "b_{}: rows {:?}, cols {:?} = {}",
                            g.index, g.rows, g.cols, g.element
                        );
                    } else {
                        println!("b_{}: rows {:?}, cols {:?}", g.index, g.rows, g.cols);
                    }
                }
                if catalog.complete {
                    println!("catalog: complete");
                } else {
                    let f = catalog.extra_family.unwrap();
                    println!(
                        "catalog: incomplete; an extra family in d = {} central variables remains (m' = {}, n' = {})",
                        f.d, f.m_prime, f.n_prime
                    );
                }
            }
        }
        Command::Minor { m, n, rows, cols } => {
            let shape = Shape::new(m, n)?;
            let rows = parse_index_list(&rows, "row")?;
            let cols = parse_index_list(&cols, "column")?;
            let minor = quantum_minor(shape, &rows, &cols)?;
            print!(
                "{}",
                write_document(&qmat::document::pbw_to_document(&minor))
            );
        }
        Command::Mul { lhs, rhs } => {
            let a = document_to_element(&read_document(&read_file(&lhs)?)?)?;
            let b = document_to_element(&read_document(&read_file(&rhs)?)?)?;
            let product = match (&a, &b) {
                (AnyElement::Pbw(x), AnyElement::Pbw(y)) => AnyElement::Pbw(x.mul(y)?),
                (AnyElement::Torus(x), AnyElement::Torus(y)) => AnyElement::Torus(x.mul(y)?),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "cannot multiply a {:?} element by a {:?} element",
                        a.kind(),
                        b.kind()
                    )))
                }
            };
            print!("{}", write_document(&element_to_document(&product)));
        }
        Command::NormalCheck { input } => {
            let element = document_to_element(&read_document(&read_file(&input)?)?)?;
            let AnyElement::Pbw(x) = element else {
                return Err(Error::InvalidInput(
                    "normal-check expects a normal-form (kind \"pbw\") element".to_string(),
                ));
            };
            match q_normal_check(&x) {
                Some(ratios) => {
                    let shape = x.shape();
                    for (k, ratio) in ratios.iter().enumerate() {
                        let (i, a) = shape.coords(k);
                        println!("Y[{i},{a}]: {ratio}");
                    }
                }
                None => {
                    return Err(Error::CheckFailed("not q-normal".to_string()));
                }
            }
        }
        Command::Restore { m, n, verify } => {
            let shape = Shape::new(m, n)?;
            let restored = restore_generators(shape)?;
            if verify {
                verify_embedding(&restored)?;
                eprintln!("embedding relations: ok");
                verify_b_monomials(&restored)?;
                eprintln!("staircase monomials: ok");
            }
            let docs: Vec<ElementDocument> =
                restored.entries().iter().map(torus_to_document).collect();
            println!("{}", serde_json::to_string_pretty(&docs).unwrap());
        }
        Command::Center { m, n } => {
            let shape = Shape::new(m, n)?;
            let basis = center_basis(shape)?;
            let out = CenterOutput {
                m,
                n,
                dim: basis.dim(),
                vectors: basis.vectors.clone(),
                certified: true,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Command::Hprime { m, n, poly } => {
            Shape::new(m, n)?;
            let d = num::integer::gcd(m, n);
            let v = parse_poly(&poly, d)?;
            let u = build_u(m, n, &v)?;
            let ratios = q_normal_check(&u)
                .ok_or_else(|| Error::CheckFailed("constructed element is not q-normal".into()))?;
            let out = HprimeOutput {
                element: qmat::document::pbw_to_document(&u),
                ratios: ratios.iter().map(|r| r.to_string()).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Command::Verify { suite, max_size } => {
            if max_size == 0 {
                return Err(Error::InvalidInput("max-size must be at least 1".into()));
            }
            let suite = Suite::from_str(&suite)?;
            let checks = run_suite(suite, max_size);
            let mut failed = 0usize;
            for c in &checks {
                if c.pass {
                    println!("ok   {}", c.name);
                } else {
                    failed += 1;
                    println!("FAIL {}: {}", c.name, c.detail);
                }
            }
            println!("{} checks, {failed} failed", checks.len());
            if failed > 0 {
                return Err(Error::CheckFailed(format!(
                    "{failed} verification check(s) failed"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CheckFailed(_) => ExitCode::from(1),
                Error::InvalidInput(_) | Error::Parse { .. } => ExitCode::from(2),
            }
        }
    }
}
