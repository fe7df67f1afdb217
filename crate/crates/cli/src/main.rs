use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polarity::io::{self, dot, json as pjson, ContextFile, Format, ParseError};
use polarity::laws;
use polarity::{
    c_object, compatibilize, dual_morphism, dual_object, equalizer, factor, g_minus_object,
    internal_hom, is_compatible_left, is_compatible_right, is_epi, is_mono, product, separate,
    standardize, tensor_object, try_invert, Caps, Error, Morphism, Polarity, Side,
};

#[derive(Parser)]
#[command(name = "polarity", version, about = "Polarities, compatible relations and their lattices")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

#[derive(Subcommand)]
enum Command {
    /// List the closed sets of one side.
    Lattice {
        ctx: PathBuf,
        #[arg(long, value_enum, default_value = "lower")]
        side: SideArg,
        /// Print the Hasse diagram of the closed sets as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check that a morphism file holds a compatible relation.
    Check { morphism: PathBuf },
    /// Compose two morphisms, first then second.
    Compose { first: PathBuf, second: PathBuf },
    /// Replace a relation by the least compatible relation containing it.
    Compatibilize { morphism: PathBuf },
    /// Is the morphism monic?
    Mono { morphism: PathBuf },
    /// Is the morphism epic?
    Epi { morphism: PathBuf },
    /// Is the morphism an isomorphism? Prints the inverse if so.
    Iso { morphism: PathBuf },
    /// Factor a morphism as an epi followed by a mono.
    Factor { morphism: PathBuf },
    /// Dual of a context or a morphism.
    Dual { input: PathBuf },
    /// Isomorphic context with distinct rows and columns.
    Separate { ctx: PathBuf },
    /// Isomorphic standard context over the powerset of the lower carrier.
    Standardize { ctx: PathBuf },
    /// Product of zero or more contexts.
    Product { ctxs: Vec<PathBuf> },
    /// Equalizer of two parallel morphisms, as its inclusion.
    Equalize { first: PathBuf, second: PathBuf },
    /// Tensor product of two contexts.
    Tensor { a: PathBuf, b: PathBuf },
    /// Internal hom of two contexts.
    Hom { a: PathBuf, b: PathBuf },
    /// The lattice of closed lower sets, as lattice JSON.
    ToLattice { ctx: PathBuf },
    /// The context (L, L, ≤) of a lattice JSON file.
    FromLattice { lattice: PathBuf },
    /// Check the law registry on random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}

enum Failure {
    /// A checked property does not hold.
    Negative,
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Invalid(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_context(path: &Path) -> Result<ContextFile, Failure> {
    io::parse_context(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_raw(path: &Path) -> Result<pjson::MorphismFile, Failure> {
    pjson::parse_morphism(&read(path)?, path.parent()).map_err(|e| match e {
        ParseError::Invalid(inner) => inner.into(),
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

fn load_morphism(path: &Path) -> Result<Morphism, Failure> {
    load_raw(path)?
        .validate()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Out {
    json: bool,
}

impl Out {
    fn context(&self, p: &Polarity) {
        let file = ContextFile::new(p.clone());
        let format = if self.json { Format::Json } else { Format::Burmeister };
        print!("{}", io::serialize_context(&file, format));
    }

    fn morphism(&self, m: &Morphism) {
        print!("{}", pjson::serialize_morphism(m.dom(), m.cod(), m.rel()));
    }

    fn morphism_value(m: &Morphism) -> Value {
        serde_json::from_str(&pjson::serialize_morphism(m.dom(), m.cod(), m.rel())).expect("own output parses")
    }

    fn context_value(p: &Polarity) -> Value {
        serde_json::from_str(&pjson::serialize_context(&ContextFile::new(p.clone()))).expect("own output parses")
    }

    /// A yes/no answer; `no` exits with status 1.
    fn verdict(&self, property: &str, holds: bool, extra: Option<Value>) -> Outcome {
        if self.json {
            let mut v = json!({ "property": property, "holds": holds });
            if let Some(Value::Object(map)) = extra {
                v.as_object_mut().unwrap().extend(map);
            }
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        } else {
            println!("{}{property}", if holds { "" } else { "not " });
        }
        if holds {
            Ok(())
        } else {
            Err(Failure::Negative)
        }
    }
}

fn set_names(p: &Polarity, side: Side, set: &polarity::BitSet) -> Vec<String> {
    set.iter().map(|i| p.label(side, i)).collect()
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    match cli.command {
        Command::Lattice { ctx, side, dot: as_dot } => {
            let p = load_context(&ctx)?.polarity;
            let (side, view) = match side {
                SideArg::Lower => (Side::Lower, p.clone()),
                SideArg::Upper => (Side::Upper, p.dual()),
            };
            if as_dot {
                let lattice = g_minus_object(&view)?;
                print!("{}", dot::hasse(&lattice, &format!("{side} closed sets")));
                return Ok(());
            }
            let family = p.closed_sets(side)?;
            let sets: Vec<Vec<String>> = family.iter().map(|s| set_names(&p, side, s)).collect();
            if out.json {
                let v = json!({ "side": side.to_string(), "count": sets.len(), "closed_sets": sets });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("{} closed sets", sets.len());
                for s in sets {
                    println!("{{{}}}", s.join(", "));
                }
            }
        }
        Command::Check { morphism } => {
            let m = load_raw(&morphism)?;
            let left = is_compatible_left(&m.dom, &m.relation)?;
            let right = is_compatible_right(&m.cod, &m.relation)?;
            if out.json {
                let v = json!({ "compatible": left && right, "left": left, "right": right });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else if left && right {
                println!("compatible");
            } else {
                let sides: Vec<&str> = [(left, "left"), (right, "right")]
                    .into_iter()
                    .filter(|(ok, _)| !ok)
                    .map(|(_, s)| s)
                    .collect();
                println!("incompatible ({})", sides.join(", "));
            }
            if !(left && right) {
                return Err(Failure::Negative);
            }
        }
        Command::Compose { first, second } => {
            let (r, s) = (load_morphism(&first)?, load_morphism(&second)?);
            out.morphism(&r.compose(&s)?);
        }
        Command::Compatibilize { morphism } => {
            let m = load_raw(&morphism)?;
            out.morphism(&compatibilize(&m.dom, &m.cod, &m.relation)?);
        }
        Command::Mono { morphism } => {
            out.verdict("mono", is_mono(&load_morphism(&morphism)?), None)?;
        }
        Command::Epi { morphism } => {
            out.verdict("epi", is_epi(&load_morphism(&morphism)?), None)?;
        }
        Command::Iso { morphism } => {
            let m = load_morphism(&morphism)?;
            match try_invert(&m) {
                Ok(w) => {
                    if out.json {
                        out.verdict("iso", true, Some(json!({ "inverse": Out::morphism_value(w.inverse()) })))?;
                    } else {
                        println!("iso");
                        out.morphism(w.inverse());
                    }
                }
                Err(Error::NotIso(reason)) => {
                    if !out.json {
                        eprintln!("{reason}");
                    }
                    out.verdict("iso", false, Some(json!({ "reason": reason })))?;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Factor { morphism } => {
            let f = factor(&load_morphism(&morphism)?);
            if out.json {
                let v = json!({
                    "mid": Out::context_value(&f.mid),
                    "epi": Out::morphism_value(&f.epi),
                    "mono": Out::morphism_value(&f.mono),
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("middle object:");
                out.context(&f.mid);
                println!("epi: {}", is_epi(&f.epi));
                println!("mono: {}", is_mono(&f.mono));
            }
        }
        Command::Dual { input } => {
            let text = read(&input)?;
            let is_morphism = serde_json::from_str::<Value>(&text)
                .ok()
                .is_some_and(|v| v.get("relation").is_some());
            if is_morphism {
                out.morphism(&dual_morphism(&load_morphism(&input)?));
            } else {
                out.context(&dual_object(&load_context(&input)?.polarity));
            }
        }
        Command::Separate { ctx } => out.context(&separate(&load_context(&ctx)?.polarity)?.0),
        Command::Standardize { ctx } => out.context(&standardize(&load_context(&ctx)?.polarity)?.0),
        Command::Product { ctxs } => {
            let factors = ctxs
                .iter()
                .map(|p| load_context(p).map(|f| f.polarity))
                .collect::<Result<Vec<_>, _>>()?;
            out.context(&product(&factors)?.object);
        }
        Command::Equalize { first, second } => {
            let (r, s) = (load_morphism(&first)?, load_morphism(&second)?);
            out.morphism(&equalizer(&r, &s)?.1);
        }
        Command::Tensor { a, b } => {
            let (a, b) = (load_context(&a)?.polarity, load_context(&b)?.polarity);
            out.context(&tensor_object(&a, &b)?);
        }
        Command::Hom { a, b } => {
            let (a, b) = (load_context(&a)?.polarity, load_context(&b)?.polarity);
            out.context(&internal_hom(&a, &b)?);
        }
        Command::ToLattice { ctx } => {
            print!("{}", pjson::serialize_lattice(&g_minus_object(&load_context(&ctx)?.polarity)?));
        }
        Command::FromLattice { lattice } => {
            let l = pjson::parse_lattice(&read(&lattice)?)?;
            out.context(&c_object(&l)?);
        }
        Command::Verify {
            seed,
            cases,
            max_size,
        } => return verify(&out, seed, cases, max_size),
    }
    Ok(())
}

fn verify(out: &Out, seed: u64, cases: usize, max_size: usize) -> Outcome {
    let report = laws::verify(seed, cases, max_size);
    if out.json {
        let laws: Vec<Value> = report
            .laws
            .iter()
            .map(|l| json!({ "law": l.name, "held": l.held, "skipped": l.skipped }))
            .collect();
        let ce = report.counterexample.as_ref().map(|c| {
            json!({
                "law": c.law, "case": c.case, "case_seed": c.case_seed,
                "detail": c.detail, "reproducer": c.reproducer,
            })
        });
        let v = json!({ "seed": seed, "cases": cases, "max_size": max_size, "laws": laws, "counterexample": ce });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for l in &report.laws {
            println!("{:<28} held {:>5}  skipped {:>5}", l.name, l.held, l.skipped);
        }
        match &report.counterexample {
            None => println!("all laws hold (seed {seed}, {cases} cases, max size {max_size})"),
            Some(c) => {
                println!("counterexample: {} case {} (case seed {}): {}", c.law, c.case, c.case_seed, c.detail);
                print!("{}", c.reproducer);
            }
        }
    }
    match report.counterexample {
        None => Ok(()),
        Some(_) => Err(Failure::Negative),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(spec) = std::env::var(polarity::caps::ENV_VAR) {
        if let Err(e) = Caps::parse(&spec) {
            eprintln!("error: {}: {e}", polarity::caps::ENV_VAR);
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg} (raise it with {})", polarity::caps::ENV_VAR);
            ExitCode::from(3)
        }
    }
}
