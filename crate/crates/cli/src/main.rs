use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diam2_core::forms::FormKind;
use diam2_core::instance::Instance;
use diam2_core::space::SPACE_CAP;
use diam2_core::tables::{self, TableId};
use diam2_core::verify;
use diam2_core::Error;

#[derive(Parser)]
#[command(name = "diam2", version, about = "Orbits of affine point stabilisers and diameter-two Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Largest vector space (number of vectors) an instance may use.
    #[arg(long, default_value_t = SPACE_CAP, global = true)]
    cap: u64,
    /// Seed for `--sample`.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Label census over the nonzero vectors, with orbit sizes.
    Classify(InstanceArgs),
    /// Compare each orbit's diameter with the classification's claim.
    VerifyTheorem {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Verify a random subset of this many default-grid instances.
        #[arg(long)]
        sample: Option<usize>,
        /// Take orbits from the closure oracle instead of the closed-form labels.
        #[arg(long)]
        oracle_orbits: bool,
    },
    /// Regenerate the bound tables and diff them against the published values.
    Tables {
        #[arg(long, value_parser = parse_table)]
        table: Option<TableId>,
    },
    /// Compare closed-form labels with orbits computed by closure.
    OracleCheck(InstanceArgs),
    /// Distance profiles of the orbit Cayley graphs.
    Diameter {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Only the orbit of this vector, given as comma-separated field element codes.
        #[arg(long)]
        vector: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SecondForm {
    Odd,
    OddNonsquare,
    Plus,
    Minus,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// c2lin, c2sp1, c2sp2, c4, c4sp, c5, c5sp, c6t1, c7, c8u, c8o, c8o+, c8o-.
    /// Without it, grid commands run their default grid.
    #[arg(long = "class")]
    class: Option<String>,
    /// Characteristic. For c5 and c5sp, `p^e` is the subfield order.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    /// Odd-dimensional quadratic form with nonsquare discriminant.
    #[arg(long)]
    nonsquare: bool,
    /// Quadratic factor of c4sp.
    #[arg(long, value_enum, default_value_t = SecondForm::Odd)]
    form: SecondForm,
}

fn parse_table(s: &str) -> std::result::Result<TableId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn need<T: Copy>(v: Option<T>, name: &str, class: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--class {class} needs --{name}"))
}

impl InstanceArgs {
    fn order(&self, class: &str) -> Result<u64> {
        let p = need(self.p, "p", class)?;
        p.checked_pow(self.e).ok_or_else(|| anyhow!("p^e overflows"))
    }

    /// `None` when no class was given.
    fn instance(&self) -> Result<Option<Instance>> {
        let Some(class) = self.class.as_deref() else { return Ok(None) };
        let inst = match class {
            "c2lin" => Instance::C2Linear { q: self.order(class)?, m: need(self.m, "m", class)?, t: need(self.t, "t", class)? },
            "c2sp1" => Instance::C2SpCase1 { q: self.order(class)?, m: need(self.m, "m", class)?, t: need(self.t, "t", class)? },
            "c2sp2" => Instance::C2SpCase2 { q: self.order(class)?, m: need(self.m, "m", class)? },
            "c4" => Instance::Tensor { q: self.order(class)?, k: need(self.k, "k", class)?, m: need(self.m, "m", class)?, swap: false },
            "c7" => {
                if self.t.is_some_and(|t| t != 2) {
                    bail!("c7 with t >= 3 is bounds-only; see `diam2 tables --table tensor-m0`");
                }
                let m = need(self.m, "m", class)?;
                Instance::Tensor { q: self.order(class)?, k: m, m, swap: true }
            }
            "c4sp" => {
                let kind = match self.form {
                    SecondForm::Odd => FormKind::QuadraticOddSquare,
                    SecondForm::OddNonsquare => FormKind::QuadraticOddNonsquare,
                    SecondForm::Plus => FormKind::QuadraticPlus,
                    SecondForm::Minus => FormKind::QuadraticMinus,
                };
                Instance::TensorSp { q: self.order(class)?, k: need(self.k, "k", class)?, m: need(self.m, "m", class)?, kind }
            }
            "c5" => Instance::Subfield { q0: self.order(class)?, r: need(self.r, "r", class)?, n: need(self.n, "n", class)? },
            "c5sp" => Instance::SubfieldSp { q0: self.order(class)?, r: need(self.r, "r", class)?, n: need(self.n, "n", class)? },
            "c6t1" => Instance::Extraspecial { q: self.order(class)? },
            "c6" | "c6t2" => bail!("extraspecial classes with t >= 2 are bounds-only; see `diam2 tables --table type1|type2|type4`"),
            "c9" => bail!("class c9 is out of scope"),
            "c8u" => Instance::Unitary { q: self.order(class)?, n: need(self.n, "n", class)? },
            "c8o" => {
                let kind = if self.nonsquare { FormKind::QuadraticOddNonsquare } else { FormKind::QuadraticOddSquare };
                Instance::Quadratic { q: self.order(class)?, n: need(self.n, "n", class)?, kind }
            }
            "c8o+" => Instance::Quadratic { q: self.order(class)?, n: need(self.n, "n", class)?, kind: FormKind::QuadraticPlus },
            "c8o-" => Instance::Quadratic { q: self.order(class)?, n: need(self.n, "n", class)?, kind: FormKind::QuadraticMinus },
            other => bail!("unknown class {other:?}"),
        };
        Ok(Some(inst))
    }
}

fn emit<T: Serialize>(rows: &[T], format: Format) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Human => {
            let values: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| match serde_json::to_value(r) {
                    Ok(serde_json::Value::Object(m)) => Ok(m),
                    Ok(_) => Err(anyhow!("record is not an object")),
                    Err(e) => Err(e.into()),
                })
                .collect::<Result<_>>()?;
            let Some(first) = values.first() else { return Ok(()) };
            let keys: Vec<&String> = first.keys().collect();
            let cells: Vec<Vec<String>> = values
                .iter()
                .map(|m| {
                    keys.iter()
                        .map(|k| match &m[k.as_str()] {
                            serde_json::Value::String(s) => s.clone(),
                            serde_json::Value::Null => "-".into(),
                            v => v.to_string(),
                        })
                        .collect()
                })
                .collect();
            let widths: Vec<usize> =
                keys.iter().enumerate().map(|(i, k)| cells.iter().map(|c| c[i].len()).max().unwrap_or(0).max(k.len())).collect();
            let line = |items: Vec<&str>| items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ");
            writeln!(out, "{}", line(keys.iter().map(|k| k.as_str()).collect()).trim_end())?;
            for c in &cells {
                writeln!(out, "{}", line(c.iter().map(|s| s.as_str()).collect()).trim_end())?;
            }
        }
    }
    Ok(())
}

/// Collects grid results; cap overruns are skipped with a notice.
fn collect<T>(results: Vec<(Instance, diam2_core::Result<Vec<T>>)>, failed: &mut bool) -> Vec<T> {
    let mut rows = Vec::new();
    for (inst, res) in results {
        match res {
            Ok(r) => rows.extend(r),
            Err(e @ Error::CapExceeded { .. }) => eprintln!("skipped {inst}: {e}"),
            Err(e) => {
                eprintln!("error in {inst}: {e}");
                *failed = true;
            }
        }
    }
    rows
}

fn vector_index(codes: &str, inst: &Instance) -> Result<u32> {
    let q = inst.field_order();
    let codes: Vec<u64> = codes.split(',').map(|s| s.trim().parse::<u64>().context("vector codes must be integers")).collect::<Result<_>>()?;
    if codes.len() != inst.dim() {
        bail!("vector has {} coordinates, the space has dimension {}", codes.len(), inst.dim());
    }
    if codes.iter().any(|&c| c >= q) {
        bail!("field element codes must be below {q}");
    }
    let idx = codes.iter().fold(0u64, |acc, &c| acc * q + c);
    u32::try_from(idx).context("vector index overflow")
}

fn run(cli: Cli) -> Result<bool> {
    let cap = cli.cap.min(SPACE_CAP);
    let mut failed = false;
    match cli.command {
        Command::Classify(args) => {
            let inst = args.instance()?.ok_or_else(|| anyhow!("classify needs --class"))?;
            emit(&verify::run_classify(&inst, cap)?, cli.format)?;
        }
        Command::VerifyTheorem { inst, sample, oracle_orbits } => {
            let grid = match (inst.instance()?, sample) {
                (Some(i), _) => vec![i],
                (None, Some(k)) => verify::sample(&verify::default_grid(), k, cli.seed),
                (None, None) => verify::default_grid(),
            };
            let run = if oracle_orbits { verify::run_verify_oracle_orbits } else { verify::run_verify };
            let rows = collect(verify::run_grid(&grid, |i| run(i, cap)), &mut failed);
            let bad = rows.iter().filter(|r| !r.ok).count();
            emit(&rows, cli.format)?;
            eprintln!("{} orbits over {} instances, {bad} failing", rows.len(), grid.len());
            failed |= bad > 0;
        }
        Command::Tables { table } => {
            let ids: Vec<TableId> = table.map_or(TableId::ALL.to_vec(), |t| vec![t]);
            let mut rows = Vec::new();
            for id in ids {
                rows.extend(tables::regenerate(id)?);
            }
            let bad = rows.iter().filter(|c| !c.ok).count();
            emit(&rows, cli.format)?;
            eprintln!("{} cells, {bad} differing from the published values", rows.len());
            failed |= bad > 0;
        }
        Command::OracleCheck(args) => {
            let grid = match args.instance()? {
                Some(i) => vec![i],
                None => verify::partition_grid(),
            };
            let rows = collect(verify::run_grid(&grid, |i| verify::run_oracle_check(i, cap).map(|r| vec![r])), &mut failed);
            let bad = rows.iter().filter(|r| !r.equal || r.sizes_ok == Some(false)).count();
            emit(&rows, cli.format)?;
            eprintln!("{} instances, {bad} with disagreements", rows.len());
            failed |= bad > 0;
        }
        Command::Diameter { inst, vector } => {
            let i = inst.instance()?.ok_or_else(|| anyhow!("diameter needs --class"))?;
            let v = vector.as_deref().map(|s| vector_index(s, &i)).transpose()?;
            emit(&verify::run_diameter(&i, cap, v)?, cli.format)?;
        }
    }
    Ok(!failed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
