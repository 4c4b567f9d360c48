//! `blockinv`: compute block invariants, run conjecture sweeps, check the
//! bounds ledger and query the group engine.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use blockinv_core::block::BlockParams;
use blockinv_core::bounds::expr::Verdict;
use blockinv_core::bounds::ledger::{check_all, check_lemma, find_lemma, lemmas, summarize, LedgerGrid};
use blockinv_core::groups::{
    class_count, derived_class_count, group_order, parse_group_spec, DEFAULT_ORDER_CAP,
};
use blockinv_core::verifier::{
    check_conjecture, emit_report, exit_code, parse_grid, sweep, Format, Mode, SweepGrid,
};
use blockinv_core::Ell;

#[derive(Parser)]
#[command(name = "blockinv", version, about = "Exact checks of k(B) <= k0(B)k(D') and k(B) <= l(B)k(D)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "1mod4")]
    OneMod4,
    #[value(name = "3mod4")]
    ThreeMod4,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Gl,
    Sl,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LedgerFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupOp {
    Order,
    Classes,
    #[value(name = "derived-classes")]
    DerivedClasses,
}

#[derive(Subcommand)]
enum Command {
    /// Check both inequalities for one block.
    Compute {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        atilde: Option<u32>,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, default_value = "gl")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Largest group order handled by brute force.
        #[arg(long, env = "BLOCKINV_CAP")]
        cap: Option<u64>,
    },
    /// Check both inequalities over a grid.
    Sweep {
        /// Grid file, or inline grid text such as "ell=3; a=1..3; w=1..30".
        /// Defaults to the built-in grid.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, env = "BLOCKINV_CAP")]
        cap: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Evaluate registered inequalities over the ledger grid.
    Bounds {
        /// A lemma id, or "all".
        #[arg(long, default_value = "all")]
        lemma: String,
        /// Ledger grid, e.g. "w_max=60; a_max=6; atilde_max=6; i_max=6; d=1,2".
        #[arg(long)]
        grid: Option<String>,
        /// List lemma ids with their statements and domains.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: LedgerFormat,
        #[arg(long, env = "BLOCKINV_CAP")]
        cap: Option<u64>,
    },
    /// Query the group engine.
    Group {
        /// A spec such as "wr(c(3),3)" or "sd(16)^2, c(4)".
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        op: GroupOp,
        #[arg(long, env = "BLOCKINV_CAP")]
        cap: Option<u64>,
    },
}

fn read_text(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    } else {
        Ok(arg.to_string())
    }
}

fn write_out(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn block_params(ell: u32, case: Option<CaseArg>, a: Option<u32>, atilde: Option<u32>, d: u32, w: u32) -> Result<BlockParams> {
    let ell = Ell::from_u32(ell).ok_or_else(|| anyhow!("--ell must be 2 or 3"))?;
    let need_a = || a.ok_or_else(|| anyhow!("--a is required"));
    Ok(match ell {
        Ell::Three => BlockParams::gl3(need_a()?, d, w)?,
        Ell::Two => match (case, atilde) {
            (Some(CaseArg::ThreeMod4), Some(t)) | (None, Some(t)) => BlockParams::gl2_three_mod4(t, w)?,
            (Some(CaseArg::ThreeMod4), None) => bail!("--atilde is required for case 3mod4"),
            (Some(CaseArg::OneMod4), _) | (None, None) => BlockParams::gl2_one_plus_four(need_a()?, w)?,
        },
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Compute { ell, case, a, atilde, d, w, mode, format, cap } => {
            let params = block_params(ell, case, a, atilde, d, w)?;
            let mode = match mode {
                ModeArg::Gl => Mode::Gl,
                ModeArg::Sl => Mode::Sl,
            };
            let report = check_conjecture(&params, mode, cap.unwrap_or(DEFAULT_ORDER_CAP))?;
            let reports = [report];
            write_out(&emit_report(&reports, format.into()))?;
            Ok(exit_code(&reports) as u8)
        }
        Command::Sweep { grid, workers, cap, format } => {
            if let Some(n) = workers {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
            }
            let mut g = match grid {
                Some(arg) => parse_grid(&read_text(&arg)?)?,
                None => SweepGrid::default(),
            };
            if let Some(c) = cap {
                g.brute_force_cap = c;
            }
            let reports = sweep(&g)?;
            write_out(&emit_report(&reports, format.into()))?;
            Ok(exit_code(&reports) as u8)
        }
        Command::Bounds { lemma, grid, list, format, cap } => {
            if list {
                let mut text = String::new();
                for l in lemmas() {
                    text.push_str(&format!("{}\n    {}\n    domain: {}\n", l.id, l.statement, l.domain));
                }
                write_out(text.as_bytes())?;
                return Ok(0);
            }
            let mut g = match grid {
                Some(arg) => LedgerGrid::parse(&read_text(&arg)?)?,
                None => LedgerGrid::default(),
            };
            if let Some(c) = cap {
                g.brute_force_cap = c;
            }
            let reports = if lemma == "all" {
                check_all(&g)
            } else {
                find_lemma(&lemma)?;
                check_lemma(&lemma, &g)?
            };
            let bytes = match format {
                LedgerFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&reports)?;
                    s.push('\n');
                    s.into_bytes()
                }
                LedgerFormat::Text => {
                    let mut s = String::new();
                    for r in &reports {
                        s.push_str(&format!(
                            "{} [{}] {} {} {} : {:?} (expected {:?}; {})\n",
                            r.lemma_id, r.instance, r.lhs, r.relation, r.rhs, r.verdict, r.expected, r.margin_note
                        ));
                    }
                    let sum = summarize(&reports);
                    s.push_str(&format!(
                        "total {} holds {} fails {} undecided {} unexpected {}\n",
                        sum.total, sum.holds, sum.fails, sum.undecided, sum.unexpected
                    ));
                    s.into_bytes()
                }
            };
            write_out(&bytes)?;
            let unexpected = reports.iter().filter(|r| !r.as_expected());
            let (mut undecided, mut wrong) = (false, false);
            for r in unexpected {
                match r.verdict {
                    Verdict::Undecided => undecided = true,
                    _ => wrong = true,
                }
            }
            Ok(if wrong { 1 } else if undecided { 2 } else { 0 })
        }
        Command::Group { spec, op, cap } => {
            let spec = parse_group_spec(&spec)?;
            let value = match op {
                GroupOp::Order => group_order(&spec),
                GroupOp::Classes => class_count(&spec),
                GroupOp::DerivedClasses => derived_class_count(&spec, cap.unwrap_or(DEFAULT_ORDER_CAP))?,
            };
            write_out(format!("{value}\n").as_bytes())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
