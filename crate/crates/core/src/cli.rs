//! `qc-css` command-line front end.
//!
//! Exit codes: 0 success or positive verdict, 1 definite negative verdict,
//! 2 input or usage error.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::feasibility::{
    reproduce_all_with, search_generic_with, FeasibilityError, IndexBase, RightWeight, SearchConstraints, Verdict,
};
use crate::gf2::{parse_bmat, write_bmat, BinaryMatrix};
use crate::ieee16e::{builtin_text, validate_model_16e, validate_type_16e, Ieee16eError, Ieee16eStructure, Rate};
use crate::model::{parse_model, row_sub, write_model, ModelMatrix};
use crate::par::Execution;
use crate::twisted::twisted_condition;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qc-css", version, about = "QC-LDPC model matrices and CSS twisted-condition analysis")]
pub struct Cli {
    /// Report column and row indices 0-based instead of 1-based.
    #[arg(long, global = true)]
    pub zero_index: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a model matrix (mmat) to its binary parity-check matrix (bmat).
    Expand { model: PathBuf },
    /// Binary base matrix of a model matrix.
    Base { model: PathBuf },
    /// Reduce shifts modulo a divisor of the circulant size.
    Reduce {
        #[arg(long)]
        divisor: u32,
        model: PathBuf,
    },
    /// Kernel basis of a binary matrix, one vector per row.
    Nullspace { matrix: PathBuf },
    /// Columns that vanish on the whole kernel of a binary matrix.
    ForcedZeros { matrix: PathBuf },
    /// Check the type-802.16e base-matrix structure.
    #[command(name = "validate-16e")]
    Validate16e {
        /// Input is a model matrix; also check the shift clauses.
        #[arg(long)]
        model: bool,
        file: PathBuf,
    },
    /// Print a built-in base matrix.
    DumpBase {
        #[arg(long)]
        rate: Rate,
    },
    /// Decide the twisted condition for two model matrices.
    Twisted { model_c: PathBuf, model_d: PathBuf },
    /// Rerun both built-in non-existence analyses.
    Reproduce {
        /// Omit timing so output is byte-stable.
        #[arg(long)]
        stable: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Feasibility search against an arbitrary base matrix.
    Search {
        matrix: PathBuf,
        /// Allowed row weights, comma-separated, or "any".
        #[arg(long)]
        row_weights: Option<String>,
        /// "lo:hi" (1-based) range for an adjacent pair of ones, or "none".
        #[arg(long)]
        adjacency_window: Option<String>,
        /// "start:min:max" suffix weight bound (1-based start), or "none".
        #[arg(long)]
        right_weight: Option<String>,
        /// Number of parity rows J when the matrix is not of type 802.16e.
        #[arg(long)]
        parity_rows: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<i32, InputError>;

pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    let base = if cli.zero_index { IndexBase::Zero } else { IndexBase::One };
    match dispatch(cli.command, base, &mut io) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read_input(path: &PathBuf, io: &mut Io<'_>) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn read_model(path: &PathBuf, io: &mut Io<'_>) -> Result<ModelMatrix, InputError> {
    let text = read_input(path, io)?;
    parse_model(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_bmat(path: &PathBuf, io: &mut Io<'_>) -> Result<BinaryMatrix, InputError> {
    let text = read_input(path, io)?;
    parse_bmat(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command, base: IndexBase, io: &mut Io<'_>) -> CmdResult {
    let off = base.offset();
    match cmd {
        Command::Expand { model } => {
            let m = read_model(&model, io)?;
            io.out.write_all(write_bmat(&m.expand()).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Base { model } => {
            let m = read_model(&model, io)?;
            io.out.write_all(write_bmat(&m.project_base()).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Reduce { divisor, model } => {
            let m = read_model(&model, io)?;
            let r = m.reduce_to_divisor(divisor)?;
            io.out.write_all(write_model(&r).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Nullspace { matrix } => {
            let h = read_bmat(&matrix, io)?;
            let basis = h.nullspace_basis();
            writeln!(io.out, "# kernel dimension {}", basis.len())?;
            if !basis.is_empty() {
                let k = BinaryMatrix::from_rows(&basis)?;
                io.out.write_all(write_bmat(&k).as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::ForcedZeros { matrix } => {
            let h = read_bmat(&matrix, io)?;
            let cols: Vec<String> = h.forced_zero_columns().iter().map(|c| (c + off).to_string()).collect();
            let shown = if cols.is_empty() { "none".to_string() } else { cols.join(",") };
            writeln!(io.out, "forced_zeros: {shown}")?;
            Ok(EXIT_OK)
        }
        Command::Validate16e { model, file } => {
            let result = if model {
                validate_model_16e(&read_model(&file, io)?)
            } else {
                validate_type_16e(&read_bmat(&file, io)?)
            };
            match result {
                Ok(s) => {
                    writeln!(io.out, "type-802.16e: yes")?;
                    print_structure(&s, off, io)?;
                    Ok(EXIT_OK)
                }
                Err(Ieee16eError::Violations(vs)) => {
                    writeln!(io.out, "type-802.16e: no")?;
                    for v in vs {
                        writeln!(io.out, "violation: {v}")?;
                    }
                    Ok(EXIT_NEGATIVE)
                }
                Err(e @ Ieee16eError::Shape { .. }) => {
                    writeln!(io.out, "type-802.16e: no")?;
                    writeln!(io.out, "violation: {e}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::DumpBase { rate } => {
            io.out.write_all(builtin_text(rate).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Twisted { model_c, model_d } => {
            let c = read_model(&model_c, io)?;
            let d = read_model(&model_d, io)?;
            let v = twisted_condition(&c, &d)?;
            match v.witness {
                None => {
                    writeln!(io.out, "twisted: holds")?;
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    let diff = row_sub(c.row(w.c_row), d.row(w.d_row), c.z())?;
                    let diff: Vec<String> = diff.iter().map(ToString::to_string).collect();
                    writeln!(io.out, "twisted: fails")?;
                    writeln!(
                        io.out,
                        "witness: c_row={} d_row={} symbol={}",
                        w.c_row + off,
                        w.d_row + off,
                        w.symbol
                    )?;
                    writeln!(io.out, "difference: {}", diff.join(" "))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Reproduce { stable, format } => {
            let start = Instant::now();
            let result = reproduce_all_with(Execution::default());
            let elapsed = (!stable).then(|| start.elapsed().as_millis());
            match result {
                Ok((a, b)) => {
                    match format {
                        Format::Text => {
                            io.out.write_all(a.render_text(base, elapsed).as_bytes())?;
                            io.out.write_all(b"\n")?;
                            io.out.write_all(b.render_text(base, elapsed).as_bytes())?;
                        }
                        Format::Structured => {
                            let views = [a.view(base, elapsed), b.view(base, elapsed)];
                            writeln!(io.out, "{}", serde_json::to_string_pretty(&views)?)?;
                        }
                    }
                    Ok(EXIT_OK)
                }
                Err(FeasibilityError::Inconsistent(msg)) => {
                    writeln!(io.err, "reproduction failed: {msg}")?;
                    Ok(EXIT_NEGATIVE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Search {
            matrix,
            row_weights,
            adjacency_window,
            right_weight,
            parity_rows,
            format,
        } => {
            let h = read_bmat(&matrix, io)?;
            let profile = match parity_rows {
                Some(j) => manual_profile(&h, j)?,
                None => validate_type_16e(&h).map_err(|e| {
                    InputError(format!("{e} (pass --parity-rows to search a matrix of another shape)"))
                })?,
            };
            let mut c = if parity_rows.is_some() {
                SearchConstraints::unconstrained()
            } else {
                SearchConstraints::for_partner_rows(&h, &profile)
            };
            if let Some(s) = row_weights {
                c.row_weights = parse_weights(&s)?;
            }
            if let Some(s) = adjacency_window {
                c.adjacency_window = parse_window(&s)?;
            }
            if let Some(s) = right_weight {
                c.right_weight = parse_right_weight(&s)?;
            }
            let report = search_generic_with("input", &h, &profile, &c, Execution::default())?;
            match format {
                Format::Text => io.out.write_all(report.render_text(base, None).as_bytes())?,
                Format::Structured => writeln!(io.out, "{}", report.render_structured(base, None))?,
            }
            Ok(match report.verdict {
                Verdict::Feasible => EXIT_OK,
                Verdict::Infeasible => EXIT_NEGATIVE,
            })
        }
    }
}

fn print_structure(s: &Ieee16eStructure, off: usize, io: &mut Io<'_>) -> std::io::Result<()> {
    writeln!(io.out, "parity_rows: {}", s.parity_rows)?;
    writeln!(io.out, "total_cols: {}", s.total_cols)?;
    writeln!(io.out, "systematic_cols: {}", s.systematic_cols)?;
    writeln!(io.out, "hb_col: {}", s.hb_col + off)?;
    writeln!(io.out, "hb_middle_row: {}", s.hb_middle_row + off)
}

fn manual_profile(h: &BinaryMatrix, j: usize) -> Result<Ieee16eStructure, InputError> {
    if j < 3 || j > h.cols() {
        return Err(InputError(format!(
            "--parity-rows must be between 3 and {} for a {}-column matrix",
            h.cols(),
            h.cols()
        )));
    }
    Ok(Ieee16eStructure {
        parity_rows: j,
        total_cols: h.cols(),
        systematic_cols: h.cols() - j,
        hb_col: h.cols() - j,
        hb_middle_row: 1,
    })
}

fn parse_usize(s: &str, what: &str) -> Result<usize, InputError> {
    s.trim()
        .parse()
        .map_err(|_| InputError(format!("invalid {what} {s:?}")))
}

fn parse_weights(s: &str) -> Result<std::collections::BTreeSet<usize>, InputError> {
    if s.eq_ignore_ascii_case("any") {
        return Ok(Default::default());
    }
    s.split(',').map(|w| parse_usize(w, "row weight")).collect()
}

fn parse_window(s: &str) -> Result<Option<(usize, usize)>, InputError> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    match s.split(':').collect::<Vec<_>>()[..] {
        [lo, hi] => Ok(Some((parse_usize(lo, "window start")?, parse_usize(hi, "window end")?))),
        _ => Err(InputError(format!("adjacency window must be lo:hi, got {s:?}"))),
    }
}

fn parse_right_weight(s: &str) -> Result<Option<RightWeight>, InputError> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    match s.split(':').collect::<Vec<_>>()[..] {
        [start, min, max] => Ok(Some(RightWeight {
            col_start: parse_usize(start, "suffix start")?,
            min: parse_usize(min, "minimum weight")?,
            max: parse_usize(max, "maximum weight")?,
        })),
        _ => Err(InputError(format!("right weight must be start:min:max, got {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("qc-css").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_from_stdin() {
        let (code, out, _) = call(&["expand", "-"], "3 1 1\n1\n");
        assert_eq!(code, 0);
        assert_eq!(out, "3 3\n010\n001\n100\n");
    }

    #[test]
    fn unit_circulant_echoes_base() {
        let (code, out, _) = call(&["expand", "-"], "1 2 2\n0 -1\n0 0\n");
        assert_eq!(code, 0);
        assert_eq!(out, "2 2\n10\n11\n");
    }

    #[test]
    fn malformed_model_exits_2() {
        let (code, _, err) = call(&["expand", "-"], "2 1 1\n5\n");
        assert_eq!(code, 2);
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn unknown_subcommand_exits_2() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["expand", "--bogus", "-"], "").0, 2);
    }

    #[test]
    fn reduce_non_divisor_exits_2() {
        assert_eq!(call(&["reduce", "--divisor", "4", "-"], "6 1 1\n5\n").0, 2);
        let (code, out, _) = call(&["reduce", "--divisor", "3", "-"], "6 1 3\n5 -1 4\n");
        assert_eq!(code, 0);
        assert_eq!(out, "3 1 3\n2 -1 1\n");
    }

    #[test]
    fn forced_zeros_index_base() {
        let (_, out, _) = call(&["forced-zeros", "-"], "2 3\n100\n011\n");
        assert_eq!(out, "forced_zeros: 1\n");
        let (_, out, _) = call(&["--zero-index", "forced-zeros", "-"], "2 3\n100\n011\n");
        assert_eq!(out, "forced_zeros: 0\n");
    }

    #[test]
    fn nullspace_output() {
        let (code, out, _) = call(&["nullspace", "-"], "1 3\n110\n");
        assert_eq!(code, 0);
        assert_eq!(out, "# kernel dimension 2\n2 3\n110\n001\n");
        let (_, out, _) = call(&["nullspace", "-"], "2 2\n10\n01\n");
        assert_eq!(out, "# kernel dimension 0\n");
    }

    #[test]
    fn dump_base_round_trips() {
        let (code, out, _) = call(&["dump-base", "--rate", "2/3B"], "");
        assert_eq!(code, 0);
        assert_eq!(out, builtin_text(Rate::TwoThirdsB));
        assert_eq!(write_bmat(&parse_bmat(&out).unwrap()), out);
    }

    #[test]
    fn validate_exit_codes() {
        let (code, out, _) = call(&["validate-16e", "-"], builtin_text(Rate::Half));
        assert_eq!(code, 0);
        assert!(out.contains("hb_col: 13\n"), "{out}");
        let (code, out, _) = call(&["validate-16e", "-"], "4 4\n1000\n0100\n0010\n0001\n");
        assert_eq!(code, 1);
        assert!(out.contains("violation: h_b column 1 has weight 1"), "{out}");
        assert_eq!(call(&["validate-16e", "-"], "4 4\n10\n").0, 2);
    }

    #[test]
    fn search_with_manual_profile() {
        let (code, out, _) = call(&["search", "--parity-rows", "3", "-"], "2 4\n0000\n0000\n");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("verdict: feasible"));
        let (code, out, _) = call(&["search", "-"], builtin_text(Rate::Half));
        assert_eq!(code, 1);
        assert!(out.contains("candidate_count: 6"));
        assert_eq!(
            call(&["search", "--adjacency-window", "20:30", "-"], builtin_text(Rate::Half)).0,
            2
        );
    }
}
