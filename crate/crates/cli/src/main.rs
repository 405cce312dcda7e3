use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use padded_schubert::phi::{self, PhiContext};
use padded_schubert::pipedream::render_ascii;
use padded_schubert::{
    enumerate, padded_schubert, schubert, Error, MarkedPipeDream, Permutation, PipeDream, Polynomial, Pos,
    Transposition,
};

mod verify;

#[derive(Parser)]
#[command(name = "padded-schubert", version, about = "Pipe dreams, padded Schubert polynomials and the Phi map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the reduced pipe dreams of W, sorted by cross set.
    Enumerate {
        /// Permutation in comma-separated one-line notation.
        w: Permutation,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
    },
    /// The Schubert polynomial of W.
    Schubert {
        w: Permutation,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// The padded Schubert polynomial of W for a dominant PI above it.
    Padded {
        w: Permutation,
        pi: Permutation,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Run Phi on a marked pipe dream of W and print its trace.
    Phi {
        w: Permutation,
        pi: Permutation,
        /// Cross set as JSON: `[[1,1],[2,3]]` or `{"crosses":[[1,1],[2,3]]}`.
        #[arg(long)]
        crosses: String,
        /// The marked bump, as `i,j`.
        #[arg(long)]
        mark: Pos,
        /// Also draw every step of the run.
        #[arg(long)]
        trace: bool,
    },
    /// The preimages under Phi of the pipe dreams of t*W for a cover t = (a,b).
    Fiber {
        w: Permutation,
        pi: Permutation,
        /// The cover transposition, as `a,b`.
        #[arg(long)]
        cover: Pos,
        /// Restrict to one pipe dream of t*W, given as JSON.
        #[arg(long)]
        crosses: Option<String>,
    },
    /// Check an identity over a range of cases.
    Verify(verify::VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Ascii,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What to print, and whether every check it reports passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

/// JSON with object keys in sorted order.
fn canonical<T: Serialize>(value: &T) -> String {
    let value: Value = serde_json::to_value(value).expect("serializable");
    serde_json::to_string(&value).expect("serializable")
}

fn parse_crosses(text: &str) -> CliResult<PipeDream> {
    let bad = |e: serde_json::Error| CliError::Usage(format!("invalid --crosses JSON: {e}"));
    let value: Value = serde_json::from_str(text).map_err(bad)?;
    let value = match value {
        Value::Array(_) => json!({ "crosses": value }),
        other => other,
    };
    serde_json::from_value(value).map_err(bad)
}

fn check_permutation(pd: &PipeDream, expected: &Permutation) -> CliResult<()> {
    if pd.permutation() != expected {
        return Err(CliError::Usage(format!(
            "pipe dream {pd} has permutation {}, expected {expected}",
            pd.permutation()
        )));
    }
    Ok(())
}

fn polynomial(p: &Polynomial, format: PolyFormat) -> String {
    match format {
        PolyFormat::Text => p.to_string(),
        PolyFormat::Json => canonical(p),
    }
}

fn cmd_enumerate(w: &Permutation, format: ListFormat) -> CliResult<Output> {
    let pds = enumerate(w);
    let text = match format {
        ListFormat::Count => pds.len().to_string(),
        ListFormat::Json => canonical(&pds),
        ListFormat::Ascii => pds
            .iter()
            .map(|pd| Ok(format!("{pd}\n{}", render_ascii(pd, None, None)?)))
            .collect::<CliResult<Vec<_>>>()?
            .join("\n\n"),
    };
    Ok(Output::ok(text))
}

fn cmd_phi(w: &Permutation, pi: &Permutation, crosses: &str, mark: Pos, trace: bool) -> CliResult<Output> {
    let pd = parse_crosses(crosses)?;
    check_permutation(&pd, w)?;
    let ctx = PhiContext::new(w, pi)?;
    let input = MarkedPipeDream::new(pd, mark)?;
    let run = ctx.phi(&input)?;
    let mut text = canonical(&run);
    if trace {
        for (n, step) in run.steps.iter().enumerate() {
            let labels = step.labels();
            text += &format!(
                "\n\nstep {n}: mark {}, pipes w={} s={}\n{}",
                step.mark,
                labels.w,
                labels.s,
                render_ascii(&step.pd, Some(pi), Some(step.mark))?
            );
        }
        text += &format!(
            "\n\nresult: {}\n{}",
            run.result.permutation(),
            render_ascii(&run.result, Some(pi), None)?
        );
    }
    Ok(Output::ok(text))
}

fn fiber_json(q: &PipeDream, w: &Permutation, pi: &Permutation, t: Transposition) -> CliResult<(Value, bool)> {
    let sets = phi::ab_sets(w, t, pi)?;
    let fiber = phi::fiber(q, w, t, pi)?;
    let keyed = |members: &[(usize, MarkedPipeDream)]| {
        members
            .iter()
            .map(|(k, m)| json!({ "k": k, "marked": m }))
            .collect::<Vec<_>>()
    };
    let expected = (1, sets.a.len(), sets.b.len());
    let ok = fiber.counts() == expected;
    let (n0, na, nb) = fiber.counts();
    let value = json!({
        "result": q,
        "cover": [t.a, t.b],
        "sets": sets,
        "fiber": { "0": fiber.zero, "A": keyed(&fiber.a), "B": keyed(&fiber.b) },
        "sizes": [n0, na, nb],
        "ok": ok,
    });
    Ok((value, ok))
}

fn cmd_fiber(w: &Permutation, pi: &Permutation, cover: Pos, crosses: Option<&str>) -> CliResult<Output> {
    let t = Transposition::new(cover.i, cover.j)?;
    // Validates dominance and the weak-order relation.
    PhiContext::new(w, pi)?;
    if !w.covers_below(pi)?.contains(&t) {
        return Err(Error::NotACover {
            w: w.clone(),
            t,
            pi: pi.clone(),
        }
        .into());
    }
    let target = t.left_mul(w);
    let qs = match crosses {
        Some(text) => {
            let q = parse_crosses(text)?;
            check_permutation(&q, &target)?;
            vec![q]
        }
        None => enumerate(&target),
    };
    let mut values = Vec::new();
    let mut ok = true;
    for q in &qs {
        let (value, fine) = fiber_json(q, w, pi, t)?;
        ok &= fine;
        values.push(value);
    }
    let text = match (crosses, values.as_slice()) {
        (Some(_), [one]) => canonical(one),
        _ => canonical(&values),
    };
    Ok(Output { text, ok })
}

fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Enumerate { w, format } => cmd_enumerate(&w, format),
        Command::Schubert { w, format } => Ok(Output::ok(polynomial(&schubert(&w), format))),
        Command::Padded { w, pi, format } => Ok(Output::ok(polynomial(&padded_schubert(&w, &pi)?, format))),
        Command::Phi {
            w,
            pi,
            crosses,
            mark,
            trace,
        } => cmd_phi(&w, &pi, &crosses, mark, trace),
        Command::Fiber { w, pi, cover, crosses } => cmd_fiber(&w, &pi, cover, crosses.as_deref()),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Core(Error::Invariant(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
