use std::collections::BTreeSet;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use padded_schubert::phi::{verify_delta, verify_nabla, Report};
use padded_schubert::pipedream::enumerate_bruteforce;
use padded_schubert::poly::v_lambda_basis;
use padded_schubert::sweep::{self, Execution};
use padded_schubert::{enumerate, Error, Partition, Permutation, Polynomial};

use crate::{canonical, CliError, CliResult, Output};

const DEFAULT_N: usize = 5;
const MAX_N: usize = 6;

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Rank for exhaustive sweeps (size bound on lambda for sl2).
    #[arg(long)]
    n: Option<usize>,
    /// Restrict to one dominant permutation.
    #[arg(long)]
    pi: Option<Permutation>,
    /// Restrict to one permutation below --pi.
    #[arg(long)]
    w: Option<Permutation>,
    /// Restrict sl2 checks to one partition, as `2,2,1`.
    #[arg(long)]
    lambda: Option<Partition>,
    /// Allow --n above 6.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Delta,
    Nabla,
    Sl2,
    Fibers,
    EnumOracle,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Delta => "delta",
            Kind::Nabla => "nabla",
            Kind::Sl2 => "sl2",
            Kind::Fibers => "fibers",
            Kind::EnumOracle => "enum-oracle",
        }
    }
}

/// Outcome of one case: number of checks and counterexamples found.
type CaseResult = (usize, Vec<Value>);

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl VerifyArgs {
    fn rank(&self) -> CliResult<usize> {
        let n = self.n.unwrap_or(DEFAULT_N);
        if n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        if n > MAX_N {
            if !self.force {
                return Err(usage(format!("--n {n} exceeds {MAX_N}; pass --force to run anyway")));
            }
            eprintln!("warning: --n {n} above {MAX_N} may take a long time");
        }
        Ok(n)
    }

    fn reject(&self, flags: &[(&str, bool)]) -> CliResult<()> {
        match flags.iter().find(|(_, given)| *given) {
            Some((flag, _)) => Err(usage(format!("{flag} does not apply to verify {}", self.kind.name()))),
            None => Ok(()),
        }
    }

    /// `(w, pi)` pairs in scope, validated.
    fn cases(&self) -> CliResult<Vec<(Permutation, Permutation)>> {
        self.reject(&[("--lambda", self.lambda.is_some())])?;
        match (&self.w, &self.pi) {
            (Some(_), None) => Err(usage("--w requires --pi")),
            (w, Some(pi)) => {
                self.reject(&[("--n", self.n.is_some())])?;
                if !pi.is_dominant() {
                    return Err(Error::NotDominant(pi.clone()).into());
                }
                match w {
                    Some(w) if !w.leq_weak(pi) => Err(Error::NotBelowInWeakOrder {
                        w: w.clone(),
                        pi: pi.clone(),
                    }
                    .into()),
                    Some(w) => Ok(vec![(w.clone(), pi.clone())]),
                    None => Ok(pi.weak_interval_below().into_iter().map(|w| (w, pi.clone())).collect()),
                }
            }
            (None, None) => Ok(sweep::cases(self.rank()?)),
        }
    }
}

fn case_failure(w: &Permutation, pi: &Permutation, detail: Value) -> Value {
    let mut v = json!({ "w": w.to_string(), "pi": pi.to_string() });
    if let (Value::Object(base), Value::Object(extra)) = (&mut v, detail) {
        base.extend(extra);
    }
    v
}

fn identity_case(kind: Kind, w: &Permutation, pi: &Permutation) -> (CaseResult, Option<Report>) {
    let report = match kind {
        Kind::Delta => verify_delta(w, pi),
        _ => verify_nabla(w, pi),
    };
    match report {
        Ok(r) if r.ok => ((1, Vec::new()), Some(r)),
        Ok(r) => {
            let cx = case_failure(w, pi, json!({ "mismatches": r.mismatches }));
            ((1, vec![cx]), Some(r))
        }
        Err(e) => ((1, vec![case_failure(w, pi, json!({ "error": e.to_string() }))]), None),
    }
}

fn sl2_case(m: &padded_schubert::Monomial) -> CaseResult {
    let f = Polynomial::from(m.clone());
    let relations = [
        ("[Delta,Nabla] = H", f.delta_nabla_commutator() == f.h()),
        ("[H,Delta] = 2 Delta", &f.delta().h() - &f.h().delta() == f.delta().scale(2)),
        ("[H,Nabla] = -2 Nabla", &f.nabla().h() - &f.h().nabla() == f.nabla().scale(-2)),
    ];
    let failures = relations
        .iter()
        .filter(|(_, holds)| !holds)
        .map(|(rel, _)| json!({ "monomial": m.to_string(), "relation": rel }))
        .collect();
    (relations.len(), failures)
}

fn enum_case(w: &Permutation) -> CaseResult {
    let fast: BTreeSet<_> = enumerate(w).into_iter().collect();
    match enumerate_bruteforce(w) {
        Ok(slow) => {
            let slow: BTreeSet<_> = slow.into_iter().collect();
            if fast == slow {
                return (1, Vec::new());
            }
            let missing: Vec<_> = slow.difference(&fast).collect();
            let extra: Vec<_> = fast.difference(&slow).collect();
            (1, vec![json!({ "w": w.to_string(), "missing": missing, "extra": extra })])
        }
        Err(e) => (1, vec![json!({ "w": w.to_string(), "error": e.to_string() })]),
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<Output> {
    let exec = Execution::default();
    let mut report = None;
    let results: Vec<CaseResult> = match args.kind {
        Kind::Delta | Kind::Nabla => {
            let cases = args.cases()?;
            let mut out = sweep::map(exec, &cases, |(w, pi)| identity_case(args.kind, w, pi));
            if let ([(_, r)], Some(_)) = (out.as_slice(), &args.w) {
                report = r.clone();
            }
            out.drain(..).map(|(c, _)| c).collect()
        }
        Kind::Fibers => {
            let covers: Vec<_> = args
                .cases()?
                .into_iter()
                .map(|(w, pi)| Ok((w.covers_below(&pi)?, w, pi)))
                .collect::<CliResult<Vec<_>>>()?
                .into_iter()
                .flat_map(|(ts, w, pi)| ts.into_iter().map(move |t| (w.clone(), pi.clone(), t)))
                .collect();
            sweep::map(exec, &covers, |(w, pi, t)| {
                let s = sweep::fiber_cover(w, pi, *t);
                let failures = if s.ok() {
                    Vec::new()
                } else {
                    vec![case_failure(w, pi, json!({ "cover": [t.a, t.b], "failures": s.failures }))]
                };
                (s.checked, failures)
            })
        }
        Kind::Sl2 => {
            args.reject(&[("--w", args.w.is_some()), ("--pi", args.pi.is_some())])?;
            let partitions = match &args.lambda {
                Some(lambda) => {
                    args.reject(&[("--n", args.n.is_some())])?;
                    vec![lambda.clone()]
                }
                None => Partition::all_up_to(args.rank()?),
            };
            let monomials: Vec<_> = partitions.iter().flat_map(v_lambda_basis).collect();
            sweep::map(exec, &monomials, sl2_case)
        }
        Kind::EnumOracle => {
            args.reject(&[("--pi", args.pi.is_some()), ("--lambda", args.lambda.is_some())])?;
            let perms = match &args.w {
                Some(w) => {
                    args.reject(&[("--n", args.n.is_some())])?;
                    vec![w.clone()]
                }
                None => Permutation::all(args.rank()?),
            };
            sweep::map(exec, &perms, enum_case)
        }
    };
    let cases = results.len();
    let checks: usize = results.iter().map(|(c, _)| c).sum();
    let counterexamples: Vec<Value> = results.into_iter().flat_map(|(_, f)| f).collect();
    let ok = counterexamples.is_empty();
    let mut value = json!({
        "kind": args.kind.name(),
        "ok": ok,
        "cases": cases,
        "checks": checks,
        "counterexamples": counterexamples,
    });
    if let Some(r) = report {
        value["report"] = serde_json::to_value(&r).expect("serializable");
    }
    Ok(Output {
        text: canonical(&value),
        ok,
    })
}
